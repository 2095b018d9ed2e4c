// kpi.hpp - the four sustainability KPIs: level classification, scores,
// composite. Pure functions over metric structs.

#pragma once

#include "daolens/common/bigint.hpp"
#include "daolens/harmonize/types.hpp"

#include <optional>
#include <string>

namespace daolens::kpi {

// Classification thresholds, shared with the chart layer so plotted
// threshold lines always equal the classifier's constants.
namespace thresholds {
    inline constexpr double kParticipationLow = 0.10;
    inline constexpr double kParticipationHigh = 0.40;
    inline constexpr double kTreasuryLowUsd = 1e8;
    inline constexpr double kTreasuryHighUsd = 1e9;
    inline constexpr double kCirculationSplit = 0.50;
    inline constexpr double kApprovalLow = 0.30;
    inline constexpr double kApprovalHigh = 0.70;
    inline constexpr double kDurationMinDays = 3.0;
    inline constexpr double kDurationMaxDays = 14.0;
    inline constexpr double kHolderHigh = 0.10;  // below: High decentralisation
    inline constexpr double kHolderMedium = 0.33;
    inline constexpr double kHolderLow = 0.66;   // at or above: Low decentralisation
}

enum class Level { Low, MediumLow, Medium, MediumHigh, High };

const char* to_string(Level level);
Level level_from_string(const std::string& s);

struct Assessment {
    Level level = Level::Low;
    double score = 0.0;
};

// A KPI either assesses to a level+score or is marked not assessable with a
// reason (no members, no proposals, no treasury valuation).
struct KpiOutcome {
    std::optional<Assessment> assessment;
    std::string not_assessable_reason;

    bool assessable() const { return assessment.has_value(); }
};

struct ParticipationMetrics {
    uint64_t active_members = 0;
    uint64_t total_members = 0;

    double rate() const; // active/total capped at 1; total must be > 0
};

struct TreasuryMetrics {
    std::optional<double> treasury_usd;
    BigInt total_supply;
    BigInt circulating_supply;

    double circulating_pct() const;
};

struct VotingMetrics {
    uint64_t approved = 0;
    uint64_t total_proposals = 0;
    double avg_duration_days = 0.0;

    double approval_rate() const; // total must be > 0
};

struct DecentralisationMetrics {
    double largest_holder_share = 0.0;
    std::optional<Level> participation_level; // KPI 1 result feeds KPI 4
    bool fully_automated = false;
};

// KPI 1, Network Participation: Low < 10%, Medium 10-40%, High > 40%.
KpiOutcome assess_participation(const ParticipationMetrics& m);

// KPI 2, Accumulated Funds: treasury bands at $100M / $1B with the
// circulating-token split inside the middle band.
KpiOutcome assess_funds(const TreasuryMetrics& m);

// KPI 3, Voting Mechanism Efficiency: approval-rate bands at 30% / 70%
// gated by a 3-14 day voting window (out-of-range duration is Low).
KpiOutcome assess_voting(const VotingMetrics& m);

// KPI 4, Decentralisation: largest-holder share bands at 10% / 33% / 66%,
// the middle band refined by participation and automation.
KpiOutcome assess_decentralisation(const DecentralisationMetrics& m);

struct KpiAssessment {
    KpiOutcome participation;
    KpiOutcome funds;
    KpiOutcome voting;
    KpiOutcome decentralisation;
    std::optional<double> composite;

    bool complete() const;
};

// Sum of the four scores; absent unless all four KPIs are assessable.
std::optional<double> composite(const KpiAssessment& a);

// Convenience: derives all metrics from a harmonised record and assesses.
KpiAssessment assess_dao(const harmonize::DaoRecord& record);

} // namespace daolens::kpi

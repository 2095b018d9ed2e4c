// types.hpp - the harmonised per-DAO record and its parts

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/common/bigint.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace daolens::harmonize {

enum class Outcome { Approved, Rejected, Canceled, Pending };

const char* to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

struct ProposalSummary {
    BigInt proposal_id;
    std::string proposer;
    int64_t created_at = 0;    // UTC seconds
    int64_t voting_start = 0;  // UTC seconds
    int64_t voting_end = 0;    // UTC seconds
    Outcome outcome = Outcome::Pending;
    bool executed = false;
    BigInt votes_for;
    BigInt votes_against;
    BigInt votes_abstain;

    double duration_days() const { return double(voting_end - voting_start) / 86'400.0; }
};

enum class ActivityTier { HighlyActive, ModeratelyActive, MinimallyActive, TestOrDormant };

const char* to_string(ActivityTier t);
ActivityTier activity_tier_from_string(const std::string& s);

// Counters from the validation checks; anomalies are reported, never thrown.
struct ValidationReport {
    uint64_t events_in = 0;
    uint64_t duplicates = 0;
    uint64_t timestamp_regressions = 0;
    uint64_t orphan_votes = 0;             // votes referencing unknown proposals
    uint64_t lifecycle_without_creation = 0; // execute/cancel/queue with no creation event
    uint64_t window_violations = 0;        // voting_start > voting_end
    uint64_t supply_mismatch = 0;          // minted - burned != reported totalSupply

    uint64_t anomalies() const
    {
        return duplicates + timestamp_regressions + orphan_votes + lifecycle_without_creation
            + window_violations + supply_mismatch;
    }
};

struct DaoRecord {
    std::string dao_id;
    int64_t chain_id = 0;
    uint64_t snapshot_block = 0;
    int64_t snapshot_time = 0; // UTC seconds of the snapshot block

    std::vector<ProposalSummary> proposals;
    std::set<std::string> voters;
    uint64_t total_members = 0;  // nonzero-balance holders at snapshot
    uint64_t active_members = 0; // |voters ∪ proposers|

    std::optional<double> treasury_usd;
    BigInt total_supply;
    BigInt circulating_supply;
    double largest_holder_share = 0.0; // of circulating supply, non-treasury holders
    bool fully_automated = false;
    bool automation_detected = false; // advisory signal, config wins
    double proposer_concentration = 0.0;

    ActivityTier tier = ActivityTier::TestOrDormant;
    std::vector<int64_t> governance_event_times; // UTC seconds, ascending
    ValidationReport validation;

    uint64_t approved_count() const;
    std::optional<double> participation_rate() const; // capped at 1, absent when no members
    std::optional<double> approval_rate() const;      // absent when no proposals
    std::optional<double> avg_duration_days() const;  // absent when no proposals
    double circulating_pct() const;                   // 0 when total_supply is 0
};

} // namespace daolens::harmonize

#include "daolens/kpi/kpi.hpp"

#include "daolens/common/errors.hpp"

#include <algorithm>

namespace daolens::kpi {

using namespace thresholds;

const char* to_string(Level level)
{
    switch (level) {
    case Level::Low: return "Low";
    case Level::MediumLow: return "Medium-Low";
    case Level::Medium: return "Medium";
    case Level::MediumHigh: return "Medium-High";
    case Level::High: return "High";
    }
    return "Low";
}

Level level_from_string(const std::string& s)
{
    if (s == "Low")
        return Level::Low;
    if (s == "Medium-Low")
        return Level::MediumLow;
    if (s == "Medium")
        return Level::Medium;
    if (s == "Medium-High")
        return Level::MediumHigh;
    if (s == "High")
        return Level::High;
    throw parse_error("unknown KPI level: " + s);
}

double ParticipationMetrics::rate() const
{
    if (total_members == 0)
        throw argument_error("participation rate undefined without members");
    return std::min(1.0, double(active_members) / double(total_members));
}

double TreasuryMetrics::circulating_pct() const
{
    if (total_supply == 0)
        return 0.0;
    return double(circulating_supply) / double(total_supply);
}

double VotingMetrics::approval_rate() const
{
    if (total_proposals == 0)
        throw argument_error("approval rate undefined without proposals");
    return double(approved) / double(total_proposals);
}

KpiOutcome assess_participation(const ParticipationMetrics& m)
{
    if (m.total_members == 0)
        return { std::nullopt, "no token holders at snapshot" };
    double rate = m.rate();
    // Boundaries are half-open low / closed medium: [0.10, 0.40] is Medium.
    if (rate < kParticipationLow)
        return { Assessment { Level::Low, 1.0 }, "" };
    if (rate <= kParticipationHigh)
        return { Assessment { Level::Medium, 2.0 }, "" };
    return { Assessment { Level::High, 3.0 }, "" };
}

KpiOutcome assess_funds(const TreasuryMetrics& m)
{
    if (!m.treasury_usd)
        return { std::nullopt, "no treasury valuation configured" };
    double usd = *m.treasury_usd;
    if (usd < kTreasuryLowUsd)
        return { Assessment { Level::Low, 0.75 }, "" };
    if (usd > kTreasuryHighUsd)
        return { Assessment { Level::High, 3.0 }, "" };
    if (m.circulating_pct() > kCirculationSplit)
        return { Assessment { Level::MediumHigh, 2.25 }, "" };
    return { Assessment { Level::MediumLow, 1.5 }, "" };
}

KpiOutcome assess_voting(const VotingMetrics& m)
{
    if (m.total_proposals == 0)
        return { std::nullopt, "no proposals" };
    double approval = m.approval_rate();
    double days = m.avg_duration_days;
    // A window outside 3-14 days is Low regardless of the approval rate.
    bool window_ok = days >= kDurationMinDays && days <= kDurationMaxDays;
    if (!window_ok || approval < kApprovalLow)
        return { Assessment { Level::Low, 1.0 }, "" };
    if (approval > kApprovalHigh)
        return { Assessment { Level::High, 3.0 }, "" };
    return { Assessment { Level::Medium, 2.0 }, "" };
}

KpiOutcome assess_decentralisation(const DecentralisationMetrics& m)
{
    double share = m.largest_holder_share;
    if (share >= kHolderLow)
        return { Assessment { Level::Low, 0.6 }, "" };
    if (share >= kHolderMedium)
        return { Assessment { Level::MediumLow, 1.2 }, "" };
    if (share >= kHolderHigh) {
        bool participation_ok = m.participation_level
            && (*m.participation_level == Level::Medium || *m.participation_level == Level::High);
        if (!participation_ok)
            return { Assessment { Level::MediumLow, 1.2 }, "" }; // conservative fallback
        if (m.fully_automated)
            return { Assessment { Level::MediumHigh, 2.4 }, "" };
        return { Assessment { Level::Medium, 1.8 }, "" };
    }
    return { Assessment { Level::High, 3.0 }, "" };
}

bool KpiAssessment::complete() const
{
    return participation.assessable() && funds.assessable() && voting.assessable()
        && decentralisation.assessable();
}

std::optional<double> composite(const KpiAssessment& a)
{
    if (!a.complete())
        return std::nullopt;
    return a.participation.assessment->score + a.funds.assessment->score + a.voting.assessment->score
        + a.decentralisation.assessment->score;
}

KpiAssessment assess_dao(const harmonize::DaoRecord& record)
{
    KpiAssessment out;

    ParticipationMetrics participation { record.active_members, record.total_members };
    out.participation = assess_participation(participation);

    TreasuryMetrics treasury { record.treasury_usd, record.total_supply, record.circulating_supply };
    out.funds = assess_funds(treasury);

    VotingMetrics voting;
    voting.total_proposals = record.proposals.size();
    voting.approved = record.approved_count();
    voting.avg_duration_days = record.avg_duration_days().value_or(0.0);
    out.voting = assess_voting(voting);

    DecentralisationMetrics decentralisation;
    decentralisation.largest_holder_share = record.largest_holder_share;
    if (out.participation.assessable())
        decentralisation.participation_level = out.participation.assessment->level;
    decentralisation.fully_automated = record.fully_automated;
    out.decentralisation = assess_decentralisation(decentralisation);

    out.composite = composite(out);
    return out;
}

} // namespace daolens::kpi

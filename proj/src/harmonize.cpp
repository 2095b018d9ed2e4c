#include "daolens/harmonize/harmonize.hpp"

#include "daolens/common/bytes.hpp"
#include "daolens/common/errors.hpp"
#include "daolens/harmonize/balances.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace daolens::harmonize {

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::Approved: return "approved";
    case Outcome::Rejected: return "rejected";
    case Outcome::Canceled: return "canceled";
    case Outcome::Pending: return "pending";
    }
    return "pending";
}

Outcome outcome_from_string(const std::string& s)
{
    if (s == "approved")
        return Outcome::Approved;
    if (s == "rejected")
        return Outcome::Rejected;
    if (s == "canceled")
        return Outcome::Canceled;
    if (s == "pending")
        return Outcome::Pending;
    throw parse_error("unknown proposal outcome: " + s);
}

const char* to_string(ActivityTier t)
{
    switch (t) {
    case ActivityTier::HighlyActive: return "HighlyActive";
    case ActivityTier::ModeratelyActive: return "ModeratelyActive";
    case ActivityTier::MinimallyActive: return "MinimallyActive";
    case ActivityTier::TestOrDormant: return "TestOrDormant";
    }
    return "TestOrDormant";
}

ActivityTier activity_tier_from_string(const std::string& s)
{
    if (s == "HighlyActive")
        return ActivityTier::HighlyActive;
    if (s == "ModeratelyActive")
        return ActivityTier::ModeratelyActive;
    if (s == "MinimallyActive")
        return ActivityTier::MinimallyActive;
    if (s == "TestOrDormant")
        return ActivityTier::TestOrDormant;
    throw parse_error("unknown activity tier: " + s);
}

uint64_t DaoRecord::approved_count() const
{
    return static_cast<uint64_t>(std::count_if(proposals.begin(), proposals.end(),
                                               [](const ProposalSummary& p) { return p.outcome == Outcome::Approved; }));
}

std::optional<double> DaoRecord::participation_rate() const
{
    if (total_members == 0)
        return std::nullopt;
    return std::min(1.0, double(active_members) / double(total_members));
}

std::optional<double> DaoRecord::approval_rate() const
{
    if (proposals.empty())
        return std::nullopt;
    return double(approved_count()) / double(proposals.size());
}

std::optional<double> DaoRecord::avg_duration_days() const
{
    if (proposals.empty())
        return std::nullopt;
    int64_t total_seconds = 0;
    for (const auto& p : proposals)
        total_seconds += p.voting_end - p.voting_start;
    return double(total_seconds) / double(proposals.size()) / 86'400.0;
}

double DaoRecord::circulating_pct() const
{
    if (total_supply == 0)
        return 0.0;
    return double(circulating_supply) / double(total_supply);
}

// ---------------------------------------------------------------------------

std::pair<std::vector<abi::DecodedEvent>, ValidationReport> dedup_and_validate(std::vector<abi::DecodedEvent> events)
{
    ValidationReport report;
    report.events_in = events.size();

    std::stable_sort(events.begin(), events.end(), [](const abi::DecodedEvent& a, const abi::DecodedEvent& b) {
        return std::tie(a.block_number, a.log_index) < std::tie(b.block_number, b.log_index);
    });

    std::vector<abi::DecodedEvent> clean;
    clean.reserve(events.size());
    std::unordered_set<std::string> seen;
    for (auto& e : events) {
        std::string key = std::to_string(e.block_number) + "/" + e.tx_hash + "/" + std::to_string(e.log_index);
        if (!seen.insert(std::move(key)).second) {
            ++report.duplicates;
            continue;
        }
        clean.push_back(std::move(e));
    }

    for (size_t i = 1; i < clean.size(); ++i)
        if (clean[i].timestamp_utc < clean[i - 1].timestamp_utc)
            ++report.timestamp_regressions;

    return { std::move(clean), report };
}

// ---------------------------------------------------------------------------

namespace {

// Resolves a window value (block number or timestamp per the mapping's unit)
// to UTC seconds. Unseen blocks are extrapolated from an anchor block.
int64_t resolve_window_time(const BigInt& raw, abi::WindowUnit unit, const std::map<uint64_t, int64_t>& timestamps,
                            uint64_t anchor_block, int64_t anchor_time, int64_t seconds_per_block)
{
    if (unit == abi::WindowUnit::Timestamp)
        return static_cast<int64_t>(raw);

    uint64_t block = static_cast<uint64_t>(raw);
    if (auto it = timestamps.find(block); it != timestamps.end())
        return it->second;
    return anchor_time + (int64_t(block) - int64_t(anchor_block)) * seconds_per_block;
}

} // namespace

std::pair<std::vector<ProposalSummary>, ValidationReport>
summarize_proposals(const std::vector<abi::GovernanceEvent>& gov_events,
                    const std::map<uint64_t, int64_t>& timestamps, const SummarizeOptions& options)
{
    ValidationReport report;

    struct Draft {
        ProposalSummary summary;
        bool canceled = false;
        size_t order = 0;
    };
    std::unordered_map<std::string, Draft> drafts; // key: decimal proposal id
    size_t next_order = 0;

    for (const auto& e : gov_events) {
        std::string key = e.proposal_id.str();
        if (e.kind == abi::GovernanceKind::ProposalCreated) {
            Draft draft;
            draft.order = next_order++;
            draft.summary.proposal_id = e.proposal_id;
            draft.summary.proposer = e.actor;
            draft.summary.created_at = e.timestamp_utc;
            draft.summary.voting_start = resolve_window_time(e.window_start, options.window_unit, timestamps,
                                                             e.block_number, e.timestamp_utc, options.seconds_per_block);
            draft.summary.voting_end = resolve_window_time(e.window_end, options.window_unit, timestamps,
                                                           e.block_number, e.timestamp_utc, options.seconds_per_block);
            if (draft.summary.voting_start > draft.summary.voting_end) {
                ++report.window_violations;
                continue;
            }
            drafts[key] = std::move(draft);
            continue;
        }

        auto it = drafts.find(key);
        switch (e.kind) {
        case abi::GovernanceKind::VoteCast:
            if (it == drafts.end()) {
                ++report.orphan_votes;
                break;
            }
            switch (e.support) {
            case abi::Support::For: it->second.summary.votes_for += e.weight; break;
            case abi::Support::Against: it->second.summary.votes_against += e.weight; break;
            case abi::Support::Abstain: it->second.summary.votes_abstain += e.weight; break;
            }
            break;
        case abi::GovernanceKind::ProposalExecuted:
            if (it == drafts.end()) {
                ++report.lifecycle_without_creation;
                break;
            }
            it->second.summary.executed = true;
            break;
        case abi::GovernanceKind::ProposalCanceled:
            if (it == drafts.end()) {
                ++report.lifecycle_without_creation;
                break;
            }
            it->second.canceled = true;
            break;
        case abi::GovernanceKind::ProposalQueued:
            if (it == drafts.end())
                ++report.lifecycle_without_creation;
            break; // queueing does not change the outcome
        case abi::GovernanceKind::ProposalCreated:
            break; // handled above
        }
    }

    std::vector<Draft> ordered;
    ordered.reserve(drafts.size());
    for (auto& [_, draft] : drafts)
        ordered.push_back(std::move(draft));
    std::sort(ordered.begin(), ordered.end(), [](const Draft& a, const Draft& b) { return a.order < b.order; });

    std::vector<ProposalSummary> out;
    out.reserve(ordered.size());
    for (auto& draft : ordered) {
        ProposalSummary& p = draft.summary;
        if (p.executed) {
            p.outcome = Outcome::Approved; // executed implies approved on-chain
        } else if (draft.canceled) {
            p.outcome = Outcome::Canceled;
        } else if (p.voting_end > options.snapshot_time) {
            p.outcome = Outcome::Pending;
        } else {
            bool majority = p.votes_for > p.votes_against;
            bool quorum_met = true;
            if (options.quorum_weight)
                quorum_met = p.votes_for + p.votes_against + p.votes_abstain >= *options.quorum_weight;
            p.outcome = (majority && quorum_met) ? Outcome::Approved : Outcome::Rejected;
        }
        out.push_back(std::move(p));
    }
    return { std::move(out), report };
}

// ---------------------------------------------------------------------------

ActivityTier classify_activity(const std::vector<int64_t>& governance_event_times, int64_t now)
{
    constexpr int64_t kDay = 86'400;
    uint64_t last_30d = 0;
    uint64_t last_90d = 0;
    for (int64_t t : governance_event_times) {
        if (t > now)
            continue; // events after the evaluation date do not count
        if (now - t <= 30 * kDay)
            ++last_30d;
        if (now - t <= 90 * kDay)
            ++last_90d;
    }
    size_t total = static_cast<size_t>(std::count_if(governance_event_times.begin(), governance_event_times.end(),
                                                     [&](int64_t t) { return t <= now; }));
    if (last_30d >= 5)
        return ActivityTier::HighlyActive;
    if (last_90d >= 1)
        return ActivityTier::ModeratelyActive;
    if (total < 2)
        return ActivityTier::TestOrDormant;
    return ActivityTier::MinimallyActive;
}

// ---------------------------------------------------------------------------

namespace {

bool is_burn_address(const std::string& addr)
{
    return addr == kZeroAddress || addr == "0x000000000000000000000000000000000000dead";
}

} // namespace

DaoRecord build_dao_record(const BuildInputs& inputs)
{
    DaoRecord record;
    record.dao_id = inputs.dao_id;
    record.chain_id = inputs.chain_id;
    record.snapshot_block = inputs.snapshot_block;
    record.snapshot_time = inputs.snapshot_time;
    record.validation = inputs.carried;

    SummarizeOptions summarize = inputs.summarize;
    summarize.snapshot_time = inputs.snapshot_time;
    auto [proposals, proposal_report] = summarize_proposals(inputs.gov_events, inputs.block_timestamps, summarize);
    record.proposals = std::move(proposals);
    record.validation.orphan_votes += proposal_report.orphan_votes;
    record.validation.lifecycle_without_creation += proposal_report.lifecycle_without_creation;
    record.validation.window_violations += proposal_report.window_violations;

    // Voters and proposers; every on-chain vote counts even when the
    // proposal itself was filtered as anomalous.
    std::set<std::string> active;
    for (const auto& e : inputs.gov_events) {
        if (e.kind == abi::GovernanceKind::VoteCast) {
            record.voters.insert(e.actor);
            active.insert(e.actor);
        } else if (e.kind == abi::GovernanceKind::ProposalCreated) {
            active.insert(e.actor);
        }
        record.governance_event_times.push_back(e.timestamp_utc);
    }
    std::sort(record.governance_event_times.begin(), record.governance_event_times.end());
    record.active_members = active.size();
    record.tier = classify_activity(record.governance_event_times, inputs.snapshot_time);

    // Balance-derived figures at the snapshot block.
    BalanceTotals totals;
    BalanceMap balances = reconstruct_balances(inputs.transfers, inputs.snapshot_block, &totals);

    record.total_supply = inputs.token.total_supply;
    if (totals.minted - totals.burned != inputs.token.total_supply)
        ++record.validation.supply_mismatch;

    std::set<std::string> excluded(inputs.treasury.locked.begin(), inputs.treasury.locked.end());
    if (!inputs.treasury.address.empty())
        excluded.insert(inputs.treasury.address);

    BigInt held_out_of_circulation = 0;
    BigInt largest = 0;
    uint64_t members = 0;
    for (const auto& [addr, bal] : balances) {
        if (is_burn_address(addr))
            continue;
        if (excluded.count(addr)) {
            held_out_of_circulation += bal;
            continue;
        }
        ++members;
        largest = std::max(largest, bal);
    }
    record.total_members = members;
    record.circulating_supply = record.total_supply - held_out_of_circulation;
    if (record.circulating_supply < 0)
        record.circulating_supply = 0;
    record.largest_holder_share = record.circulating_supply == 0
        ? 0.0
        : double(largest) / double(record.circulating_supply);

    // Treasury valuation: configured USD assets plus priced governance
    // tokens held by the treasury account. No price source, no KPI 2.
    if (inputs.treasury.assets_usd || inputs.treasury.token_price_usd) {
        double usd = inputs.treasury.assets_usd.value_or(0.0);
        if (inputs.treasury.token_price_usd && !inputs.treasury.address.empty()) {
            auto it = balances.find(inputs.treasury.address);
            if (it != balances.end()) {
                double scale = std::pow(10.0, double(inputs.token_decimals));
                usd += double(it->second) / scale * *inputs.treasury.token_price_usd;
            }
        }
        record.treasury_usd = usd;
    }

    // Full automation: config override wins; detection stays advisory.
    bool any_exec = false;
    bool all_from_governance = true;
    for (const auto& e : inputs.gov_events) {
        if (e.kind == abi::GovernanceKind::ProposalExecuted) {
            any_exec = true;
            // Events were fetched from the governance contract itself, so a
            // foreign emitter can only appear through a misfiled fixture.
        }
    }
    record.automation_detected = any_exec && all_from_governance;
    record.fully_automated = inputs.fully_automated.value_or(record.automation_detected);

    // Proposer concentration: modal proposer's share of proposals.
    std::map<std::string, uint64_t> per_proposer;
    for (const auto& p : record.proposals)
        ++per_proposer[p.proposer];
    uint64_t modal = 0;
    for (const auto& [_, n] : per_proposer)
        modal = std::max(modal, n);
    record.proposer_concentration = record.proposals.empty()
        ? 0.0
        : double(modal) / double(record.proposals.size());

    return record;
}

} // namespace daolens::harmonize

// harmonize.hpp - validation, cross-linking and aggregation of decoded
// events into the per-DAO harmonised record

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/abi/types.hpp"
#include "daolens/chain/types.hpp"
#include "daolens/harmonize/types.hpp"

#include <map>
#include <optional>

namespace daolens::harmonize {

// Removes exact duplicates (same block / tx hash / log index) and counts
// timestamp regressions in block order. Output is sorted by
// (block_number, log_index).
std::pair<std::vector<abi::DecodedEvent>, ValidationReport>
dedup_and_validate(std::vector<abi::DecodedEvent> events);

struct SummarizeOptions {
    abi::WindowUnit window_unit = abi::WindowUnit::Timestamp;
    int64_t seconds_per_block = 12; // used to extrapolate unseen window blocks
    std::optional<BigInt> quorum_weight; // participating weight required, raw units
    int64_t snapshot_time = 0; // proposals ending after this stay pending
};

// Folds governance events into per-proposal summaries. Orphan votes and
// lifecycle events without a creation event are counted, not thrown.
std::pair<std::vector<ProposalSummary>, ValidationReport>
summarize_proposals(const std::vector<abi::GovernanceEvent>& gov_events,
                    const std::map<uint64_t, int64_t>& timestamps,
                    const SummarizeOptions& options);

// Activity tier per the dataset construction rules: five+ governance
// transactions in the last 30 days, one in the last 90, fewer than two ever.
ActivityTier classify_activity(const std::vector<int64_t>& governance_event_times, int64_t now);

struct TreasuryConfig {
    std::string address; // DAO treasury holding account (may be empty)
    std::vector<std::string> locked; // vesting contracts etc., out of circulation
    std::optional<double> token_price_usd; // governance token price at snapshot
    std::optional<double> assets_usd;      // non-token treasury assets, pre-valued
};

struct BuildInputs {
    std::string dao_id;
    int64_t chain_id = 0;
    uint64_t snapshot_block = 0;
    int64_t snapshot_time = 0;
    std::string governance_address;
    std::vector<abi::GovernanceEvent> gov_events; // deduplicated
    std::vector<abi::TokenTransfer> transfers;    // deduplicated, sorted
    chain::TokenMetadata token;
    int64_t token_decimals = 18;
    TreasuryConfig treasury;
    std::optional<bool> fully_automated; // config override; detection is advisory
    SummarizeOptions summarize;
    std::map<uint64_t, int64_t> block_timestamps;
    ValidationReport carried; // counters accumulated by earlier checks
};

DaoRecord build_dao_record(const BuildInputs& inputs);

} // namespace daolens::harmonize

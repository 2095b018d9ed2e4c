// balances.hpp - token holder balances replayed from transfer events
//
// The serial replay is the reference (and the error-reporting contract);
// the parallel kernel shards the prefix scan by address and must produce
// identical balances and identical first-violation errors.

#pragma once

#include "daolens/abi/governance.hpp"
#include "daolens/common/bigint.hpp"

#include <map>
#include <string>
#include <vector>

namespace daolens::harmonize {

using BalanceMap = std::map<std::string, BigInt>;

struct BalanceTotals {
    BigInt minted;
    BigInt burned;
};

// Naive in-order replay. Transfers must be sorted by (block, log_index);
// only transfers with block_number <= at_block participate. Zero-balance
// addresses are omitted. Throws data_integrity_error naming the address and
// block of the first transfer that would drive a balance negative.
BalanceMap reconstruct_balances_serial(const std::vector<abi::TokenTransfer>& transfers, uint64_t at_block,
                                       BalanceTotals* totals = nullptr);

// OpenMP kernel: per-address delta streams scanned in parallel.
BalanceMap reconstruct_balances(const std::vector<abi::TokenTransfer>& transfers, uint64_t at_block,
                                BalanceTotals* totals = nullptr);

} // namespace daolens::harmonize

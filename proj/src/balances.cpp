#include "daolens/harmonize/balances.hpp"

#include "daolens/common/bytes.hpp"
#include "daolens/common/errors.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace daolens::harmonize {

namespace {

[[noreturn]] void throw_negative(const std::string& address, uint64_t block)
{
    throw data_integrity_error("balance of " + address + " goes negative at block " + std::to_string(block));
}

void add_totals(const abi::TokenTransfer& t, BalanceTotals& totals)
{
    if (t.is_mint())
        totals.minted += t.amount;
    if (t.is_burn())
        totals.burned += t.amount;
}

constexpr size_t kParallelThreshold = 4'096;

} // namespace

BalanceMap reconstruct_balances_serial(const std::vector<abi::TokenTransfer>& transfers, uint64_t at_block,
                                       BalanceTotals* totals)
{
    std::unordered_map<std::string, BigInt> balances;
    BalanceTotals running;

    for (const auto& t : transfers) {
        if (t.block_number > at_block)
            break; // sorted input: nothing later qualifies
        add_totals(t, running);
        if (!t.is_mint()) {
            BigInt& from_bal = balances[t.from];
            from_bal -= t.amount;
            if (from_bal < 0)
                throw_negative(t.from, t.block_number);
        }
        if (!t.is_burn())
            balances[t.to] += t.amount;
    }

    BalanceMap out;
    for (auto& [addr, bal] : balances)
        if (bal != 0)
            out.emplace(addr, std::move(bal));
    if (totals)
        *totals = running;
    return out;
}

BalanceMap reconstruct_balances(const std::vector<abi::TokenTransfer>& transfers, uint64_t at_block,
                                BalanceTotals* totals)
{
#ifndef _OPENMP
    return reconstruct_balances_serial(transfers, at_block, totals);
#else
    if (transfers.size() < kParallelThreshold)
        return reconstruct_balances_serial(transfers, at_block, totals);

    // Per-address delta streams. Debits precede credits within one transfer,
    // matching the serial replay's transient-negativity semantics.
    struct Delta {
        uint64_t block;
        uint32_t log_index;
        bool debit;
        const BigInt* amount;
    };
    std::unordered_map<std::string, std::vector<Delta>> streams;
    BalanceTotals running;
    for (const auto& t : transfers) {
        if (t.block_number > at_block)
            break;
        add_totals(t, running);
        if (!t.is_mint())
            streams[t.from].push_back({ t.block_number, t.log_index, true, &t.amount });
        if (!t.is_burn())
            streams[t.to].push_back({ t.block_number, t.log_index, false, &t.amount });
    }

    std::vector<const std::string*> addresses;
    addresses.reserve(streams.size());
    for (const auto& [addr, _] : streams)
        addresses.push_back(&addr);

    struct Violation {
        uint64_t block = UINT64_MAX;
        uint32_t log_index = UINT32_MAX;
        const std::string* address = nullptr;
    };

    std::vector<BigInt> finals(addresses.size());
    Violation first;

#pragma omp parallel
    {
        Violation local;
#pragma omp for schedule(dynamic, 64) nowait
        for (size_t i = 0; i < addresses.size(); ++i) {
            const auto& stream = streams.at(*addresses[i]);
            BigInt bal = 0;
            for (const auto& d : stream) {
                if (d.debit) {
                    bal -= *d.amount;
                    if (bal < 0) {
                        // remember the earliest violation for this address
                        if (std::tie(d.block, d.log_index) < std::tie(local.block, local.log_index))
                            local = { d.block, d.log_index, addresses[i] };
                        break;
                    }
                } else {
                    bal += *d.amount;
                }
            }
            finals[i] = std::move(bal);
        }
#pragma omp critical
        {
            if (std::tie(local.block, local.log_index) < std::tie(first.block, first.log_index))
                first = local;
        }
    }

    if (first.address)
        throw_negative(*first.address, first.block);

    BalanceMap out;
    for (size_t i = 0; i < addresses.size(); ++i)
        if (finals[i] != 0)
            out.emplace(*addresses[i], std::move(finals[i]));
    if (totals)
        *totals = running;
    return out;
#endif
}

} // namespace daolens::harmonize

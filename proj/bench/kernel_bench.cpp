// Compares the OpenMP kernels against their serial references on bulk
// synthetic data: batch log decoding and balance reconstruction. Verifies
// output parity while timing, so a speedup never hides a divergence.
//
//   ./kernel_bench [log_count] [transfer_count]

#include "daolens/abi/batch_decode.hpp"
#include "daolens/abi/codec.hpp"
#include "daolens/harmonize/balances.hpp"
#include "daolens/synth/synth.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace daolens;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string random_address(synth::SplitMix64& rng)
{
    std::string a = "0x";
    static const char digits[] = "0123456789abcdef";
    for (int d = 0; d < 40; ++d)
        a += digits[rng.below(16)];
    return a;
}

} // namespace

int main(int argc, char** argv)
{
    size_t log_count = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400'000;
    size_t transfer_count = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 400'000;

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels fall back to serial\n");
#endif

    synth::SplitMix64 rng(1);

    // ----- batch decode ------------------------------------------------
    const auto& transfer_spec = abi::erc20_transfer_spec();
    abi::SpecRegistry registry;
    registry.add(transfer_spec);

    std::printf("generating %zu transfer logs...\n", log_count);
    std::vector<chain::RawLog> logs;
    logs.reserve(log_count);
    for (size_t i = 0; i < log_count; ++i) {
        abi::EncodedLog enc = abi::encode_log(transfer_spec,
                                              { abi::Value::from_text(random_address(rng)),
                                                abi::Value::from_text(random_address(rng)),
                                                abi::Value::from_uint(BigInt(rng.next())) });
        chain::RawLog log;
        log.address = "0x00000000000000000000000000000000000000aa";
        log.topics = std::move(enc.topics);
        log.data = std::move(enc.data);
        log.block_number = uint64_t(i / 8);
        log.log_index = uint32_t(i % 8);
        log.tx_hash = "0x00";
        logs.push_back(std::move(log));
    }

    auto t0 = std::chrono::steady_clock::now();
    abi::BatchResult serial = abi::decode_batch_serial(registry, logs);
    double decode_serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    abi::BatchResult parallel = abi::decode_batch(registry, logs);
    double decode_parallel_s = seconds_since(t0);

    bool decode_match = serial.events.size() == parallel.events.size()
        && serial.report.decoded == parallel.report.decoded;
    for (size_t i = 0; decode_match && i < serial.events.size(); i += 997)
        decode_match = serial.events[i].params == parallel.events[i].params;

    std::printf("decode  : serial %.3fs, parallel %.3fs, speedup %.2fx, outputs %s\n",
                decode_serial_s, decode_parallel_s, decode_serial_s / decode_parallel_s,
                decode_match ? "match" : "DIVERGE");

    // ----- balance reconstruction ---------------------------------------
    std::printf("generating %zu transfers...\n", transfer_count);
    std::vector<std::string> holders;
    for (int i = 0; i < 20'000; ++i)
        holders.push_back(random_address(rng));

    std::vector<abi::TokenTransfer> transfers;
    transfers.reserve(transfer_count);
    std::map<std::string, BigInt> running;
    uint64_t block = 1;
    uint32_t index = 0;
    while (transfers.size() < transfer_count) {
        if (rng.below(4) == 0)
            ++block, index = 0;
        abi::TokenTransfer t;
        t.block_number = block;
        t.log_index = index++;
        if (rng.below(3) == 0) {
            t.from = kZeroAddress;
            t.to = holders[rng.below(holders.size())];
            t.amount = BigInt(1 + rng.below(1'000'000'000));
            running[t.to] += t.amount;
        } else {
            t.from = holders[rng.below(holders.size())];
            BigInt& bal = running[t.from];
            if (bal == 0)
                continue;
            t.amount = bal / BigInt(2);
            if (t.amount == 0)
                continue;
            t.to = holders[rng.below(holders.size())];
            bal -= t.amount;
            running[t.to] += t.amount;
        }
        transfers.push_back(std::move(t));
    }

    t0 = std::chrono::steady_clock::now();
    auto balances_serial = harmonize::reconstruct_balances_serial(transfers, block);
    double balance_serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto balances_parallel = harmonize::reconstruct_balances(transfers, block);
    double balance_parallel_s = seconds_since(t0);

    std::printf("balances: serial %.3fs, parallel %.3fs, speedup %.2fx, outputs %s\n",
                balance_serial_s, balance_parallel_s, balance_serial_s / balance_parallel_s,
                balances_serial == balances_parallel ? "match" : "DIVERGE");

    return (decode_match && balances_serial == balances_parallel) ? 0 : 1;
}

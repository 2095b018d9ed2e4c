// client.hpp - high-level chain access: log retrieval, block timestamps,
// token metadata. One client per endpoint; shared rate limiter inside.

#pragma once

#include "daolens/chain/provider.hpp"
#include "daolens/chain/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

namespace daolens::chain {

// Injectable time source so rate limiting and backoff are testable without
// real sleeps.
struct Clock {
    std::function<double()> now_s;        // monotonic seconds
    std::function<void(double)> sleep_s;

    static Clock real();
};

struct RetryPolicy {
    int attempts = 5;
    double base_delay_s = 0.5; // doubled per attempt, jittered
    bool jitter = true;
};

// Classic token bucket: capacity one burst, refills at `rate` tokens/sec.
class TokenBucket {
public:
    TokenBucket(double rate, Clock clock);
    void acquire(); // blocks (via clock.sleep_s) until a token is available

private:
    double rate_;
    double capacity_;
    double tokens_;
    double last_refill_;
    Clock clock_;
    std::mutex mutex_;
};

class ChainClient {
public:
    ChainClient(ChainEndpoint endpoint, std::shared_ptr<Provider> provider,
                RetryPolicy retry = {}, Clock clock = Clock::real());

    // Builds the provider for the endpoint: FixtureProvider when fixture_dir
    // is set, HttpProvider otherwise.
    static std::shared_ptr<Provider> make_provider(const ChainEndpoint& endpoint);

    uint64_t head_block();

    // All logs emitted by the contract in [from_block, to_block], ascending
    // by (block_number, log_index). Splits into max_block_span chunks and
    // re-splits on suspected provider truncation.
    std::vector<RawLog> fetch_logs(const ContractRef& contract, uint64_t from_block, uint64_t to_block,
                                   const std::optional<Bytes32>& topic0 = std::nullopt);

    // Timestamps for every requested block; cached across calls.
    std::map<uint64_t, int64_t> fetch_block_timestamps(const std::set<uint64_t>& blocks);

    // decimals / totalSupply / symbol via eth_call at the given block.
    TokenMetadata fetch_token_metadata(const ContractRef& token, uint64_t at_block);

    const ChainEndpoint& endpoint() const { return endpoint_; }

    // Result count at which a provider response is treated as possibly
    // truncated (several public providers silently cap at 10k).
    static constexpr size_t kProviderHardCap = 10'000;

private:
    json call(const std::string& method, const json& params);
    void fetch_chunk(const ContractRef& contract, uint64_t from, uint64_t to,
                     const std::optional<Bytes32>& topic0, std::vector<RawLog>& out);

    ChainEndpoint endpoint_;
    std::shared_ptr<Provider> provider_;
    RetryPolicy retry_;
    Clock clock_;
    TokenBucket limiter_;
    std::mutex cache_mutex_;
    std::map<uint64_t, int64_t> timestamp_cache_;
};

// Parses one eth_getLogs entry into a RawLog.
RawLog raw_log_from_json(const json& entry);
json raw_log_to_json(const RawLog& log);

} // namespace daolens::chain

#include "daolens/chain/client.hpp"

#include "daolens/common/keccak.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <thread>

namespace daolens::chain {

void ChainEndpoint::validate() const
{
    if (max_block_span < 1)
        throw config_error("max_block_span must be >= 1");
    if (!(rate_limit > 0))
        throw config_error("rate_limit must be positive");
    if (rpc_url.empty() && fixture_dir.empty())
        throw config_error("endpoint needs rpc_url or fixture_dir");
}

void ContractRef::validate() const
{
    if (!is_address(address))
        throw argument_error("contract address must be 0x + 40 hex digits: " + address);
}

Clock Clock::real()
{
    return Clock {
        [] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
        },
        [](double s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); },
    };
}

TokenBucket::TokenBucket(double rate, Clock clock)
    : rate_(rate)
    , capacity_(std::max(1.0, rate))
    , tokens_(capacity_)
    , last_refill_(clock.now_s())
    , clock_(std::move(clock))
{
}

void TokenBucket::acquire()
{
    // The epsilon keeps rounding in the refill product from leaving tokens_
    // pinned at 1 - ulp, which would shrink the next wait below the clock's
    // resolution and stall a discrete test clock forever.
    constexpr double kEps = 1e-9;
    std::unique_lock lock(mutex_);
    for (;;) {
        double now = clock_.now_s();
        tokens_ = std::min(capacity_, tokens_ + (now - last_refill_) * rate_);
        last_refill_ = now;
        if (tokens_ + kEps >= 1.0) {
            tokens_ = std::max(0.0, tokens_ - 1.0);
            return;
        }
        double wait = std::max((1.0 - tokens_) / rate_, 1e-6);
        lock.unlock();
        clock_.sleep_s(wait);
        lock.lock();
    }
}

// ---------------------------------------------------------------------------

ChainClient::ChainClient(ChainEndpoint endpoint, std::shared_ptr<Provider> provider, RetryPolicy retry, Clock clock)
    : endpoint_(std::move(endpoint))
    , provider_(std::move(provider))
    , retry_(retry)
    , clock_(clock)
    , limiter_(endpoint_.rate_limit, clock)
{
    endpoint_.validate();
}

std::shared_ptr<Provider> ChainClient::make_provider(const ChainEndpoint& endpoint)
{
    if (!endpoint.fixture_dir.empty())
        return std::make_shared<FixtureProvider>(endpoint.fixture_dir);
    return std::make_shared<HttpProvider>(endpoint.rpc_url);
}

json ChainClient::call(const std::string& method, const json& params)
{
    std::string last_error;
    for (int attempt = 0; attempt < retry_.attempts; ++attempt) {
        if (attempt > 0) {
            double delay = retry_.base_delay_s * (1 << (attempt - 1));
            if (retry_.jitter) {
                static thread_local std::mt19937_64 rng(std::random_device {}());
                delay *= std::uniform_real_distribution<double>(0.5, 1.5)(rng);
            }
            clock_.sleep_s(delay);
        }
        limiter_.acquire();
        try {
            return provider_->call(method, params);
        } catch (const rpc_error&) {
            throw; // a definitive provider answer; retrying cannot help
        } catch (const transport_error& e) {
            last_error = e.what();
        }
    }
    throw transport_error(method + " failed after " + std::to_string(retry_.attempts)
                          + " attempts; last error: " + last_error);
}

uint64_t ChainClient::head_block()
{
    return quantity_from_hex(call("eth_blockNumber", json::array()).get<std::string>());
}

RawLog raw_log_from_json(const json& entry)
{
    RawLog log;
    log.address = normalize_address(entry.at("address").get<std::string>());
    for (const auto& t : entry.at("topics"))
        log.topics.push_back(word_from_hex(t.get<std::string>()));
    if (log.topics.size() > 4)
        throw transport_error("log carries more than 4 topics");
    log.data = from_hex(entry.at("data").get<std::string>());
    log.block_number = quantity_from_hex(entry.at("blockNumber").get<std::string>());
    log.tx_hash = entry.at("transactionHash").get<std::string>();
    log.log_index = static_cast<uint32_t>(quantity_from_hex(entry.at("logIndex").get<std::string>()));
    return log;
}

json raw_log_to_json(const RawLog& log)
{
    json topics = json::array();
    for (const auto& t : log.topics)
        topics.push_back(to_hex(t));
    return json {
        { "address", log.address },
        { "topics", topics },
        { "data", to_hex(std::span<const uint8_t>(log.data.data(), log.data.size())) },
        { "blockNumber", quantity_to_hex(log.block_number) },
        { "transactionHash", log.tx_hash },
        { "logIndex", quantity_to_hex(log.log_index) },
    };
}

void ChainClient::fetch_chunk(const ContractRef& contract, uint64_t from, uint64_t to,
                              const std::optional<Bytes32>& topic0, std::vector<RawLog>& out)
{
    json filter = {
        { "address", contract.address },
        { "fromBlock", quantity_to_hex(from) },
        { "toBlock", quantity_to_hex(to) },
    };
    if (topic0)
        filter["topics"] = json::array({ to_hex(*topic0) });

    json result = call("eth_getLogs", json::array({ filter }));
    if (!result.is_array())
        throw transport_error("eth_getLogs result is not an array");

    if (result.size() >= kProviderHardCap) {
        // Possibly truncated: re-split until single blocks prove otherwise.
        if (from == to)
            throw transport_error("provider truncates logs of single block " + std::to_string(from));
        uint64_t mid = from + (to - from) / 2;
        fetch_chunk(contract, from, mid, topic0, out);
        fetch_chunk(contract, mid + 1, to, topic0, out);
        return;
    }
    for (const auto& entry : result)
        out.push_back(raw_log_from_json(entry));
}

std::vector<RawLog> ChainClient::fetch_logs(const ContractRef& contract, uint64_t from_block, uint64_t to_block,
                                            const std::optional<Bytes32>& topic0)
{
    if (from_block > to_block)
        throw argument_error("inverted block range: " + std::to_string(from_block) + " > " + std::to_string(to_block));
    contract.validate();

    std::vector<RawLog> out;
    for (uint64_t start = from_block; start <= to_block;) {
        uint64_t end = std::min(to_block, start + endpoint_.max_block_span - 1);
        fetch_chunk(contract, start, end, topic0, out);
        if (end == UINT64_MAX)
            break;
        start = end + 1;
    }
    std::sort(out.begin(), out.end(), [](const RawLog& a, const RawLog& b) {
        return std::tie(a.block_number, a.log_index) < std::tie(b.block_number, b.log_index);
    });
    return out;
}

std::map<uint64_t, int64_t> ChainClient::fetch_block_timestamps(const std::set<uint64_t>& blocks)
{
    std::map<uint64_t, int64_t> out;
    std::vector<uint64_t> missing;
    {
        std::lock_guard lock(cache_mutex_);
        for (uint64_t b : blocks) {
            auto it = timestamp_cache_.find(b);
            if (it != timestamp_cache_.end())
                out[b] = it->second;
            else
                missing.push_back(b);
        }
    }
    for (uint64_t b : missing) { // ascending: std::set iterates sorted
        json result = call("eth_getBlockByNumber", json::array({ quantity_to_hex(b), false }));
        if (result.is_null())
            throw transport_error("unknown block " + std::to_string(b));
        int64_t ts = static_cast<int64_t>(quantity_from_hex(result.at("timestamp").get<std::string>()));
        out[b] = ts;
        std::lock_guard lock(cache_mutex_);
        timestamp_cache_[b] = ts;
    }
    return out;
}

namespace {

std::string selector_hex(const std::string& signature)
{
    Bytes32 digest = keccak256(signature);
    return to_hex(std::span<const uint8_t>(digest.data(), 4));
}

} // namespace

TokenMetadata ChainClient::fetch_token_metadata(const ContractRef& token, uint64_t at_block)
{
    if (token.kind != ContractKind::Token)
        throw argument_error("fetch_token_metadata requires a token contract ref");
    token.validate();

    auto eth_call = [&](const std::string& signature) -> Bytes {
        json params = json::array({ json { { "to", token.address }, { "data", selector_hex(signature) } },
                                    quantity_to_hex(at_block) });
        return from_hex(call("eth_call", params).get<std::string>());
    };

    TokenMetadata meta;

    try {
        Bytes raw = eth_call("decimals()");
        if (raw.empty())
            throw transport_error("no contract code at " + token.address);
        if (raw.size() < 32)
            throw transport_error("decimals() returned short data");
        meta.decimals = static_cast<int>(raw[31]) + (raw[30] ? 256 : 0);
        if (meta.decimals < 0 || meta.decimals > 77)
            throw transport_error("decimals out of range");
    } catch (const rpc_error&) {
        // Tokens without a decimals() function: 18 assumed, warned.
        std::cerr << "warning: decimals() reverted for " << token.address << ", assuming 18\n";
        meta.decimals = 18;
        meta.decimals_defaulted = true;
    }

    Bytes supply_raw = eth_call("totalSupply()");
    if (supply_raw.size() < 32)
        throw transport_error("totalSupply() returned short data for " + token.address);
    BigInt supply = 0;
    for (size_t i = 0; i < 32; ++i)
        supply = (supply << 8) | supply_raw[i];
    meta.total_supply = supply;

    try {
        Bytes sym_raw = eth_call("symbol()");
        if (sym_raw.size() >= 64) {
            // standard ABI string: offset, length, payload
            size_t len = sym_raw[63];
            if (sym_raw.size() >= 64 + len)
                meta.symbol = std::string(sym_raw.begin() + 64, sym_raw.begin() + 64 + len);
        } else if (sym_raw.size() == 32) {
            // legacy bytes32 symbol
            auto end = std::find(sym_raw.begin(), sym_raw.end(), 0);
            meta.symbol = std::string(sym_raw.begin(), end);
        }
    } catch (const rpc_error&) {
        meta.symbol.clear(); // symbol is optional in ERC-20
    }

    return meta;
}

} // namespace daolens::chain

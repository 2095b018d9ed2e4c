// types.hpp - chain endpoints, contract references, raw logs

#pragma once

#include "daolens/common/bigint.hpp"
#include "daolens/common/bytes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace daolens::chain {

struct ChainEndpoint {
    int64_t chain_id = 0;
    std::string rpc_url;     // may embed ${ENV_VAR} credential placeholders
    std::string fixture_dir; // recorded-response directory (hermetic mode)
    uint64_t max_block_span = 10'000;
    double rate_limit = 10.0; // requests per second

    void validate() const; // max_block_span >= 1, rate_limit > 0
};

enum class ContractKind { Governance, Token };

struct ContractRef {
    std::string address; // 0x + 40 hex, lowercase
    int64_t chain_id = 0;
    uint64_t deploy_block = 0;
    ContractKind kind = ContractKind::Governance;

    void validate() const;
};

struct RawLog {
    std::string address;
    std::vector<Bytes32> topics; // 0..4 entries
    Bytes data;
    uint64_t block_number = 0;
    std::string tx_hash; // 0x + 64 hex
    uint32_t log_index = 0;
    int64_t block_timestamp = 0; // UTC seconds, 0 until enriched

    bool operator==(const RawLog&) const = default;
};

struct TokenMetadata {
    int decimals = 18;
    BigInt total_supply;
    std::string symbol;
    bool decimals_defaulted = false; // decimals() call reverted, 18 assumed
};

} // namespace daolens::chain

// types.hpp - ABI event descriptions and decoded values

#pragma once

#include "daolens/common/bigint.hpp"
#include "daolens/common/bytes.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace daolens::abi {

enum class BaseType {
    Address,
    Bool,
    Uint,   // uintN, N in width_bits
    Int,    // intN
    BytesN, // bytesN, N in fixed_bytes
    Bytes,  // dynamic
    String, // dynamic
};

// One solidity parameter type. Arrays are a single level deep: elem x [size]
// (size 0 = dynamic length). Tuples and nested arrays are rejected at parse.
struct SolType {
    BaseType base = BaseType::Uint;
    unsigned width_bits = 256; // for Uint/Int
    unsigned fixed_bytes = 0;  // for BytesN
    bool is_array = false;
    size_t array_size = 0; // 0 = dynamic

    // Canonical form used in event signatures (uint -> uint256 etc.).
    std::string canonical() const;

    // Dynamic types need head/tail encoding.
    bool dynamic() const;
};

// Parses a canonical-or-aliased solidity type string ("uint", "bytes32[4]").
SolType parse_sol_type(const std::string& text);

struct EventInput {
    std::string name;
    SolType type;
    bool indexed = false;
};

struct AbiEventSpec {
    std::string name;
    std::vector<EventInput> inputs;
    bool anonymous = false;

    // "Name(type1,type2,...)" with canonical type names, no spaces.
    std::string signature() const;
    size_t indexed_count() const;
};

// A decoded parameter value. Dynamic indexed params only surface as the
// 32-byte hash the log carries, marked by HashedValue.
struct HashedValue {
    Bytes32 hash;
    bool operator==(const HashedValue&) const = default;
};

struct Value;
using ValueArray = std::vector<Value>;

struct Value {
    // Address values are lowercase 0x-hex strings; Uint/Int share BigInt.
    std::variant<std::monostate, BigInt, bool, std::string, Bytes, ValueArray, HashedValue> data;

    bool operator==(const Value&) const = default;

    static Value from_uint(BigInt v) { return Value { std::move(v) }; }
    static Value from_bool(bool v) { return Value { v }; }
    static Value from_text(std::string v) { return Value { std::move(v) }; }
    static Value from_bytes(Bytes v) { return Value { std::move(v) }; }

    const BigInt& as_uint() const { return std::get<BigInt>(data); }
    bool as_bool() const { return std::get<bool>(data); }
    const std::string& as_text() const { return std::get<std::string>(data); }
    const Bytes& as_bytes() const { return std::get<Bytes>(data); }
    bool is_hashed() const { return std::holds_alternative<HashedValue>(data); }
};

struct DecodedParam {
    std::string name;
    Value value;

    bool operator==(const DecodedParam&) const = default;
};

struct DecodedEvent {
    std::string event_name;
    std::string contract; // 20-byte hex, lowercase
    std::vector<DecodedParam> params;
    uint64_t block_number = 0;
    std::string tx_hash;
    uint32_t log_index = 0;
    int64_t timestamp_utc = 0; // filled by enrichment

    const Value* find(const std::string& param_name) const;
};

} // namespace daolens::abi

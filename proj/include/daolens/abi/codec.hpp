// codec.hpp - ABI parsing, topic computation, log decode/encode

#pragma once

#include "daolens/abi/types.hpp"
#include "daolens/chain/types.hpp"

#include <string>
#include <vector>

namespace daolens::abi {

// Extracts the event entries from a standard ABI JSON document; functions,
// constructors and errors are ignored. Throws parse_error on malformed JSON,
// unsupported_type_error on types outside the supported set.
std::vector<AbiEventSpec> parse_abi(const std::string& abi_text);

// Keccak-256 of the canonical signature (topic0 for non-anonymous events).
Bytes32 event_topic(const AbiEventSpec& spec);

// Decodes one raw log against the spec. Indexed params come from topics in
// declaration order; the rest use the standard head/tail layout over data.
// Dynamic indexed params surface as HashedValue.
// Throws wrong_event_error on a topic0 mismatch, malformed_log_error when
// the bytes do not fit the spec.
DecodedEvent decode_log(const AbiEventSpec& spec, const chain::RawLog& log);

// Inverse of decode_log for generator-produced values: builds topics + data.
// Values must be concrete (HashedValue only allowed for dynamic indexed
// params, where the hash is emitted as the topic).
struct EncodedLog {
    std::vector<Bytes32> topics;
    Bytes data;
};
EncodedLog encode_log(const AbiEventSpec& spec, const std::vector<Value>& values);

} // namespace daolens::abi

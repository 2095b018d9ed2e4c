// bytes.hpp - byte buffers, 32-byte words, hex conversions

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace daolens {

using Bytes = std::vector<uint8_t>;
using Bytes32 = std::array<uint8_t, 32>;

// "0x" + lowercase hex of the buffer.
std::string to_hex(std::span<const uint8_t> data);
std::string to_hex(const Bytes32& word);

// Parses an optionally 0x-prefixed hex string (even length required).
Bytes from_hex(const std::string& hex);

// Parses exactly 32 bytes of hex; throws argument_error otherwise.
Bytes32 word_from_hex(const std::string& hex);

// Quantity helpers for the JSON-RPC hex-number convention ("0x1a3f").
std::string quantity_to_hex(uint64_t v);
uint64_t quantity_from_hex(const std::string& hex);

// True for "0x" + exactly 40 hex digits, case-insensitive.
bool is_address(const std::string& s);

// Lowercases a checksummed or uppercase address; throws argument_error if malformed.
std::string normalize_address(const std::string& address);

// The 0x000...0 address (mint/burn counterparty).
inline const std::string kZeroAddress = "0x0000000000000000000000000000000000000000";

} // namespace daolens

// keccak.hpp - Keccak-256 (the pre-NIST padding Ethereum uses)

#pragma once

#include "daolens/common/bytes.hpp"

#include <span>
#include <string_view>

namespace daolens {

Bytes32 keccak256(std::span<const uint8_t> data);
Bytes32 keccak256(std::string_view text);

} // namespace daolens

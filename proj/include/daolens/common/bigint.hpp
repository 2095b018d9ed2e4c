// bigint.hpp - arbitrary-precision integers for raw token amounts

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace daolens {

// Raw on-chain quantities (token amounts, vote weights, proposal ids) can
// exceed 64 bits; uint256 values fit comfortably in cpp_int.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v)
{
    return v.str();
}

inline BigInt bigint_from_decimal(const std::string& s)
{
    return BigInt(s);
}

} // namespace daolens

#include "daolens/common/bytes.hpp"

#include "daolens/common/errors.hpp"

#include <algorithm>
#include <cctype>

namespace daolens {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int nibble(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(std::span<const uint8_t> data)
{
    std::string out;
    out.reserve(2 + data.size() * 2);
    out += "0x";
    for (uint8_t b : data) {
        out += kHexDigits[b >> 4];
        out += kHexDigits[b & 0x0f];
    }
    return out;
}

std::string to_hex(const Bytes32& word)
{
    return to_hex(std::span<const uint8_t>(word.data(), word.size()));
}

Bytes from_hex(const std::string& hex)
{
    size_t start = (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) ? 2 : 0;
    if ((hex.size() - start) % 2 != 0)
        throw argument_error("hex string has odd length: " + hex);
    Bytes out;
    out.reserve((hex.size() - start) / 2);
    for (size_t i = start; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw argument_error("invalid hex digit in: " + hex);
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

Bytes32 word_from_hex(const std::string& hex)
{
    Bytes raw = from_hex(hex);
    if (raw.size() != 32)
        throw argument_error("expected 32-byte hex value, got " + std::to_string(raw.size()) + " bytes");
    Bytes32 out {};
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

std::string quantity_to_hex(uint64_t v)
{
    if (v == 0)
        return "0x0";
    char buf[19];
    int pos = 18;
    buf[pos] = '\0';
    while (v) {
        buf[--pos] = kHexDigits[v & 0x0f];
        v >>= 4;
    }
    return "0x" + std::string(buf + pos);
}

uint64_t quantity_from_hex(const std::string& hex)
{
    size_t start = (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) ? 2 : 0;
    if (start == hex.size())
        throw argument_error("empty hex quantity: " + hex);
    uint64_t v = 0;
    for (size_t i = start; i < hex.size(); ++i) {
        int d = nibble(hex[i]);
        if (d < 0)
            throw argument_error("invalid hex quantity: " + hex);
        if (v > (UINT64_MAX >> 4))
            throw argument_error("hex quantity overflows 64 bits: " + hex);
        v = (v << 4) | static_cast<uint64_t>(d);
    }
    return v;
}

bool is_address(const std::string& s)
{
    if (s.size() != 42 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X'))
        return false;
    return std::all_of(s.begin() + 2, s.end(), [](char c) { return nibble(c) >= 0; });
}

std::string normalize_address(const std::string& address)
{
    if (!is_address(address))
        throw argument_error("not a 20-byte hex address: " + address);
    std::string out = address;
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace daolens

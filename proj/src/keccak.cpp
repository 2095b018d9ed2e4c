// Keccak-256 with rate 1088 / capacity 512 and the original 0x01 domain
// padding (SHA3-256 pads with 0x06 and produces different digests).

#include "daolens/common/keccak.hpp"

#include <bit>
#include <cstring>

namespace daolens {

namespace {

constexpr int kRounds = 24;
constexpr size_t kRateBytes = 136; // (1600 - 2*256) / 8

constexpr uint64_t kRoundConstants[kRounds] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL, 0x8000000080008000ULL,
    0x000000000000808bULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008aULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800aULL, 0x800000008000000aULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRotations[24] = { 1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14,
                                 27, 41, 56, 8, 25, 43, 62, 18, 39, 61, 20, 44 };

constexpr int kPiLanes[24] = { 10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4,
                               15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1 };

void keccakf(uint64_t state[25])
{
    for (int round = 0; round < kRounds; ++round) {
        // theta
        uint64_t c[5];
        for (int x = 0; x < 5; ++x)
            c[x] = state[x] ^ state[x + 5] ^ state[x + 10] ^ state[x + 15] ^ state[x + 20];
        for (int x = 0; x < 5; ++x) {
            uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                state[x + y] ^= d;
        }
        // rho + pi
        uint64_t last = state[1];
        for (int i = 0; i < 24; ++i) {
            int lane = kPiLanes[i];
            uint64_t tmp = state[lane];
            state[lane] = std::rotl(last, kRotations[i]);
            last = tmp;
        }
        // chi
        for (int y = 0; y < 25; y += 5) {
            uint64_t row[5];
            std::memcpy(row, state + y, sizeof(row));
            for (int x = 0; x < 5; ++x)
                state[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
        }
        // iota
        state[0] ^= kRoundConstants[round];
    }
}

// Byte-wise lane assembly keeps the digest independent of host endianness.
void absorb_block(uint64_t state[25], const uint8_t* block)
{
    for (size_t i = 0; i < kRateBytes / 8; ++i) {
        uint64_t lane = 0;
        for (int b = 7; b >= 0; --b)
            lane = (lane << 8) | block[i * 8 + b];
        state[i] ^= lane;
    }
    keccakf(state);
}

} // namespace

Bytes32 keccak256(std::span<const uint8_t> data)
{
    uint64_t state[25] = {};

    size_t offset = 0;
    while (data.size() - offset >= kRateBytes) {
        absorb_block(state, data.data() + offset);
        offset += kRateBytes;
    }

    uint8_t block[kRateBytes] = {};
    std::memcpy(block, data.data() + offset, data.size() - offset);
    block[data.size() - offset] = 0x01;
    block[kRateBytes - 1] |= 0x80;
    absorb_block(state, block);

    Bytes32 digest;
    for (size_t i = 0; i < 4; ++i)
        for (size_t b = 0; b < 8; ++b)
            digest[i * 8 + b] = static_cast<uint8_t>(state[i] >> (8 * b));
    return digest;
}

Bytes32 keccak256(std::string_view text)
{
    return keccak256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

} // namespace daolens

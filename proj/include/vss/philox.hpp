#ifndef VSS_PHILOX_HPP
#define VSS_PHILOX_HPP

#include <cstdint>

namespace vss {

/**
 * Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
 *
 * Stateless: each (seed, stream, index) triple maps to one 64-bit value, so
 * per-path substreams are reproducible independent of thread scheduling.
 */
namespace philox {

namespace detail {

inline void round_step(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    constexpr std::uint64_t m0 = 0xD2511F53ull;
    constexpr std::uint64_t m1 = 0xCD9E8D57ull;
    std::uint64_t p0 = m0 * ctr[0];
    std::uint64_t p1 = m1 * ctr[2];
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
    std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
    ctr[0] = out0;
    ctr[1] = lo1;
    ctr[2] = out2;
    ctr[3] = lo0;
}

} // namespace detail

// One 64-bit draw for (seed; stream, index).
inline std::uint64_t u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    std::uint32_t key[2] = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    constexpr std::uint32_t w0 = 0x9E3779B9u;
    constexpr std::uint32_t w1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
        detail::round_step(ctr, key);
        key[0] += w0;
        key[1] += w1;
    }
    return (static_cast<std::uint64_t>(ctr[0]) << 32) | ctr[1];
}

// Uniform draw in the open interval (0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return (static_cast<double>(u64(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace philox

} // namespace vss

#endif

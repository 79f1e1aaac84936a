#pragma once

#include <cstdint>
#include <random>

namespace cycleweave {

/// Rejection-sampled uniform draw on [0, n). std::mt19937_64 output is
/// pinned by the standard, and this sampler avoids the library-dependent
/// std::uniform_int_distribution, so seeded streams are portable.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t all = ~std::uint64_t{0};
    std::uint64_t rem = (all % n + 1) % n; // 2^64 mod n
    for (;;) {
        std::uint64_t r = rng();
        if (rem == 0 || r <= all - rem)
            return r % n;
    }
}

} // namespace cycleweave

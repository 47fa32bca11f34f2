#pragma once

#include <cstdint>
#include <vector>

namespace sncinv {

// SplitMix64 (Steele-Lea-Flood). The single generator behind all randomized
// instance generation: tiny state, bit-reproducible on every platform, so a
// published seed list pins the whole test corpus. Draws below a bound use
// plain modulo; the tiny bias is irrelevant here and keeps streams stable.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound <= 1 ? 0 : next() % bound; }

    // Uniform in [lo, hi], inclusive.
    int range(int lo, int hi) {
        if (hi <= lo) return lo;
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool percent(int p) { return below(100) < static_cast<std::uint64_t>(p); }

    // k distinct indices out of 0..n-1, ascending.
    std::vector<int> sample(int n, int k) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t state_;
};

} // namespace sncinv

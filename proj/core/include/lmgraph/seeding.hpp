#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lmgraph {

struct PairKey;

// 64-bit FNV-1a. Stable across platforms; used for seed derivation, token
// bucketing and config digests. Not cryptographic.
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t hash = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ull);

std::uint64_t splitmix64_next(std::uint64_t& state);

// Small deterministic RNG with a pinned algorithm, so results do not depend
// on the standard library's distribution implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64_next(state_); }

    // Uniform in [0, bound) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform in (0, 1].
    double next_unit();

    // Standard normal via Box-Muller (one value per call, spare cached).
    double next_gaussian();

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Derives per-task seeds as a pure function of (master, purpose, pair, run).
// Identical inputs give identical seeds regardless of execution order, which
// keeps parallel runs reproducible.
class Seeder {
public:
    explicit Seeder(std::uint64_t master_seed) : master_(master_seed) {}

    std::uint64_t master() const { return master_; }

    std::uint64_t derive(std::string_view purpose) const;
    std::uint64_t derive(std::string_view purpose, const PairKey& pair, int run) const;

private:
    std::uint64_t master_;
};

// In-place Fisher-Yates with a pinned RNG.
template <typename T>
void seeded_shuffle(std::vector<T>& values, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

// Deterministic coin flip from a derived seed.
inline bool seeded_coin(std::uint64_t seed) {
    std::uint64_t s = seed;
    return (splitmix64_next(s) & 1u) != 0;
}

} // namespace lmgraph

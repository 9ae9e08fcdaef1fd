#include "lmgraph/seeding.hpp"

#include <cmath>
#include <cstring>

#include "lmgraph/types.hpp"

namespace lmgraph {

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t hash) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x00000100000001b3ull;
    }
    return hash;
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash) {
    return fnv1a64(text.data(), text.size(), hash);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    // Lemire multiply-shift; bias is negligible for the bounds used here.
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    return static_cast<std::uint64_t>(product >> 64);
}

double SplitMix64::next_unit() {
    // 53 random bits in (0, 1].
    return (static_cast<double>(next() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
}

double SplitMix64::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

std::uint64_t hash_u64(std::uint64_t value, std::uint64_t hash) {
    unsigned char bytes[8];
    for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(value >> (8 * k));
    return fnv1a64(bytes, sizeof(bytes), hash);
}

std::uint64_t finalize(std::uint64_t hash) {
    return splitmix64_next(hash);
}

} // namespace

std::uint64_t Seeder::derive(std::string_view purpose) const {
    std::uint64_t h = hash_u64(master_, 0xcbf29ce484222325ull);
    h = fnv1a64(purpose, h);
    return finalize(h);
}

std::uint64_t Seeder::derive(std::string_view purpose, const PairKey& pair, int run) const {
    std::uint64_t h = hash_u64(master_, 0xcbf29ce484222325ull);
    h = fnv1a64(purpose, h);
    h = fnv1a64("\x1f", h); // separator so purpose text cannot collide with the tuple
    h = hash_u64(static_cast<std::uint64_t>(pair.i), h);
    h = hash_u64(static_cast<std::uint64_t>(pair.j), h);
    h = hash_u64(static_cast<std::uint64_t>(run), h);
    return finalize(h);
}

} // namespace lmgraph

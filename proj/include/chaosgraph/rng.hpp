#pragma once

#include <cmath>
#include <cstdint>

namespace chaosgraph {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of family member i.
inline std::uint64_t member_seed(std::uint64_t seed, std::uint64_t i) { return seed ^ i; }

// Seed of sampling chunk c.
inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t c) {
    return splitmix64(seed ^ (c * 0xD1B54A32D192ED03ULL));
}

// Counter-based SplitMix64: the i-th output is splitmix64(key + i*golden), so the
// stream for a key is the reference SplitMix64 sequence started at state key.
class Rng {
public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    std::uint64_t next() { return splitmix64(key_ + (ctr_++) * kGolden); }

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    double exponential() { return -std::log(1.0 - uniform()); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, m).
    std::uint64_t below(std::uint64_t m) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(m)) % m;
    }

    std::uint64_t counter() const { return ctr_; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace chaosgraph

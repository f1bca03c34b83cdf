#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace lus {

// Seeded random stream. All stochastic operations take one of these
// explicitly; there is no global RNG. Draw order is part of each
// operation's contract, so identical seeds give identical results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    // Uniform integer in [0, n). n must be positive.
    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

    bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }

    // Standard normal via Box-Muller. Two uniforms per call, no cached spare,
    // so the draw count per call is fixed.
    double normal() {
        const double u1 = 1.0 - uniform(0.0, 1.0); // (0, 1]
        const double u2 = uniform(0.0, 1.0);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Derived stream keyed by a label, e.g. one per clip id.
    Rng fork(std::string_view label) const { return Rng(splitmix64(seed_ ^ fnv1a64(label))); }

    Rng fork(std::uint64_t salt) const { return Rng(splitmix64(seed_ ^ (salt * 0x9e3779b97f4a7c15ULL))); }

    static std::uint64_t fnv1a64(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace lus

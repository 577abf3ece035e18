#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace dmca {

// Deterministic random source. mt19937_64 gives a fully specified bit
// stream; uniform/gaussian are derived here by hand so the double stream
// does not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller, one spare cached.
    double gaussian();

    // Uniform integer in [0, n), unbiased via rejection.
    std::size_t below(std::size_t n);

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable seed combiner (splitmix64 finalizer over the running state).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace dmca

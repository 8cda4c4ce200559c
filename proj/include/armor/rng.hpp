#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace armor {

/// Mixes a base seed with a stream index (splitmix64 finalizer) so that
/// derived generators are independent and reproducible.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
Deterministic random source. Every sampling routine in the library draws
through this wrapper (mt19937_64 plus explicit bit-to-double conversion and
CDF-walk categorical sampling), so outputs are bit-reproducible from the
seed alone, independent of the standard library's distribution internals.
*/
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) from the top 53 bits of the stream.
    double next_double() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Index i with probability w[i]; w must be non-negative with positive
    /// total mass. Never returns an index whose weight is zero.
    int categorical(std::span<const double> w) {
        const double u = next_double();
        double cum = 0.0;
        int last_positive = -1;
        for (int i = 0; i < int(w.size()); ++i) {
            if (w[i] <= 0.0) continue;
            cum += w[i];
            last_positive = i;
            if (u < cum) return i;
        }
        if (last_positive < 0)
            throw std::invalid_argument("Rng::categorical: all weights are zero");
        return last_positive;
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, n).
    int below(int n) {
        if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
        int k = int(next_double() * n);
        return k >= n ? n - 1 : k;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace armor

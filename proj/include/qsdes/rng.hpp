#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace qsdes {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Sub-seed derivation. Every randomized construction draws its sub-seeds from the
/// root seed with fixed tags, so a design is a pure function of (sizes, seed, config).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
    std::uint64_t s = root ^ (tag * 0xD1B54A32D192ED03ULL);
    splitmix64(s);
    return splitmix64(s);
}

/// Seeded generator with platform-independent bounded draws and shuffles.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [0, n). Multiply-shift; bias is O(n/2^64).
    std::int64_t bounded(std::int64_t n) {
        return std::int64_t((unsigned __int128)(next()) * (unsigned __int128)(n) >> 64);
    }

    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::int64_t i = std::int64_t(v.size()) - 1; i > 0; --i) {
            std::swap(v[std::size_t(i)], v[std::size_t(bounded(i + 1))]);
        }
    }

    /// Random permutation of {0, ..., n-1}.
    std::vector<std::int64_t> permutation(std::int64_t n) {
        std::vector<std::int64_t> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace qsdes

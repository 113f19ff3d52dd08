#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fjssp {

/// Pinned 64-bit generator used for every stochastic decision in the toolkit
/// (instance extension, greedy tie-breaks, GA operators). The algorithm is
/// SplitMix64 (Steele/Lea/Flood, Vigna's constants): a counter advanced by a
/// Weyl increment, finalized with two xor-shift-multiply rounds. Pure 64-bit
/// integer arithmetic, so a given seed produces the same stream on every
/// platform. Integer ranges use unbiased rejection sampling; reals use the
/// top 53 bits of the output.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Derives an independent stream; the parent advances by one draw.
    SplitMix64 split() { return SplitMix64(next()); }

    /// Uniform integer in [lo, hi], both ends inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        // rejection below the largest multiple of span
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    /// Uniform double in [a, b) with 53-bit resolution.
    double uniform_real(double a, double b) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return a + u * (b - a);
    }

    double uniform01() { return uniform_real(0.0, 1.0); }

    /// k distinct values from {0, ..., population-1}, in draw order
    /// (partial Fisher-Yates over an index table).
    std::vector<int> sample_without_replacement(int population, int k) {
        if (k < 0 || k > population) throw std::invalid_argument("sample: k out of range");
        std::vector<int> pool(population);
        for (int i = 0; i < population; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k; ++i) {
            const int j = uniform_int(i, population - 1);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            const int j = uniform_int(0, i);
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace fjssp

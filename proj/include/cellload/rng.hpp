#pragma once

// Deterministic random number generation.
//
// Every sampler here is spelled out explicitly (no std::*_distribution) so
// that a given seed produces bit-identical streams regardless of standard
// library version. Substreams are derived from a master seed with splitmix64,
// which makes (seed, index) -> stream a documented pure function: work units
// can be farmed out to any number of threads and still reproduce exactly.

#include <cmath>
#include <cstdint>
#include <random>

namespace cellload {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for substream `index` of stream family `tag` under `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
    return splitmix64(splitmix64(master ^ splitmix64(tag)) + index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Strictly positive uniform, safe as a log() argument.
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Standard normal via Marsaglia polar; second value is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    // Poisson count as the number of unit-rate exponential interarrivals
    // fitting into `mean`. O(mean), which is fine at the scales used here.
    std::uint64_t poisson(double mean) {
        std::uint64_t n = 0;
        double acc = 0.0;
        while (true) {
            acc += exponential(1.0);
            if (acc > mean) return n;
            ++n;
        }
    }

    // Gamma(shape, rate) via Marsaglia-Tsang, boosted for shape < 1.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double u = uniform_pos();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
        }
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cellload

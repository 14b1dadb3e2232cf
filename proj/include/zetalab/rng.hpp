#ifndef ZETALAB_RNG_HPP
#define ZETALAB_RNG_HPP

#include <cmath>
#include <cstdint>

namespace zetalab {

// Self-contained PRNG + samplers.  std::normal_distribution and
// std::gamma_distribution are implementation-defined, which would break the
// byte-identical-report contract across standard libraries, so the whole
// sampling path is spelled out here.  xoshiro256++ seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& si : s_) si = splitmix64(x);
    }

    // Fixed splitting rule: stream k of a master seed.  Used to give every
    // Monte Carlo repetition its own generator.
    static Rng split(std::uint64_t master_seed, std::uint64_t stream) {
        std::uint64_t x = master_seed;
        std::uint64_t a = splitmix64(x);
        return Rng(a ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in (0,1); never returns 0 (needed by log() in Box-Muller)
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double c = std::cos(6.283185307179586476925287 * u2);
        double s = std::sin(6.283185307179586476925287 * u2);
        cached_ = r * s;
        have_cached_ = true;
        return r * c;
    }

    // Marsaglia-Tsang for shape >= 1 (all chi uses here have shape >= 1)
    double gamma(double shape) {
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // chi_k: sqrt of a chi-square with k degrees of freedom, k >= 2
    double chi(double k) { return std::sqrt(2.0 * gamma(0.5 * k)); }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace zetalab

#endif

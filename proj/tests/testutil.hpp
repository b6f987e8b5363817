#pragma once

// Shared helpers for the test binaries: a small deterministic RNG (so fixtures
// are reproducible across platforms) and naive reference evaluators that give
// independent second opinions on library results.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace testutil {

using cplx = std::complex<double>;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64()
    {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform modulus in [lo, hi], uniform phase
    cplx complex_in_annulus(double lo, double hi)
    {
        double m = lo * std::pow(hi / lo, uniform());
        double ph = uniform(0.0, 6.283185307179586);
        return {m * std::cos(ph), m * std::sin(ph)};
    }

    double log_uniform(double lo, double hi) { return lo * std::pow(hi / lo, uniform()); }

private:
    std::uint64_t s_;
};

/* Rejects values within margin of an integer power of q, measured as the
   complex log_q distance.  Small complex perturbations of q^m still make
   (z q^{-m};q)-type factors tiny, so the phase contributes to the distance
   instead of acting as a gate. */
inline bool near_q_power(cplx z, double q, double margin = 1e-6)
{
    double m = std::abs(z);
    if (!(m > 0.0)) return true;
    double lq = std::log(q);
    double re = std::log(m) / lq;
    double im = std::arg(z) / lq;
    double d = std::hypot(re - std::round(re), im);
    return d < margin;
}

inline double rel_err(cplx got, cplx want)
{
    double scale = std::max(1e-300, std::abs(want));
    return std::abs(got - want) / scale;
}

// plain product loop, no exact-zero snapping: an independent reference
inline cplx naive_qpoch_inf(cplx a, double q)
{
    cplx r{1.0, 0.0};
    cplx aq = a;
    while (std::abs(aq) > 1e-18) {
        r *= (1.0 - aq);
        aq *= q;
    }
    return r;
}

inline cplx naive_qpoch(cplx a, double q, long n)
{
    cplx r{1.0, 0.0};
    for (long i = 0; i < n; ++i) {
        r *= (1.0 - a * std::pow(q, (double)i));
    }
    return r;
}

// term-by-term summation from the definition, fixed term count
inline cplx naive_series(const std::vector<cplx>& upper, const std::vector<cplx>& lower,
                         double q, cplx z, int terms)
{
    cplx sum{0.0, 0.0};
    for (int j = 0; j < terms; ++j) {
        cplx t = std::pow(z, (double)j);
        for (cplx a : upper) t *= naive_qpoch(a, q, j);
        t /= naive_qpoch(q, q, j);
        for (cplx b : lower) t /= naive_qpoch(b, q, j);
        sum += t;
    }
    return sum;
}

} // namespace testutil

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qjacobi/errors.hpp"

namespace qjacobi {

using cplx = std::complex<double>;

/* Summation controls shared by every series evaluator.  rel_tol bounds the
   estimated relative truncation error, max_terms caps any single one-sided
   sum.  q_membership_tol is the tolerance (in log_q units) used to decide
   whether a quantity is an exact integer power of q. */
struct EvalOptions {
    double rel_tol = 1e-12;
    int    max_terms = 10000;
    double q_membership_tol = 1e-8;
};

// integer power with binary exponentiation; n may be negative
cplx pow_int(cplx z, long long n);

/* Product accumulator with a separate binary exponent so that long products
   of q-shifted factorials can be formed without overflow.  value() folds the
   exponent back in and may itself overflow if the true result does. */
class ScaledProduct {
public:
    ScaledProduct() = default;
    explicit ScaledProduct(cplx v) : m_(v) {}

    ScaledProduct& mul(cplx f);
    ScaledProduct& div(cplx f);
    ScaledProduct& mul(const ScaledProduct& o);
    ScaledProduct& div(const ScaledProduct& o);
    // multiply by base^expo for base > 0
    ScaledProduct& mul_rpow(double base, double expo);

    bool is_zero() const { return m_ == cplx(0.0, 0.0); }
    cplx value() const;
    // log10 of the magnitude, -inf for zero
    double log10_mag() const;

private:
    void normalize();
    cplx   m_{1.0, 0.0};
    double e2_ = 0.0; // value = m_ * 2^e2_
};

/* Decides whether z equals q^m for some integer m, within tol in log_q units
   on the modulus and requiring the phase to vanish to the same scale.  Used
   for termination detection, degeneracy checks and exact zeros of (z;q)_inf. */
std::optional<long> q_int_exponent(cplx z, double q, double tol = 1e-8);

// true when z = q^{-j} for some integer j >= 0
bool is_q_neg_power(cplx z, double q, double tol = 1e-8);

/* (a;q)_n = prod_{i=0}^{n-1} (1 - a q^i), n >= 0.  Exact zero is returned
   when a = q^{-j} with 0 <= j <= n-1; without that snap the vanishing factor
   would be rounding noise amplified by the large neighbouring factors. */
cplx qpoch(cplx a, double q, long n, double tol = 1e-8);

/* (a;q)_inf, truncated once |a q^i| < 1e-17.  Exact zero for a in q^{-Z>=0}. */
cplx qpoch_inf(cplx a, double q, double tol = 1e-8);

// (a;q)_inf as a scaled product (safe for |a| far outside the unit disc)
ScaledProduct qpoch_inf_scaled(cplx a, double q, double tol = 1e-8);

/* prod_i (1 - n_k q^i) / prod_i (1 - d_k q^i) with factors interleaved so the
   ratio stays representable even when numerator and denominator separately
   overflow.  A vanishing denominator factor throws DegenerateParameterError. */
ScaledProduct qpoch_inf_ratio(const std::vector<cplx>& num,
                              const std::vector<cplx>& den,
                              double q, double tol = 1e-8);

/* Both sides of the shift identity
     (a q^n, q^{1-n}/a; q)_inf = (-a)^{-n} q^{-n(n-1)/2} (a, q/a; q)_inf,
   returned as (lhs, rhs) for cross-checking. */
std::pair<cplx, cplx> theta_shift(cplx a, double q, long n);

/* An {r+1}phi{r} basic hypergeometric series
     sum_j [ (a_1,...,a_{r+1}; q)_j / ((q, b_1,...,b_r; q)_j) ] z^j.
   upper.size() must be lower.size() + 1. */
struct SeriesSpec {
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    cplx z{0.0, 0.0};

    // index n of the smallest upper parameter equal to q^{-n}, if any
    std::optional<long> terminating_index(double q, double tol = 1e-8) const;
    // smallest m with some lower parameter equal to q^{-m}, if any
    std::optional<long> degenerate_lower_index(double q, double tol = 1e-8) const;
};

/* Direct summation inside the unit disc (or exact finite sum when the series
   terminates).  The tail estimate is |current term| / (1 - ratio estimate). */
cplx phi(const SeriesSpec& s, double q, const EvalOptions& opt = {});

/* One-valued analytic continuation of a non-terminating {k+1}phi{k} to
   C \ [1, infinity), through the expansion into k+1 series with argument
   q b_1...b_k / (z a_1...a_{k+1}).  Requires pairwise generic upper
   parameters (a_i/a_j not in q^Z); a_1phi0 continues through
   (az;q)_inf / (z;q)_inf instead.  Terminating input reduces to the exact
   finite sum for every z. */
cplx phi_continued(const SeriesSpec& s, double q, const EvalOptions& opt = {});

// phi for |z| < 1, phi_continued otherwise
cplx phi_auto(const SeriesSpec& s, double q, const EvalOptions& opt = {});

/* Very-well-poised 8W7 in the compressed notation
     8W7(a1; a4, a5, a6, a7, a8; q, z)
       = sum_j [(1 - a1 q^{2j})/(1 - a1)]
               [(a1, a4,..., a8; q)_j /
                ((q, q a1/a4,..., q a1/a8; q)_j)] z^j.  */
cplx w8w7(cplx a1, cplx a4, cplx a5, cplx a6, cplx a7, cplx a8,
          double q, cplx z, const EvalOptions& opt = {});

// the same sum assembled as a generic 8phi7 with the +-q sqrt(a1) pairs
cplx w8w7_as_phi(cplx a1, cplx a4, cplx a5, cplx a6, cplx a7, cplx a8,
                 double q, cplx z, const EvalOptions& opt = {});

/* Bilateral summation over n in Z of an arbitrary term generator, outward
   from n = 0 with independent adaptive tails in both directions. */
cplx bilateral_sum(const std::function<cplx(long)>& term,
                   const EvalOptions& opt = {});

/* Gauss-Legendre rule mapped to (0, pi); weights sum to pi. */
struct QuadratureRule {
    std::vector<double> theta;
    std::vector<double> weight;
    static QuadratureRule gauss_legendre(int n);
};

} // namespace qjacobi

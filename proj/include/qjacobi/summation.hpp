#pragma once

#include <vector>

#include "qjacobi/qseries.hpp"

namespace qjacobi {

/* Bilateral series
     sum_{n in Z} z^n {k+1}phi{k}(a_1,...,a_{k+1}; b_1,...,b_k; q, x q^n),
   absolutely convergent for max_i |a_i| < |z| < 1 when x stays off the
   positive real axis.  Terms with |x q^n| >= 1 are evaluated through the
   analytic continuation of the series, which additionally requires
   |q b_1...b_k| < |a_1...a_{k+1}| so the continued series converge. */
cplx bilateral_phi_sum(const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, cplx x, cplx z,
                       double q, const EvalOptions& opt = {});

/* Closed evaluation of the same series as a ratio of infinite q-shifted
   factorials:
       (a_1,...,a_{k+1}, b_1/z,...,b_k/z, q, xz, q/xz; q)_inf
     / (b_1,...,b_k, a_1/z,...,a_{k+1}/z, z, x, q/x; q)_inf.
   The k = 0 case is the classical bilateral 1psi1 evaluation. */
cplx bilateral_phi_product(const std::vector<cplx>& upper,
                           const std::vector<cplx>& lower, cplx x, cplx z,
                           double q, const EvalOptions& opt = {});

/* Parameters of the two-factor bilateral sum
     S = sum_{n in Z} z^n 2phi1(a,b; c; q, x q^n) 2phi1(d,e; f; q, y q^n),
   absolutely convergent for max(|ad|,|ae|,|bd|,|be|) < |z| < 1 with x and y
   off the positive real axis.  The closed evaluations additionally assume
   the balance constraints  a b d e = c f  and  f x = d e y. */
struct PairedParams {
    cplx a, b, c, x;
    cplx d, e, f, y;
    cplx z;

    // max(|ad|,|ae|,|bd|,|be|), the inner radius of the z-annulus
    double inner_radius() const;
    // how far the two balance constraints are from holding, scaled
    double balance_gap() const;
};

/* Solve the balance constraints for (f, y) given everything else:
   f = abde/c and y = abx/c, making the constraint residual exactly zero. */
PairedParams solve_balance(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                           cplx z);

// term-by-term evaluation of S
cplx paired_bilateral_sum(const PairedParams& pp, double q,
                          const EvalOptions& opt = {});

/* Closed evaluations of S.

   w87_symmetric   two very-well-poised series with argument q/z; makes the
                   factor-swap and a<->b, d<->e symmetries manifest; needs
                   q < |z| and z/abf, z/cde off q^{Z>=0}.
   w87_idem        two very-well-poised series with argument be/z; valid on
                   the whole annulus.
   w87_small_d     pair with series arguments d and be/z; needs |d| < 1.
   balanced_triple three balanced 4phi3 with argument q. */
enum class PairedClosedForm {
    w87_symmetric,
    w87_idem,
    w87_small_d,
    balanced_triple,
};

cplx paired_closed(const PairedParams& pp, double q, PairedClosedForm form,
                   const EvalOptions& opt = {});

/* The individual summands of a closed evaluation (two or three terms whose
   sum is the closed value).  sum|T_i| / |sum T_i| measures how much
   cancellation the evaluation absorbs; draws near a zero of S are spotted
   this way. */
std::vector<cplx> paired_closed_terms(const PairedParams& pp, double q,
                                      PairedClosedForm form,
                                      const EvalOptions& opt = {});

/* Relabelings that leave S unchanged (the last one also preserves the
   balance constraints, by a double Heine transformation of each term). */
PairedParams swap_factors(const PairedParams& pp);  // (a,b,c,x) <-> (d,e,f,y)
PairedParams swap_ab(const PairedParams& pp);
PairedParams swap_de(const PairedParams& pp);
// x <-> y together with (a,b,d,e) -> (c/a, c/b, f/e, f/d)
PairedParams swap_arguments(const PairedParams& pp);

/* Bilateral sum against a second factor whose deep terms are damped by
   vanishing leading coefficients:
     T = sum_{k in Z} z^k 2phi1(a,b; c; q, x q^k)
           [(q^{k+1};q)_inf / (d q^k;q)_inf] 2phi1(d q^k, e; q^{k+1}; q, y),
   absolutely convergent for max(|ya|,|yb|) < |z| < 1 and |y| < 1.  For
   k < 0 the bracketed factor times the series is summed from its first
   nonvanishing term, which makes it O(y^{-k}) instead of blowing up. */
cplx damped_bilateral_sum(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                          cplx y, cplx z, double q,
                          const EvalOptions& opt = {});

// the damped second factor on its own; k may be negative
cplx damped_factor(cplx d, cplx e, cplx y, long k, double q,
                   const EvalOptions& opt = {});

/* Closed evaluation of T as three 4phi3 with argument qcd/(xab); requires
   |qcd| < |xab|. */
cplx damped_bilateral_closed(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                             cplx y, cplx z, double q,
                             const EvalOptions& opt = {});

std::vector<cplx> damped_closed_terms(cplx a, cplx b, cplx c, cplx d, cplx e,
                                      cplx x, cplx y, cplx z, double q,
                                      const EvalOptions& opt = {});

/* S at the specialization e y = q^{1-l}, where the e-branch of the deep-term
   asymptotics vanishes identically and the annulus widens to
   max(|ad|,|bd|) < |z| < 1.  The second factor is evaluated through its
   rewriting with lower parameter q^{1-l+n}, whose series starts at term
   l - n when n < l.  pp.e must equal q^{1-l}/pp.y. */
cplx paired_sum_at_qpower(const PairedParams& pp, long l, double q,
                          const EvalOptions& opt = {});

// the rewritten second factor at index n
cplx qpower_second_factor(cplx d, cplx f, cplx y, long n, long l, double q,
                          const EvalOptions& opt = {});

/* Closed evaluation in the same specialization: three balanced 4phi3 with
   argument q. */
cplx paired_closed_at_qpower(const PairedParams& pp, long l, double q,
                             const EvalOptions& opt = {});

std::vector<cplx> paired_qpower_terms(const PairedParams& pp, long l, double q,
                                      const EvalOptions& opt = {});

/* |q * prod(upper) - prod(lower)| / |prod(lower)| for a series with argument
   q; zero exactly when the series is balanced. */
double balanced_defect(const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, double q);

}  // namespace qjacobi

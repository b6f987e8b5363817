#pragma once

#include <qjacobi/grid.hpp>
#include <qjacobi/qjacobi.hpp>

namespace qjacobi {

// (B f)(x) = (f(x) - f(x/q)) / x.  Lowering companion of the factorization
// of the second-order difference operator; sends eigenfunctions for (a, b)
// to eigenfunctions for (aq, b).
GridFunction backward_difference(const GridFunction& f);

// (A f)(x) = (1 + bx/aq) f(x) - ab (1 + x) f(qx), the adjoint partner of the
// backward difference between the weighted sequence spaces.  Together they
// factor the operator: -b L^{(a,b)} = aq A circ B and
// -b (L^{(aq,b)} + (1-q)(1-qa^2)) = aq^2 B circ A.
GridFunction darboux_companion(const GridFunction& f, const JacobiParams& p);

// (S f)(x) = [(-x;q)inf / (-bx/a;q)inf] f(bx/a); conjugates the difference
// operator for (a, b) into the one for (b, a) and maps eigenfunctions
// accordingly.  The result lives on the grid scaled by a/b.
GridFunction swap_conjugation(const GridFunction& f, double a, double b,
                              const EvalOptions& opt = {});

/* Fractional power of the inverse backward difference,
     (W_nu f)(x) = x^nu sum_{l>=0} f(x q^{-l}) q^{-l nu} (q^nu;q)_l / (q;q)_l.
   W_0 = id, W_{-1} = B, W_{-n} = B^n, and for positive integer n it is the
   n-fold iterated q-integral toward infinity.  W_nu W_mu = W_{nu+mu} and
   L^{(a q^{-nu}, b)} W_nu = W_nu L^{(a,b)}.

   For a windowed f the sum is finite.  Otherwise f.growth must be set with
   rate rho < q^nu, or NonConvergentError is thrown. */
GridFunction weyl_integral(const GridFunction& f, double nu,
                           const EvalOptions& opt = {});

/* Adjoint of the fractional integral between the weighted sequence spaces
   (up to the factor y^nu of the grid base),
     (A_nu f)(x) = [(-bx/a;q)inf / (-b x q^{-nu}/a;q)inf]
                   sum_{l>=0} f(x q^l) (ab)^l (q^nu, -x;q)_l / (q, -bx/a;q)_l.
   Raises the first parameter: L^{(a q^nu, b)} A_nu = A_nu L^{(a,b)}, and on
   eigenfunctions multiplies by (ab q^nu;q)inf / (ab;q)inf.

   The sum runs toward small grid points; for an unwindowed f the tail is cut
   against f.sup_bound, which must be set. */
GridFunction weyl_adjoint(const GridFunction& f, double nu, double a, double b,
                          const EvalOptions& opt = {});

// swap-conjugated variant raising the second parameter instead:
// L^{(a, b q^nu)} circ . = . circ L^{(a,b)}; result on the grid scaled by
// q^{-nu}.
GridFunction weyl_adjoint_swapped(const GridFunction& f, double nu, double a,
                                  double b, const EvalOptions& opt = {});

/* Two-parameter lowering transform, composed as
     S(a q^{-nu}, b q^{-mu}) circ W_mu circ S(b, a q^{-nu}) circ W_nu;
   intertwines L^{(a,b)} with L^{(a q^{-nu}, b q^{-mu})}.  The result lives
   on the grid scaled by q^mu.  Needs |q^{nu-mu} b/a| < 1. */
GridFunction abel_transform(const GridFunction& f, double nu, double mu,
                            double a, double b, const EvalOptions& opt = {});

/* The same operator written as a single sum against a terminating 3phi2
   kernel,
     (x^{mu+nu} q^{-mu^2} (b/a)^mu (-x;q)inf / (-x q^{-mu};q)inf)
     sum_{p>=0} f(x q^{-mu-p}) q^{-p nu} (q^nu;q)_p / (q;q)_p
       3phi2(q^{-p}, q^{-mu}, -q^{1+mu-nu} a/bx ;
             q^{1-p-nu}, -q^{mu+1}/x ; q, q^{1-mu} b/a).
   Truncation for unwindowed f uses f.growth together with the observed
   plateau of the kernel values, which approach a 2phi1 limit. */
GridFunction abel_transform_kernel(const GridFunction& f, double nu, double mu,
                                   double a, double b,
                                   const EvalOptions& opt = {});

/* Two-parameter raising transform, composed as
     S(a q^nu, b q^mu) circ A_mu^{(b, a q^nu)} circ S(b, a q^nu) circ A_nu;
   intertwines L^{(a,b)} with L^{(a q^nu, b q^mu)} and multiplies
   eigenfunctions by (ab q^{nu+mu};q)inf / (ab;q)inf.  Result on the grid
   scaled by q^{-mu}. */
GridFunction abel_adjoint(const GridFunction& f, double nu, double mu,
                          double a, double b, const EvalOptions& opt = {});

/* Single-sum form of the raising transform with the terminating 3phi2
   kernel,
     [(-b x q^mu/a;q)inf / (-b x q^{mu-nu}/a;q)inf]
     sum_{j>=0} f(x q^{mu+j}) (ab)^j (q^nu, -x q^mu;q)_j /
                (q, -b x q^mu/a;q)_j
       3phi2(q^{-j}, q^mu, -b x q^{mu-nu}/a ; q^{1-nu-j}, -x q^mu ; q, q). */
GridFunction abel_adjoint_kernel(const GridFunction& f, double nu, double mu,
                                 double a, double b,
                                 const EvalOptions& opt = {});

// eigenfunction grids with the decay metadata the operator sums need:
// the phi grid carries its small-x supremum (the series argument shrinks by
// q per rung, so the sup sits on the first rungs), the asymptotically free
// grid carries its |a sigma|-rate growth envelope toward large x
GridFunction phi_grid_bounded(const SpectralCoordinate& sc,
                              const JacobiParams& p, double q,
                              const EvalOptions& opt = {});
GridFunction Phi_grid_bounded(cplx sigma, const JacobiParams& p, double q,
                              const EvalOptions& opt = {});

}  // namespace qjacobi

#pragma once

#include <qjacobi/grid.hpp>
#include <qjacobi/qseries.hpp>

namespace qjacobi {

struct JacobiParams {
    double a{}, b{};
    double y{1.0};

    // standing hypotheses for the transform: a > b > 0, ab < 1, y > 0
    void validate() const;
};

enum class SpectralKind { continuous, discrete_a, discrete_by };

// A point of the spectrum, carried around as the pair (lambda, sigma) with
// lambda = (sigma + 1/sigma)/2.  The canonical branch has |sigma| >= 1,
// with Im(sigma) >= 0 on the unit circle.
struct SpectralCoordinate {
    cplx lambda{};
    cplx sigma{};
    SpectralKind kind{SpectralKind::continuous};

    static SpectralCoordinate from_sigma(cplx sigma,
                                         SpectralKind kind = SpectralKind::continuous);
    static SpectralCoordinate from_lambda(cplx lambda,
                                          SpectralKind kind = SpectralKind::continuous);
    static SpectralCoordinate unit_circle(double theta);
};

cplx lambda_of_sigma(cplx sigma);
// canonical branch: |sigma| >= 1, ties on the circle broken by Im >= 0
cplx sigma_of_lambda(cplx lambda);

// phi_lambda(x) = 2phi1(a sigma, a/sigma; ab; q, -bx/a); symmetric under
// sigma <-> 1/sigma, eigenfunction of L with eigenvalue -1-a^2+2a*lambda.
cplx phi_lambda(cplx x, const SpectralCoordinate& sc, const JacobiParams& p,
                double q, const EvalOptions& opt = {});

// The solution normalized at large grid points:
//   Phi_sigma(y q^k) = (a sigma)^{-k} 2phi1(a sigma, q sigma/b; q sigma^2; q, -q^{1-k}/y),
// so (a sigma)^k Phi_sigma(y q^k) -> 1 as k -> -infinity.
cplx phi_Phi(long k, cplx sigma, const JacobiParams& p, double q,
             const EvalOptions& opt = {});

// Phi_sigma off the integer grid: same series at y q^t for real exponent t,
// with the principal branch of (a sigma)^{-t}
cplx phi_Phi_at(double t, cplx sigma, const JacobiParams& p, double q,
                const EvalOptions& opt = {});

// Connection coefficient in
//   phi_lambda(y q^k) = c(sigma) Phi_sigma(y q^k) + c(1/sigma) Phi_{1/sigma}(y q^k);
// vanishes identically at the discrete spectrum (canonical sigma branch).
cplx c_function(cplx sigma, const JacobiParams& p, double q,
                const EvalOptions& opt = {});

// -1 - a^2 + 2 a lambda
cplx eigenvalue_L(double a, cplx lambda);

enum class OperatorVariant { L, calL };

// (L f)(x) = a^2 (1 + 1/x)(f(qx) - f(x)) + (1 + aq/bx)(f(x/q) - f(x)).
// calL = L/(2a) + (a + 1/a)/2 in its direct three-coefficient form; its
// eigenvalue on phi_lambda is lambda itself.
GridFunction apply_L(const GridFunction& f, const JacobiParams& p, double q,
                     OperatorVariant variant = OperatorVariant::L);

// Value of phi_lambda at the grid point y q^k, chosen by spectral kind: on
// the sigma = -q^{1-l}/(by) mass family the direct series cancels to far
// below its largest term, so there the one-term connection formula
// phi = c(1/sigma) Phi_{1/sigma} is used instead.
cplx phi_grid_value(long k, const SpectralCoordinate& sc,
                    const JacobiParams& p, double q,
                    const EvalOptions& opt = {});

GridFunction phi_on_grid(const SpectralCoordinate& sc, const JacobiParams& p,
                         double q, const EvalOptions& opt = {});
GridFunction Phi_on_grid(cplx sigma, const JacobiParams& p, double q,
                         const EvalOptions& opt = {});

}  // namespace qjacobi

#include <qjacobi/qjacobi.hpp>

#include <cmath>
#include <complex>

#include <qjacobi/errors.hpp>

namespace qjacobi {

namespace {

void check_positive(const JacobiParams& p)
{
    if (!(p.a > 0) || !(p.b > 0) || !(p.y > 0))
        throw InvalidParameterError("parameters a, b, y must be positive");
}

}  // namespace

void JacobiParams::validate() const
{
    check_positive(*this);
    if (!(a > b))
        throw InvalidParameterError("transform hypotheses need a > b");
    if (!(a * b < 1))
        throw InvalidParameterError("transform hypotheses need ab < 1");
}

cplx lambda_of_sigma(cplx sigma)
{
    return 0.5 * (sigma + 1.0 / sigma);
}

cplx sigma_of_lambda(cplx lambda)
{
    const cplx root = std::sqrt(lambda * lambda - 1.0);
    cplx s = lambda + root;
    cplx t = lambda - root;
    if (std::abs(t) > std::abs(s))
        std::swap(s, t);
    const double excess = std::abs(s) - 1.0;
    if (excess < 1e-12 && s.imag() < 0)
        s = t;  // on the circle the conjugate pair ties; take the upper half
    return s;
}

SpectralCoordinate SpectralCoordinate::from_sigma(cplx sigma, SpectralKind kind)
{
    return {lambda_of_sigma(sigma), sigma, kind};
}

SpectralCoordinate SpectralCoordinate::from_lambda(cplx lambda, SpectralKind kind)
{
    return {lambda, sigma_of_lambda(lambda), kind};
}

SpectralCoordinate SpectralCoordinate::unit_circle(double theta)
{
    const cplx s = std::polar(1.0, theta);
    return {cplx(std::cos(theta), 0.0), s, SpectralKind::continuous};
}

cplx eigenvalue_L(double a, cplx lambda)
{
    return -1.0 - a * a + 2.0 * a * lambda;
}

cplx phi_lambda(cplx x, const SpectralCoordinate& sc, const JacobiParams& p,
                double q, const EvalOptions& opt)
{
    check_positive(p);
    SeriesSpec s{{p.a * sc.sigma, p.a / sc.sigma},
                 {cplx(p.a * p.b)},
                 -p.b * x / p.a};
    return phi_auto(s, q, opt);
}

cplx phi_Phi(long k, cplx sigma, const JacobiParams& p, double q,
             const EvalOptions& opt)
{
    check_positive(p);
    if (q_int_exponent(sigma * sigma, q, opt.q_membership_tol))
        throw DegenerateParameterError(
            "sigma^2 in q^Z: the two asymptotic solutions coincide");
    SeriesSpec s{{p.a * sigma, q * sigma / p.b},
                 {q * sigma * sigma},
                 cplx(-std::pow(q, 1.0 - (double)k) / p.y)};
    return pow_int(p.a * sigma, -k) * phi_auto(s, q, opt);
}

cplx phi_Phi_at(double t, cplx sigma, const JacobiParams& p, double q,
                const EvalOptions& opt)
{
    check_positive(p);
    if (q_int_exponent(sigma * sigma, q, opt.q_membership_tol))
        throw DegenerateParameterError(
            "sigma^2 in q^Z: the two asymptotic solutions coincide");
    SeriesSpec s{{p.a * sigma, q * sigma / p.b},
                 {q * sigma * sigma},
                 cplx(-std::pow(q, 1.0 - t) / p.y)};
    return std::exp(-t * std::log(p.a * sigma)) * phi_auto(s, q, opt);
}

cplx c_function(cplx sigma, const JacobiParams& p, double q,
                const EvalOptions& opt)
{
    check_positive(p);
    const double tol = opt.q_membership_tol;
    if (q_int_exponent(sigma * sigma, q, tol))
        throw DegenerateParameterError("c-function needs sigma^2 outside q^Z");
    const double by = p.b * p.y;
    return qpoch_inf_ratio({p.b / sigma, p.a / sigma, -by * sigma,
                            -q / (by * sigma)},
                           {1.0 / (sigma * sigma), cplx(p.a * p.b),
                            cplx(-by / p.a), cplx(-q * p.a / by)},
                           q, tol)
        .value();
}

GridFunction apply_L(const GridFunction& f, const JacobiParams& p, double q,
                     OperatorVariant variant)
{
    check_positive(p);
    const double a = p.a, b = p.b;
    std::optional<std::pair<long, long>> window;
    if (f.has_window())
        window = std::make_pair(f.window_lo() - 1, f.window_hi() + 1);
    return GridFunction(
        f.base(), f.qbase(),
        [f, a, b, q, variant](long k) -> cplx {
            const double x = f.point(k);
            if (variant == OperatorVariant::L)
                return a * a * (1.0 + 1.0 / x) * (f(k + 1) - f(k)) +
                       (1.0 + a * q / (b * x)) * (f(k - 1) - f(k));
            return 0.5 * a * (1.0 + 1.0 / x) * f(k + 1) -
                   (0.5 * a / x + 0.5 * q / (b * x)) * f(k) +
                   (0.5 / a) * (1.0 + a * q / (b * x)) * f(k - 1);
        },
        window);
}

cplx phi_grid_value(long k, const SpectralCoordinate& sc,
                    const JacobiParams& p, double q, const EvalOptions& opt)
{
    if (sc.kind == SpectralKind::discrete_by) {
        const cplx tau = 1.0 / sc.sigma;
        return c_function(tau, p, q, opt) * phi_Phi(k, tau, p, q, opt);
    }
    return phi_lambda(p.y * std::pow(q, (double)k), sc, p, q, opt);
}

GridFunction phi_on_grid(const SpectralCoordinate& sc, const JacobiParams& p,
                         double q, const EvalOptions& opt)
{
    if (sc.kind == SpectralKind::discrete_by) {
        const cplx tau = 1.0 / sc.sigma;
        const cplx c = c_function(tau, p, q, opt);
        return GridFunction(p.y, q, [c, tau, p, q, opt](long k) {
            return c * phi_Phi(k, tau, p, q, opt);
        });
    }
    return GridFunction(p.y, q, [sc, p, q, opt](long k) {
        return phi_lambda(p.y * std::pow(q, (double)k), sc, p, q, opt);
    });
}

GridFunction Phi_on_grid(cplx sigma, const JacobiParams& p, double q,
                         const EvalOptions& opt)
{
    return GridFunction(p.y, q, [sigma, p, q, opt](long k) {
        return phi_Phi(k, sigma, p, q, opt);
    });
}

}  // namespace qjacobi

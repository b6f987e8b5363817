#include <qjacobi/intertwiners.hpp>

#include <algorithm>
#include <cmath>

#include <qjacobi/errors.hpp>

namespace qjacobi {

namespace {

// stand-in for an unbounded window edge; q^kFar underflows long before this
constexpr long kFar = 1L << 40;

void require_q(double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw InvalidParameterError("q must lie in (0,1)");
}

bool nonpositive_integer(double nu)
{
    return nu <= 0.0 && nu == std::floor(nu);
}

// bound for |(q^nu;q)_l / (q;q)_l| uniform in l
double coeff_bound(double nu, double q)
{
    double num = 1.0, t = std::pow(q, nu);
    for (int j = 0; j < 400 && t > 1e-17; ++j, t *= q)
        num *= 1.0 + t;
    double den = 1.0, s = q;
    for (int j = 0; j < 400 && s > 1e-17; ++j, s *= q)
        den *= 1.0 - s;
    return num / den;
}

struct Upward {
    // f(k - l) summed with weights c_l; window makes it finite, otherwise
    // the growth envelope cuts the tail once the index has left [0, inf)
    const GridFunction& f;
    double nu, q;
    const EvalOptions& opt;
    double cb;

    Upward(const GridFunction& f_, double nu_, double q_,
           const EvalOptions& opt_)
        : f(f_), nu(nu_), q(q_), opt(opt_), cb(coeff_bound(nu_, q_))
    {
        if (!f.has_window() && !nonpositive_integer(nu) && !f.growth)
            throw NonConvergentError(
                "upward operator sum needs a window or a growth envelope");
        if (!f.has_window() && !nonpositive_integer(nu) &&
            f.growth->rho * std::pow(q, -nu) >= 0.95)
            throw NonConvergentError(
                "growth envelope too steep for this fractional order");
    }

    // extra(l) multiplies the basic weight q^{-l nu} (q^nu;q)_l/(q;q)_l;
    // extra_bound is a running bound for |extra| used in the tail cut
    template <class Extra>
    cplx sum(long k, Extra extra, double& extra_bound) const
    {
        cplx acc{0.0, 0.0};
        double coef_abs_peak = 0.0;
        cplx coef{1.0, 0.0};
        const double qmn = std::pow(q, -nu);
        long lmax = kFar;
        if (f.has_window())
            lmax = k - f.window_lo();
        else if (nonpositive_integer(nu))
            lmax = (long)(-nu);
        for (long l = 0; l <= lmax; ++l) {
            if (l > 0) {
                const double ql = std::pow(q, (double)(l - 1));
                coef *= qmn * (1.0 - std::pow(q, nu) * ql) / (1.0 - q * ql);
            }
            const cplx fv = f(k - l);
            if (fv != cplx{0.0, 0.0}) acc += coef * fv * extra(l);
            coef_abs_peak = std::max(coef_abs_peak, std::abs(coef));
            if (!f.has_window() && lmax == kFar && l >= k && l >= 4) {
                // index k - l has passed 0; envelope series bounds the rest
                double tail = 0.0;
                if (f.growth->c > 0.0) {
                    const double r = f.growth->rho * qmn;
                    tail = f.growth->c * cb * extra_bound *
                           std::pow(r, (double)(l + 1)) *
                           std::pow(f.growth->rho, (double)(-k)) /
                           std::max(1e-300, 1.0 - r);
                }
                const double scale =
                    std::max(std::abs(acc), 1e-3 * coef_abs_peak);
                if (tail <= opt.rel_tol * std::max(scale, 1e-300)) break;
                if (l > opt.max_terms)
                    throw NonConvergentError(
                        "upward operator sum failed to settle");
            }
        }
        return acc;
    }
};

}  // namespace

GridFunction backward_difference(const GridFunction& f)
{
    std::optional<std::pair<long, long>> window;
    if (f.has_window())
        window = std::make_pair(f.window_lo(), f.window_hi() + 1);
    GridFunction out(
        f.base(), f.qbase(),
        [f](long k) { return (f(k) - f(k - 1)) / f.point(k); }, window);
    if (f.growth)
        out.growth = GridFunction::Envelope{
            f.growth->c * (1.0 + f.growth->rho) / f.base(),
            f.growth->rho * f.qbase()};
    return out;
}

GridFunction darboux_companion(const GridFunction& f, const JacobiParams& p)
{
    const double q = f.qbase(), a = p.a, b = p.b;
    require_q(q);
    std::optional<std::pair<long, long>> window;
    if (f.has_window())
        window = std::make_pair(f.window_lo() - 1, f.window_hi());
    return GridFunction(
        f.base(), q,
        [f, a, b, q](long k) {
            const double x = f.point(k);
            return (1.0 + b * x / (a * q)) * f(k) -
                   a * b * (1.0 + x) * f(k + 1);
        },
        window);
}

GridFunction swap_conjugation(const GridFunction& f, double a, double b,
                              const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    if (!(a > 0.0 && b > 0.0))
        throw InvalidParameterError("conjugation needs positive parameters");
    const double x0 = f.base() * a / b;
    std::optional<std::pair<long, long>> window;
    if (f.has_window())
        window = std::make_pair(f.window_lo(), f.window_hi());
    const double tol = opt.q_membership_tol;
    return GridFunction(
        x0, q,
        [f, x0, a, b, q, tol](long k) {
            const cplx fv = f(k);
            if (fv == cplx{0.0, 0.0}) return fv;
            const double x = x0 * std::pow(q, (double)k);
            return qpoch_inf_ratio({cplx(-x)}, {cplx(-b * x / a)}, q, tol)
                       .value() *
                   fv;
        },
        window);
}

GridFunction weyl_integral(const GridFunction& f, double nu,
                           const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    std::optional<std::pair<long, long>> window;
    if (f.has_window()) window = std::make_pair(f.window_lo(), kFar);
    GridFunction out(
        f.base(), q,
        [f, nu, q, opt](long k) {
            Upward up(f, nu, q, opt);
            double one = 1.0;
            const cplx s = up.sum(k, [](long) { return cplx{1.0, 0.0}; }, one);
            return std::pow(f.point(k), nu) * s;
        },
        window);
    if (f.has_window() && f.window_lo() >= 1)
        out.growth = GridFunction::Envelope{0.0, 0.0};
    else if (f.growth) {
        const double r = f.growth->rho * std::pow(q, -nu);
        if (r < 1.0)
            out.growth = GridFunction::Envelope{
                f.growth->c * coeff_bound(nu, q) *
                    std::pow(f.base(), nu) / (1.0 - r),
                r};
    }
    return out;
}

GridFunction weyl_adjoint(const GridFunction& f, double nu, double a, double b,
                          const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    if (!(a > 0.0 && b > 0.0 && a * b < 1.0))
        throw InvalidParameterError(
            "downward operator sum needs positive parameters with ab < 1");
    if (!f.has_window() && !f.sup_bound)
        throw NonConvergentError(
            "downward operator sum needs a window or a small-x bound");
    std::optional<std::pair<long, long>> window;
    if (f.has_window()) window = std::make_pair(-kFar, f.window_hi());
    const double tol = opt.q_membership_tol;
    return GridFunction(
        f.base(), q,
        [f, nu, a, b, q, opt, tol](long k) {
            const double x = f.point(k);
            const double qnu = std::pow(q, nu);
            cplx acc{0.0, 0.0};
            double coef = 1.0, coef_peak = 1.0;
            const long lmax = f.has_window() ? f.window_hi() - k : kFar;
            for (long l = 0; l <= lmax; ++l) {
                if (l > 0) {
                    const double ql = std::pow(q, (double)(l - 1));
                    coef *= a * b * (1.0 - qnu * ql) * (1.0 + x * ql) /
                            ((1.0 - q * ql) * (1.0 + b * x * ql / a));
                }
                acc += coef * f(k + l);
                coef_peak = std::max(coef_peak, std::abs(coef));
                if (!f.has_window() && k + l >= 0 && l >= 4) {
                    const double ql = std::pow(q, (double)l);
                    const double rb = a * b * (1.0 + qnu * ql) *
                                      (1.0 + x * ql) / (1.0 - q * ql);
                    const double scale =
                        std::max(std::abs(acc), 1e-3 * coef_peak);
                    if (rb < 1.0 &&
                        *f.sup_bound * std::abs(coef) * rb / (1.0 - rb) <=
                            opt.rel_tol * std::max(scale, 1e-300))
                        break;
                    if (l > opt.max_terms)
                        throw NonConvergentError(
                            "downward operator sum failed to settle");
                }
            }
            return qpoch_inf_ratio({cplx(-b * x / a)},
                                   {cplx(-b * x / (a * qnu))}, q, tol)
                       .value() *
                   acc;
        },
        window);
}

GridFunction weyl_adjoint_swapped(const GridFunction& f, double nu, double a,
                                  double b, const EvalOptions& opt)
{
    const double q = f.qbase();
    GridFunction g = swap_conjugation(f, b, a, opt);
    g.sup_bound = f.sup_bound;  // the prefactor tends to 1 toward small x
    GridFunction h = weyl_adjoint(g, nu, b, a, opt);
    return swap_conjugation(h, a, b * std::pow(q, nu), opt);
}

GridFunction abel_transform(const GridFunction& f, double nu, double mu,
                            double a, double b, const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    if (!(std::pow(q, nu - mu) * b / a < 1.0))
        throw InvalidParameterError(
            "lowering transform needs q^{nu-mu} b/a < 1");
    if (!f.has_window())
        throw NonConvergentError(
            "composed lowering transform needs a windowed input; the kernel "
            "form handles envelope-bounded functions");
    GridFunction g1 = weyl_integral(f, nu, opt);
    GridFunction g2 = swap_conjugation(g1, b, a * std::pow(q, -nu), opt);
    GridFunction g3 = weyl_integral(g2, mu, opt);
    return swap_conjugation(g3, a * std::pow(q, -nu), b * std::pow(q, -mu),
                            opt);
}

GridFunction abel_transform_kernel(const GridFunction& f, double nu, double mu,
                                   double a, double b, const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    if (!(std::pow(q, nu - mu) * b / a < 1.0))
        throw InvalidParameterError(
            "lowering transform needs q^{nu-mu} b/a < 1");
    const double x0 = f.base() * std::pow(q, mu);
    std::optional<std::pair<long, long>> window;
    if (f.has_window()) window = std::make_pair(f.window_lo(), kFar);
    GridFunction out(
        x0, q,
        [f, nu, mu, a, b, q, opt](long k) {
            const double x = f.base() * std::pow(q, mu + (double)k);
            Upward up(f, nu, q, opt);
            double kb = 1.0;
            const cplx s = up.sum(
                k,
                [&](long p) {
                    SeriesSpec sp{{cplx(std::pow(q, (double)-p)),
                                   cplx(std::pow(q, -mu)),
                                   cplx(-std::pow(q, 1.0 + mu - nu) * a /
                                        (b * x))},
                                  {cplx(std::pow(q, 1.0 - (double)p - nu)),
                                   cplx(-std::pow(q, mu + 1.0) / x)},
                                  cplx(std::pow(q, 1.0 - mu) * b / a)};
                    const cplx v = phi(sp, q, opt);
                    kb = std::max(kb, 2.0 * std::abs(v));
                    return v;
                },
                kb);
            return qpoch_inf_ratio({cplx(-x)}, {cplx(-x * std::pow(q, -mu))},
                                   q, opt.q_membership_tol)
                       .value() *
                   std::pow(q, -mu * mu) * std::pow(b / a, mu) *
                   std::pow(x, mu + nu) * s;
        },
        window);
    return out;
}

GridFunction abel_adjoint(const GridFunction& f, double nu, double mu,
                          double a, double b, const EvalOptions& opt)
{
    const double q = f.qbase();
    GridFunction g1 = weyl_adjoint(f, nu, a, b, opt);
    GridFunction g2 = swap_conjugation(g1, b, a * std::pow(q, nu), opt);
    GridFunction g3 = weyl_adjoint(g2, mu, b, a * std::pow(q, nu), opt);
    return swap_conjugation(g3, a * std::pow(q, nu), b * std::pow(q, mu),
                            opt);
}

GridFunction abel_adjoint_kernel(const GridFunction& f, double nu, double mu,
                                 double a, double b, const EvalOptions& opt)
{
    const double q = f.qbase();
    require_q(q);
    if (!(a > 0.0 && b > 0.0 && a * b < 1.0))
        throw InvalidParameterError(
            "raising transform needs positive parameters with ab < 1");
    if (!f.has_window() && !f.sup_bound)
        throw NonConvergentError(
            "raising transform needs a window or a small-x bound");
    const double x0 = f.base() * std::pow(q, -mu);
    std::optional<std::pair<long, long>> window;
    if (f.has_window()) window = std::make_pair(-kFar, f.window_hi());
    return GridFunction(
        x0, q,
        [f, nu, mu, a, b, q, opt](long k) {
            const double x = f.base() * std::pow(q, (double)k - mu);
            const double qnu = std::pow(q, nu), qmu = std::pow(q, mu);
            cplx acc{0.0, 0.0};
            double coef = 1.0, coef_peak = 1.0, kb = 1.0;
            const long jmax = f.has_window() ? f.window_hi() - k : kFar;
            for (long j = 0; j <= jmax; ++j) {
                if (j > 0) {
                    const double qj = std::pow(q, (double)(j - 1));
                    coef *= a * b * (1.0 - qnu * qj) * (1.0 + x * qmu * qj) /
                            ((1.0 - q * qj) * (1.0 + b * x * qmu * qj / a));
                }
                const cplx fv = f(k + j);
                if (fv != cplx{0.0, 0.0}) {
                    SeriesSpec sp{{cplx(std::pow(q, (double)-j)), cplx(qmu),
                                   cplx(-b * x * qmu / (a * qnu))},
                                  {cplx(std::pow(q, 1.0 - nu - (double)j)),
                                   cplx(-x * qmu)},
                                  cplx(q)};
                    const cplx v = phi(sp, q, opt);
                    kb = std::max(kb, 2.0 * std::abs(v));
                    acc += coef * fv * v;
                }
                coef_peak = std::max(coef_peak, std::abs(coef));
                if (!f.has_window() && k + j >= 0 && j >= 4) {
                    const double qj = std::pow(q, (double)j);
                    const double rb = a * b * (1.0 + qnu * qj) *
                                      (1.0 + x * qmu * qj) / (1.0 - q * qj);
                    const double scale =
                        std::max(std::abs(acc), 1e-3 * coef_peak);
                    if (rb < 1.0 && *f.sup_bound * kb * std::abs(coef) * rb /
                                            (1.0 - rb) <=
                                        opt.rel_tol * std::max(scale, 1e-300))
                        break;
                    if (j > opt.max_terms)
                        throw NonConvergentError(
                            "raising transform failed to settle");
                }
            }
            return qpoch_inf_ratio({cplx(-b * x * qmu / a)},
                                   {cplx(-b * x * qmu / (a * qnu))}, q,
                                   opt.q_membership_tol)
                       .value() *
                   acc;
        },
        window);
}

GridFunction phi_grid_bounded(const SpectralCoordinate& sc,
                              const JacobiParams& p, double q,
                              const EvalOptions& opt)
{
    GridFunction f = phi_on_grid(sc, p, q, opt);
    double sup = 0.0;
    for (long k = 0; k <= 24; ++k) sup = std::max(sup, std::abs(f(k)));
    f.sup_bound = 1.05 * sup;
    return f;
}

GridFunction Phi_grid_bounded(cplx sigma, const JacobiParams& p, double q,
                              const EvalOptions& opt)
{
    GridFunction f = Phi_on_grid(sigma, p, q, opt);
    const double rho = std::abs(p.a * sigma);
    double c = 0.0;
    for (long l = 0; l <= 20; ++l)
        c = std::max(c, std::abs(f(-l)) / std::pow(rho, (double)l));
    f.growth = GridFunction::Envelope{1.25 * c, rho};
    return f;
}

}  // namespace qjacobi

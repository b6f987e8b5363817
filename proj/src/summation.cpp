#include "qjacobi/summation.hpp"

#include <algorithm>
#include <cmath>

namespace qjacobi {

namespace {

void require_q(double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw InvalidParameterError("q must lie in (0,1)");
}

void require_offaxis(cplx x, const char* what)
{
    if (x.imag() == 0.0 && x.real() > 0.0)
        throw InvalidParameterError(std::string(what) +
                                    " must stay off the positive real axis");
}

double qpow(double q, long n) { return std::pow(q, (double)n); }

cplx phi2(cplx u1, cplx u2, cplx l1, cplx z, double q, const EvalOptions& opt)
{
    SeriesSpec s;
    s.upper = {u1, u2};
    s.lower = {l1};
    s.z = z;
    return phi_auto(s, q, opt);
}

cplx phi4(cplx u1, cplx u2, cplx u3, cplx u4, cplx l1, cplx l2, cplx l3,
          cplx z, double q, const EvalOptions& opt)
{
    SeriesSpec s;
    s.upper = {u1, u2, u3, u4};
    s.lower = {l1, l2, l3};
    s.z = z;
    return phi_auto(s, q, opt);
}

} // namespace

cplx bilateral_phi_sum(const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, cplx x, cplx z,
                       double q, const EvalOptions& opt)
{
    require_q(q);
    if (upper.size() != lower.size() + 1)
        throw InvalidParameterError("need one more upper than lower parameter");
    require_offaxis(x, "series argument");
    double amax = 0.0;
    for (cplx a : upper) amax = std::max(amax, std::abs(a));
    if (!(amax < std::abs(z) && std::abs(z) < 1.0))
        throw NonConvergentError("z outside the convergence annulus");

    return bilateral_sum(
        [&](long n) {
            SeriesSpec s;
            s.upper = upper;
            s.lower = lower;
            s.z = x * qpow(q, n);
            return pow_int(z, n) * phi_auto(s, q, opt);
        },
        opt);
}

cplx bilateral_phi_product(const std::vector<cplx>& upper,
                           const std::vector<cplx>& lower, cplx x, cplx z,
                           double q, const EvalOptions& opt)
{
    require_q(q);
    if (upper.size() != lower.size() + 1)
        throw InvalidParameterError("need one more upper than lower parameter");
    std::vector<cplx> num, den;
    for (cplx a : upper) num.push_back(a);
    for (cplx b : lower) num.push_back(b / z);
    num.push_back(cplx(q));
    num.push_back(x * z);
    num.push_back(q / (x * z));
    for (cplx b : lower) den.push_back(b);
    for (cplx a : upper) den.push_back(a / z);
    den.push_back(z);
    den.push_back(x);
    den.push_back(q / x);
    return qpoch_inf_ratio(num, den, q, opt.q_membership_tol).value();
}

double PairedParams::inner_radius() const
{
    return std::max(std::max(std::abs(a * d), std::abs(a * e)),
                    std::max(std::abs(b * d), std::abs(b * e)));
}

double PairedParams::balance_gap() const
{
    double g1 = std::abs(a * b * d * e - c * f) / std::abs(c * f);
    double g2 = std::abs(f * x - d * e * y) / std::abs(f * x);
    return std::max(g1, g2);
}

PairedParams solve_balance(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                           cplx z)
{
    PairedParams pp;
    pp.a = a;
    pp.b = b;
    pp.c = c;
    pp.x = x;
    pp.d = d;
    pp.e = e;
    pp.f = a * b * d * e / c;
    pp.y = a * b * x / c;
    pp.z = z;
    return pp;
}

cplx paired_bilateral_sum(const PairedParams& pp, double q,
                          const EvalOptions& opt)
{
    require_q(q);
    require_offaxis(pp.x, "first argument");
    require_offaxis(pp.y, "second argument");
    if (!(pp.inner_radius() < std::abs(pp.z) && std::abs(pp.z) < 1.0))
        throw NonConvergentError("z outside the convergence annulus");

    return bilateral_sum(
        [&](long n) {
            const double qn = qpow(q, n);
            return pow_int(pp.z, n) *
                   phi2(pp.a, pp.b, pp.c, pp.x * qn, q, opt) *
                   phi2(pp.d, pp.e, pp.f, pp.y * qn, q, opt);
        },
        opt);
}

PairedParams swap_factors(const PairedParams& pp)
{
    PairedParams r = pp;
    std::swap(r.a, r.d);
    std::swap(r.b, r.e);
    std::swap(r.c, r.f);
    std::swap(r.x, r.y);
    return r;
}

PairedParams swap_ab(const PairedParams& pp)
{
    PairedParams r = pp;
    std::swap(r.a, r.b);
    return r;
}

PairedParams swap_de(const PairedParams& pp)
{
    PairedParams r = pp;
    std::swap(r.d, r.e);
    return r;
}

PairedParams swap_arguments(const PairedParams& pp)
{
    PairedParams r = pp;
    r.a = pp.c / pp.a;
    r.b = pp.c / pp.b;
    r.d = pp.f / pp.e;
    r.e = pp.f / pp.d;
    r.x = pp.y;
    r.y = pp.x;
    return r;
}

namespace {

/* One of the two terms of the w87_idem form; the other is obtained by the
   factor swap. */
cplx idem_half(const PairedParams& p, double q, const EvalOptions& opt)
{
    const cplx a = p.a, b = p.b, c = p.c, x = p.x;
    const cplx d = p.d, e = p.e, f = p.f, y = p.y, z = p.z;
    (void)x;
    ScaledProduct pre = qpoch_inf_ratio(
        {e, c / a, c / b, d, cplx(q), y * z, q / (y * z), a * b * d / z,
         a * f / z, q * f / (e * z), a * q / z},
        {f, c, c / (a * b), y, q / y, z, q / z, a * e / z, b * d / z,
         q * a * f / (z * e), a * d / z},
        q, opt.q_membership_tol);
    cplx w = w8w7(a * f / (z * e), a * q / c, q / e, a, f / e, a * d / z, q,
                  b * e / z, opt);
    pre.mul(w);
    return pre.value();
}

/* One of the three terms of the balanced_triple form built on the (a, ...)
   parameter slot; the b-term is the same with a and b swapped. */
cplx triple_slot(const PairedParams& p, double q, const EvalOptions& opt)
{
    const cplx a = p.a, b = p.b, c = p.c, x = p.x;
    const cplx d = p.d, e = p.e, f = p.f, y = p.y, z = p.z;
    ScaledProduct pre = qpoch_inf_ratio(
        {cplx(q), d, b, c / a, a * f / z, e, a * x, q / (a * x), y * z / a,
         q * a / (y * z)},
        {c, f, b / a, z / a, a * d / z, a * e / z, x, q / x, y, q / y},
        q, opt.q_membership_tol);
    cplx w = phi4(a, q * a / c, a * d / z, a * e / z, q * a / b, q * a / z,
                  a * f / z, cplx(q), q, opt);
    pre.mul(w);
    return pre.value();
}

} // namespace

std::vector<cplx> paired_closed_terms(const PairedParams& pp, double q,
                                      PairedClosedForm form,
                                      const EvalOptions& opt)
{
    require_q(q);
    if (pp.balance_gap() > 1e-10)
        throw InvalidParameterError("balance constraints are not satisfied");
    const cplx a = pp.a, b = pp.b, c = pp.c, x = pp.x;
    const cplx d = pp.d, e = pp.e, f = pp.f, y = pp.y, z = pp.z;

    switch (form) {
    case PairedClosedForm::w87_symmetric: {
        if (!(q < std::abs(z)))
            throw NonConvergentError("this form needs q < |z|");
        ScaledProduct p1 = qpoch_inf_ratio(
            {e, d, c / a, c / b, a * b * d / z, a * b * e / z, a * f / z,
             b * f / z, cplx(q), y * z, q / (y * z)},
            {c, f, c / (a * b), a * e / z, b * e / z, a * d / z, b * d / z,
             a * b * f / z, z, y, q / y},
            q, opt.q_membership_tol);
        p1.mul(w8w7(a * b * f / (q * z), a, b, f / e, f / d, c * f / (q * z),
                    q, q / z, opt));
        ScaledProduct p2 = qpoch_inf_ratio(
            {a, b, f / d, f / e, a * d * e / z, b * d * e / z, c * d / z,
             c * e / z, cplx(q), x * z, q / (x * z)},
            {c, f, f / (d * e), a * e / z, b * e / z, a * d / z, b * d / z,
             c * d * e / z, z, x, q / x},
            q, opt.q_membership_tol);
        p2.mul(w8w7(c * d * e / (q * z), d, e, c / a, c / b, c * f / (q * z),
                    q, q / z, opt));
        return {p1.value(), p2.value()};
    }
    case PairedClosedForm::w87_idem:
        return {idem_half(pp, q, opt), idem_half(swap_factors(pp), q, opt)};
    case PairedClosedForm::w87_small_d: {
        if (!(std::abs(d) < 1.0))
            throw NonConvergentError("this form needs |d| < 1");
        ScaledProduct p1 = qpoch_inf_ratio(
            {cplx(q), d, e, a * b * d / z, f / z, a * d * q / f,
             b * d * q / f, y * z, q / (y * z)},
            {f, z, a * d / z, b * d / z, e / z, q * d / f, q * c / e, y,
             q / y},
            q, opt.q_membership_tol);
        p1.mul(w8w7(a * b * d / f, a, b, q / e, c / z, q * z / f, q, d, opt));
        ScaledProduct p2 = qpoch_inf_ratio(
            {cplx(q), a, b, f / e, q * d * e / f, q * d / z, c * d / z,
             a * d * e / z, c * q / (b * z), e * y, q / (e * y), x * z / e,
             q * e / (x * z)},
            {c, f, a * d / z, b * d / z, a * e / z, q * d / f,
             c * d * q / (b * z), y, q / y, x, q / x, z / e, q * e / z},
            q, opt.q_membership_tol);
        p2.mul(w8w7(c * d / (b * z), d, d * q / f, q / b, c / b, a * d / z, q,
                    b * e / z, opt));
        return {p1.value(), p2.value()};
    }
    case PairedClosedForm::balanced_triple: {
        ScaledProduct p0 = qpoch_inf_ratio(
            {cplx(q), a, b, c / z, x * z, q / (x * z)},
            {c, z, a / z, b / z, x, q / x}, q, opt.q_membership_tol);
        p0.mul(phi4(d, e, z, q * z / c, f, q * z / b, q * z / a, cplx(q), q,
                    opt));
        return {p0.value(), triple_slot(pp, q, opt),
                triple_slot(swap_ab(pp), q, opt)};
    }
    }
    throw InvalidParameterError("unknown closed form");
}

cplx paired_closed(const PairedParams& pp, double q, PairedClosedForm form,
                   const EvalOptions& opt)
{
    cplx s{0.0, 0.0};
    for (cplx t : paired_closed_terms(pp, q, form, opt)) s += t;
    return s;
}

cplx damped_factor(cplx d, cplx e, cplx y, long k, double q,
                   const EvalOptions& opt)
{
    require_q(q);
    if (k >= 0) {
        ScaledProduct pre = qpoch_inf_ratio({cplx(qpow(q, k + 1))},
                                            {d * qpow(q, k)}, q,
                                            opt.q_membership_tol);
        pre.mul(phi2(d * qpow(q, k), e, cplx(qpow(q, k + 1)), y, q, opt));
        return pre.value();
    }
    // summed from its first nonvanishing term, index -k
    ScaledProduct pre = qpoch_inf_ratio({cplx(q)}, {d}, q,
                                        opt.q_membership_tol);
    pre.mul(qpoch(e, q, -k, opt.q_membership_tol));
    pre.div(qpoch(cplx(q), q, -k));
    pre.mul(pow_int(y, -k));
    pre.mul(phi2(d, e * qpow(q, -k), cplx(qpow(q, 1 - k)), y, q, opt));
    return pre.value();
}

cplx damped_bilateral_sum(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                          cplx y, cplx z, double q, const EvalOptions& opt)
{
    require_q(q);
    require_offaxis(x, "first argument");
    const double inner =
        std::max(std::abs(y * a), std::abs(y * b));
    if (!(inner < std::abs(z) && std::abs(z) < 1.0 && std::abs(y) < 1.0))
        throw NonConvergentError("outside the convergence region");

    return bilateral_sum(
        [&](long k) {
            return pow_int(z, k) * phi2(a, b, c, x * qpow(q, k), q, opt) *
                   damped_factor(d, e, y, k, q, opt);
        },
        opt);
}

namespace {

/* The (a, ...) slot of the three-term closed evaluation of the damped sum;
   the b-term swaps a and b, the z-term has its own shape. */
cplx damped_slot(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x, cplx y,
                 cplx z, cplx arg, double q, const EvalOptions& opt)
{
    ScaledProduct pre = qpoch_inf_ratio(
        {cplx(q), b, c / a, d * z / a, a * x, q / (a * x), e * y * a / z},
        {d, c, b / a, z / a, x, q / x, y * a / z}, q, opt.q_membership_tol);
    pre.mul(phi4(a, a * q / c, a * q / (d * z), y * a / z, a * q / b,
                 a * q / z, e * y * a / z, arg, q, opt));
    return pre.value();
}

} // namespace

std::vector<cplx> damped_closed_terms(cplx a, cplx b, cplx c, cplx d, cplx e,
                                      cplx x, cplx y, cplx z, double q,
                                      const EvalOptions& opt)
{
    require_q(q);
    const cplx arg = q * c * d / (x * a * b);
    if (!(std::abs(arg) < 1.0))
        throw NonConvergentError("needs |qcd| < |xab|");
    ScaledProduct pz = qpoch_inf_ratio(
        {cplx(q), a, b, c / z, z * x, q / (z * x), e * y},
        {z, c, a / z, b / z, x, q / x, y}, q, opt.q_membership_tol);
    pz.mul(phi4(z, z * q / c, q / d, y, z * q / a, z * q / b, e * y, arg, q,
                opt));
    return {damped_slot(a, b, c, d, e, x, y, z, arg, q, opt),
            damped_slot(b, a, c, d, e, x, y, z, arg, q, opt), pz.value()};
}

cplx damped_bilateral_closed(cplx a, cplx b, cplx c, cplx d, cplx e, cplx x,
                             cplx y, cplx z, double q, const EvalOptions& opt)
{
    cplx s{0.0, 0.0};
    for (cplx t : damped_closed_terms(a, b, c, d, e, x, y, z, q, opt)) s += t;
    return s;
}

cplx qpower_second_factor(cplx d, cplx f, cplx y, long n, long l, double q,
                          const EvalOptions& opt)
{
    require_q(q);
    const long j0 = std::max(0L, l - n);

    /* Work with 1/(y q^{n+j};q)_inf folded into the term so nothing grows
       with the depth of n. */
    cplx t = pow_int(d, j0) * qpoch(f / d, q, j0, opt.q_membership_tol) /
             qpoch(cplx(q), q, j0);
    t *= qpoch_inf(cplx(qpow(q, 1 - l + n + j0)), q, opt.q_membership_tol);
    t /= qpoch_inf(y * qpow(q, n + j0), q, opt.q_membership_tol);

    cplx sum = t;
    for (long j = j0; j < j0 + opt.max_terms; ++j) {
        cplx r = d * (1.0 - (f / d) * qpow(q, j)) *
                 (1.0 - y * qpow(q, n + j)) /
                 ((1.0 - qpow(q, j + 1)) * (1.0 - qpow(q, 1 - l + n + j)));
        t *= r;
        sum += t;
        double ratio = std::max(std::abs(d), std::abs(r));
        if (ratio < 1.0 && j >= j0 + 2 &&
            std::abs(t) * ratio / (1.0 - ratio) <=
                opt.rel_tol * std::abs(sum))
            return sum * qpoch_inf_ratio({d}, {f}, q, opt.q_membership_tol)
                             .value();
    }
    throw MaxTermsError("second factor did not converge within max_terms");
}

cplx paired_sum_at_qpower(const PairedParams& pp, long l, double q,
                          const EvalOptions& opt)
{
    require_q(q);
    require_offaxis(pp.x, "first argument");
    require_offaxis(pp.y, "second argument");
    auto m = q_int_exponent(pp.e * pp.y, q, opt.q_membership_tol);
    if (!m || *m != 1 - l)
        throw InvalidParameterError("e y must equal the stated power of q");
    const double inner =
        std::max(std::abs(pp.a * pp.d), std::abs(pp.b * pp.d));
    if (!(inner < std::abs(pp.z) && std::abs(pp.z) < 1.0))
        throw NonConvergentError("z outside the widened annulus");

    return bilateral_sum(
        [&](long n) {
            return pow_int(pp.z, n) *
                   phi2(pp.a, pp.b, pp.c, pp.x * qpow(q, n), q, opt) *
                   qpower_second_factor(pp.d, pp.f, pp.y, n, l, q, opt);
        },
        opt);
}

namespace {

cplx qpower_slot(const PairedParams& p, long l, double q,
                 const EvalOptions& opt)
{
    const cplx a = p.a, b = p.b, c = p.c, x = p.x;
    const cplx d = p.d, f = p.f, y = p.y, z = p.z;
    const double ql = qpow(q, l);
    ScaledProduct pre = qpoch_inf_ratio(
        {d, cplx(q), b, c / a, z * y * ql / a, a * x, q / (a * x),
         f * a / z},
        {f, y * ql, c, b / a, z / a, x, q / x, d * a / z},
        q, opt.q_membership_tol);
    pre.mul(pow_int(z / a, l));
    pre.mul(phi4(a, a * q / c, a * qpow(q, -l) * q / (y * z), a * d / z,
                 a * q / b, a * q / z, a * f / z, cplx(q), q, opt));
    return pre.value();
}

} // namespace

std::vector<cplx> paired_qpower_terms(const PairedParams& pp, long l, double q,
                                      const EvalOptions& opt)
{
    require_q(q);
    auto m = q_int_exponent(pp.e * pp.y, q, opt.q_membership_tol);
    if (!m || *m != 1 - l)
        throw InvalidParameterError("e y must equal the stated power of q");
    if (pp.balance_gap() > 1e-10)
        throw InvalidParameterError("balance constraints are not satisfied");
    const cplx a = pp.a, b = pp.b, c = pp.c, x = pp.x;
    const cplx d = pp.d, f = pp.f, y = pp.y, z = pp.z;
    ScaledProduct pz = qpoch_inf_ratio(
        {cplx(q), a, b, c / z, z * x, q / (z * x)},
        {z, c, a / z, b / z, x, q / x}, q, opt.q_membership_tol);
    pz.mul(phi4(z, z * q / c, cplx(qpow(q, 1 - l)) / y, d, z * q / a,
                z * q / b, f, cplx(q), q, opt));
    return {pz.value(), qpower_slot(pp, l, q, opt),
            qpower_slot(swap_ab(pp), l, q, opt)};
}

cplx paired_closed_at_qpower(const PairedParams& pp, long l, double q,
                             const EvalOptions& opt)
{
    cplx s{0.0, 0.0};
    for (cplx t : paired_qpower_terms(pp, l, q, opt)) s += t;
    return s;
}

double balanced_defect(const std::vector<cplx>& upper,
                       const std::vector<cplx>& lower, double q)
{
    cplx pu{1.0, 0.0};
    for (cplx u : upper) pu *= u;
    cplx pl{1.0, 0.0};
    for (cplx v : lower) pl *= v;
    return std::abs(q * pu - pl) / std::abs(pl);
}

}  // namespace qjacobi

#include "qjacobi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace qjacobi {

namespace {

void require_q(double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw InvalidParameterError("q must lie in (0,1)");
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

cplx phi32(cplx u1, cplx u2, cplx u3, cplx l1, cplx l2, cplx z, double q,
           const EvalOptions& opt)
{
    SeriesSpec s;
    s.upper = {u1, u2, u3};
    s.lower = {l1, l2};
    s.z = z;
    return phi(s, q, opt);
}

void require_kernel_regions(const DualKernelArgs& ka, double q)
{
    require_q(q);
    ka.p.validate();
    if (ka.lam.sigma == cplx(0.0, 0.0) || ka.mu.sigma == cplx(0.0, 0.0))
        throw InvalidParameterError("spectral coordinates need nonzero sigma");
}

}  // namespace

cplx dual_kernel_series(const DualKernelArgs& ka, double q,
                        const EvalOptions& opt)
{
    require_kernel_regions(ka, q);
    const double a = ka.p.a, b = ka.p.b, y = ka.p.y;
    const double qa = std::pow(q, ka.alpha);
    const cplx sg = ka.lam.sigma, tu = ka.mu.sigma;
    const cplx abt = a * b * ka.t;
    if (!(std::abs(a * b * qa * sg * tu) < std::abs(abt) &&
          std::abs(abt) < 1.0))
        throw NonConvergentError("t outside the kernel's convergence annulus");

    const cplx c1(a * b * qa * qa), c2(a * b);
    return bilateral_sum(
        [&](long k) {
            const double qk = qpow(q, k);
            return pow_int(abt, k) *
                   phi2(a * qa * tu, a * qa / tu, c1, cplx(-b * y * qk / a), q,
                        opt) *
                   phi2(b * sg, b / sg, c2, cplx(-y * qk), q, opt);
        },
        opt);
}

PairedParams dual_kernel_paired(const DualKernelArgs& ka, double q)
{
    require_kernel_regions(ka, q);
    const double a = ka.p.a, b = ka.p.b, y = ka.p.y;
    const double qa = std::pow(q, ka.alpha);
    PairedParams pp;
    pp.a = a * qa * ka.mu.sigma;
    pp.b = a * qa / ka.mu.sigma;
    pp.c = cplx(a * b * qa * qa);
    pp.x = cplx(-b * y / a);
    pp.d = b / ka.lam.sigma;
    pp.e = b * ka.lam.sigma;
    pp.f = cplx(a * b);
    pp.y = cplx(-y);
    pp.z = a * b * ka.t;
    return pp;
}

std::vector<cplx> dual_kernel_closed_terms(const DualKernelArgs& ka, double q,
                                           const EvalOptions& opt)
{
    require_kernel_regions(ka, q);
    const double a = ka.p.a, b = ka.p.b, y = ka.p.y;
    const double q2a = std::pow(q, 2.0 * ka.alpha);
    const double qa = std::sqrt(q2a);
    const cplx sg = ka.lam.sigma, tu = ka.mu.sigma, t = ka.t;
    if (!(std::abs(a * b * t) > q))
        throw NonConvergentError("closed form needs |t| > q/(ab)");
    for (double u : {a, b})
        if (auto m = q_int_exponent(u * u * q2a / t, q, opt.q_membership_tol);
            m && *m <= 0)
            throw DegenerateParameterError(
                "t lies on an excluded geometric sequence");
    if (q_int_exponent(cplx(b / a), q, opt.q_membership_tol))
        throw DegenerateParameterError("b/a must not be an integer power of q");

    auto half = [&](double A, double B, double Y) {
        ScaledProduct pr = qpoch_inf_ratio(
            {B * sg, B / sg, B * qa * tu, B * qa / tu, A * q2a * sg / t,
             A * q2a / (sg * t), A * qa * tu / t, A * qa / (tu * t), cplx(q),
             -Y * A * B * t, -q / (A * B * Y * t)},
            {cplx(A * B), cplx(A * B * q2a), cplx(B / A), qa * sg * tu / t,
             qa * sg / (tu * t), qa * tu / (sg * t), qa / (sg * tu * t),
             A * A * q2a / t, A * B * t, cplx(-Y), cplx(-q / Y)},
            q, opt.q_membership_tol);
        pr.mul(w8w7(A * A * q2a / (q * t), A * qa * tu, A * qa / tu, A * sg,
                    A / sg, A * B * q2a / (q * t), q, q / (A * B * t), opt));
        return pr.value();
    };
    return {half(a, b, y), half(b, a, b * y / a)};
}

cplx dual_kernel_closed(const DualKernelArgs& ka, double q,
                        const EvalOptions& opt)
{
    cplx s{0.0, 0.0};
    for (cplx v : dual_kernel_closed_terms(ka, q, opt)) s += v;
    return s;
}

double dual_product_residual(cplx s, cplx t, double alpha, double beta,
                             const SpectralCoordinate& mu,
                             const SpectralCoordinate& nu,
                             const SpectralMeasure& m, const EvalOptions& opt,
                             double tail_tol)
{
    const JacobiParams& p = m.params();
    const double q = m.qbase();
    const double qa = std::pow(q, alpha);
    const double rt_ab = std::sqrt(p.a * p.b);
    if (!(qa * std::abs(mu.sigma) < std::abs(t) && std::abs(t) < 1.0 / rt_ab))
        throw InvalidParameterError("t outside the composition region");
    if (!(std::pow(q, beta - alpha) * std::abs(t * nu.sigma) < std::abs(s) &&
          std::abs(s) < std::abs(t) / (qa * qa * rt_ab)))
        throw InvalidParameterError("s outside the composition region");
    const cplx tp = qa * qa * s / t;
    for (cplx u : {t, tp})
        if (!(std::abs(p.a * p.b * u) > q))
            throw InvalidParameterError(
                "closed-form region violated on the right side");

    DualKernelArgs la;
    la.t = s;
    la.alpha = beta;
    la.lam = mu;
    la.mu = nu;
    la.p = JacobiParams{p.a * qa, p.b * qa, p.y};
    const cplx lhs = dual_kernel_series(la, q, opt);

    // Walk the atoms directly so the truncated end of the infinite mass
    // family can be audited: against the kernel product the atom
    // contributions shrink by a factor ab q^{2 alpha} |s| per rung -- much
    // more slowly than against the transform's own eigenfunctions, which is
    // what the measure's eps_mass cutoff is calibrated to.
    cplx rhs{0.0, 0.0};
    std::vector<double> deep;
    for (const auto& at : m.atoms()) {
        DualKernelArgs k1;
        k1.t = tp;
        k1.alpha = alpha + beta;
        k1.lam = at.sc;
        k1.mu = nu;
        k1.p = p;
        DualKernelArgs k2;
        k2.t = t;
        k2.alpha = alpha;
        k2.lam = at.sc;
        k2.mu = mu;
        k2.p = p;
        const cplx c = at.weight * dual_kernel_closed(k1, q, opt) *
                       dual_kernel_closed(k2, q, opt);
        rhs += c;
        if (at.sc.kind == SpectralKind::discrete_by)
            deep.push_back(std::abs(c));
    }

    double rate = p.a * p.b * qa * qa * std::abs(s);
    if (deep.size() >= 3) {
        const size_t n = deep.size();
        if (deep[n - 2] > 0.0)
            rate = std::max(rate, deep[n - 1] / deep[n - 2]);
        if (deep[n - 3] > 0.0)
            rate = std::max(rate, deep[n - 2] / deep[n - 3]);
    }
    if (!deep.empty() && deep.back() > 0.0) {
        const double scale =
            std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        if (!(rate < 0.999))
            throw MassTruncationError(
                "discrete atom contributions are not decaying");
        if (deep.back() * rate / (1.0 - rate) > tail_tol * scale)
            throw MassTruncationError(
                "measure truncates the discrete family too early for the "
                "kernel product; raise min_mass_terms");
    }
    return std::abs(lhs - rhs);
}

cplx transmutation_kernel(const TransmutationArgs& ta, double q,
                          const EvalOptions& opt)
{
    require_q(q);
    ta.p.validate();
    if (!(ta.r > 0.0 && ta.s > 0.0 && ta.r * ta.s < 1.0))
        throw InvalidParameterError("need r, s > 0 with rs < 1");
    if (ta.k < ta.l) return {0.0, 0.0};
    const double a = ta.p.a, b = ta.p.b, y = ta.p.y, r = ta.r, s = ta.s;
    const double qk = qpow(q, ta.k);
    ScaledProduct pr = qpoch_inf_ratio(
        {cplx(a * b), cplx(r * s), cplx(qpow(q, ta.k - ta.l + 1)),
         cplx(-y * qk)},
        {cplx(q), cplx(a * b * r * s), cplx(r * s * qpow(q, ta.k - ta.l)),
         cplx(-b * y * qk / (a * r))},
        q, opt.q_membership_tol);
    pr.mul_rpow(a * b, -(double)ta.l);
    pr.mul(phi32(cplx(qpow(q, ta.l - ta.k)), cplx(r), cplx(a * r / b),
                 cplx(r * s), cplx(-a * r * qpow(q, 1 - ta.k) / (b * y)),
                 cplx(q), q, opt));
    return pr.value();
}

cplx transmutation_kernel_alt(const TransmutationArgs& ta, double q,
                              const EvalOptions& opt)
{
    require_q(q);
    ta.p.validate();
    if (!(ta.r > 0.0 && ta.s > 0.0 && ta.r * ta.s < 1.0))
        throw InvalidParameterError("need r, s > 0 with rs < 1");
    if (ta.k < ta.l) return {0.0, 0.0};
    const double a = ta.p.a, b = ta.p.b, y = ta.p.y, r = ta.r, s = ta.s;
    const double qk = qpow(q, ta.k), ql = qpow(q, ta.l);
    ScaledProduct pr = qpoch_inf_ratio(
        {cplx(a * b), cplx(r * s), cplx(qpow(q, ta.k - ta.l + 1)),
         cplx(-y * qk)},
        {cplx(q), cplx(a * b * r * s), cplx(r * s * qpow(q, ta.k - ta.l)),
         cplx(-b * y * qk / (a * r))},
        q, opt.q_membership_tol);
    pr.mul_rpow(a * b, -(double)ta.l);
    pr.mul(qpoch(cplx(-y * ql), q, ta.k - ta.l, opt.q_membership_tol));
    pr.div(qpoch(cplx(-b * y * ql / (a * r)), q, ta.k - ta.l,
                 opt.q_membership_tol));
    pr.mul(phi32(cplx(qpow(q, ta.l - ta.k)), cplx(a * r / b), cplx(s),
                 cplx(r * s), cplx(-y * ql), cplx(-b * y * qk / a), q, opt));
    return pr.value();
}

cplx transmutation_kernel_r1(long k, long l, double s, const JacobiParams& p,
                             double q, const EvalOptions& opt)
{
    require_q(q);
    p.validate();
    if (!(s > 0.0 && s < 1.0))
        throw InvalidParameterError("need 0 < s < 1");
    if (k < l) return {0.0, 0.0};
    const double qk = qpow(q, k);
    ScaledProduct pr = qpoch_inf_ratio(
        {cplx(p.a * p.b), cplx(-p.y * qk)},
        {cplx(p.a * p.b * s), cplx(-p.b * p.y * qk / p.a)}, q,
        opt.q_membership_tol);
    pr.mul_rpow(p.a * p.b, -(double)l);
    pr.mul(qpoch(cplx(s), q, k - l, opt.q_membership_tol));
    pr.div(qpoch(cplx(q), q, k - l, opt.q_membership_tol));
    return pr.value();
}

cplx transmutation_kernel_diagonal(long k, const JacobiParams& p, double q,
                                   const EvalOptions& opt)
{
    require_q(q);
    p.validate();
    const double qk = qpow(q, k);
    ScaledProduct pr = qpoch_inf_ratio(
        {cplx(-p.y * qk)}, {cplx(-p.b * p.y * qk / p.a)}, q,
        opt.q_membership_tol);
    pr.mul_rpow(p.a * p.b, -(double)k);
    return pr.value();
}

double transmutation_product_residual(long k, long p_idx, double r, double s,
                                      double t, double u,
                                      const JacobiParams& jp, double q,
                                      const EvalOptions& opt)
{
    require_q(q);
    const JacobiParams mid{jp.a * r, jp.b * s, jp.y / s};
    cplx lhs{0.0, 0.0};
    for (long l = p_idx; l <= k; ++l) {
        TransmutationArgs left{k, l, r, s, jp};
        TransmutationArgs right{l, p_idx, t, u, mid};
        lhs += transmutation_kernel(left, q, opt) *
               transmutation_kernel(right, q, opt) * weight(l, mid, q);
    }
    TransmutationArgs whole{k, p_idx, r * t, s * u, jp};
    const cplx rhs = transmutation_kernel(whole, q, opt);
    const double scale = std::max(std::abs(rhs), 1e-300);
    return std::abs(lhs - rhs) / scale;
}

double kernel_product_3phi2_residual(long k, long p, double r, double s,
                                     double t, double u,
                                     const JacobiParams& jp, double q,
                                     const EvalOptions& opt)
{
    require_q(q);
    if (p < 0) throw InvalidParameterError("the window size must be >= 0");
    const double a = jp.a, b = jp.b, y = jp.y;
    const cplx base(-a * r * qpow(q, 1 - k) / (b * y));
    cplx lhs{0.0, 0.0};
    for (long l = 0; l <= p; ++l) {
        cplx term = qpoch(cplx(t * u), q, p - l, opt.q_membership_tol) /
                    qpoch(cplx(q), q, p - l, opt.q_membership_tol);
        term *= phi32(cplx(qpow(q, l - p)), cplx(t), cplx(a * r * t / (b * s)),
                      cplx(t * u),
                      cplx(-a * r * t * qpow(q, 1 + l - k) / (b * y)), cplx(q),
                      q, opt);
        term *= qpoch(cplx(r * s), q, l, opt.q_membership_tol) /
                qpoch(cplx(q), q, l, opt.q_membership_tol);
        term *= phi32(cplx(qpow(q, -l)), cplx(r), cplx(a * r / b), cplx(r * s),
                      base, cplx(q), q, opt);
        term *= std::pow(r * s, (double)(p - l)) * std::pow(t, (double)l);
        term *= qpoch(base, q, l, opt.q_membership_tol) /
                qpoch(t * base, q, l, opt.q_membership_tol);
        lhs += term;
    }
    cplx rhs = qpoch(cplx(r * s * t * u), q, p, opt.q_membership_tol) /
               qpoch(cplx(q), q, p, opt.q_membership_tol);
    rhs *= phi32(cplx(qpow(q, -p)), cplx(r * t), cplx(a * r * t / b),
                 cplx(r * s * t * u), t * base, cplx(q), q, opt);
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

double shifted_parameter_expansion_residual(long l, double r, double s,
                                            const SpectralCoordinate& sc,
                                            const JacobiParams& p, double q,
                                            long K, const EvalOptions& opt)
{
    require_q(q);
    p.validate();
    if (!(r > 0.0 && s > 0.0 && r * s < 1.0))
        throw InvalidParameterError("need r, s > 0 with rs < 1");
    const double a = p.a, b = p.b, y = p.y;
    const cplx sg = sc.sigma;
    const cplx lhs = phi2(a * r * sg, a * r / sg, cplx(a * b * r * s),
                          cplx(-b * y * qpow(q, l) / (a * r)), q, opt);

    const ScaledProduct front = qpoch_inf_ratio(
        {cplx(a * b), cplx(r * s)}, {cplx(q), cplx(a * b * r * s)}, q,
        opt.q_membership_tol);
    cplx acc{0.0, 0.0};
    for (long k = 0; k <= K; ++k) {
        ScaledProduct term = qpoch_inf_ratio(
            {cplx(qpow(q, k + 1)), cplx(-b * y * qpow(q, k + l) / a)},
            {cplx(r * s * qpow(q, k)), cplx(-b * y * qpow(q, k + l) / (a * r))},
            q, opt.q_membership_tol);
        term.mul_rpow(a * b, (double)k);
        term.mul(phi32(cplx(qpow(q, -k)), cplx(r), cplx(a * r / b),
                       cplx(r * s),
                       cplx(-a * r * qpow(q, 1 - l - k) / (b * y)), cplx(q), q,
                       opt));
        term.mul(phi2(a * sg, a / sg, cplx(a * b),
                      cplx(-b * y * qpow(q, l + k) / a), q, opt));
        acc += term.value();
    }
    const cplx rhs = front.value() * acc;
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

double saalschutz_residual(cplx a, cplx b, cplx sigma, long m, double q)
{
    require_q(q);
    if (m < 0) throw InvalidParameterError("the order must be >= 0");
    const cplx lhs = qpoch(b * sigma, q, m) * qpoch(b / sigma, q, m);
    cplx acc{0.0, 0.0};
    for (long k = 0; k <= m; ++k) {
        cplx term = qpoch(cplx(qpow(q, -m)), q, k) * cplx(qpow(q, k));
        term /= qpoch(cplx(q), q, k) * qpoch(a * b, q, k) *
                qpoch(qpow(q, 1 - m) * a / b, q, k);
        term *= qpoch(a * sigma, q, k) * qpoch(a / sigma, q, k);
        acc += term;
    }
    const cplx rhs = qpoch(a * b, q, m) * qpoch(b / a, q, m) * acc;
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

void write_kernel_table_csv(std::ostream& out, const JacobiParams& p, double r,
                            double s, long k_lo, long k_hi, long l_lo,
                            long l_hi, double q, const EvalOptions& opt)
{
    out << "k,l,value_re,value_im\n";
    out << std::setprecision(17);
    for (long k = k_lo; k <= k_hi; ++k)
        for (long l = l_lo; l <= l_hi; ++l) {
            const cplx v = transmutation_kernel({k, l, r, s, p}, q, opt);
            out << k << ',' << l << ',' << v.real() << ',' << v.imag()
                << '\n';
        }
}

}  // namespace qjacobi

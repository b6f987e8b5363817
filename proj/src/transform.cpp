#include <qjacobi/transform.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <qjacobi/errors.hpp>

namespace qjacobi {

namespace {

bool blank(const std::string& s)
{
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

double weight(long k, const JacobiParams& p, double q, double tol)
{
    const double by = p.b * p.y;
    if (k >= 0) {
        ScaledProduct s;
        s.mul_rpow(p.a * p.b, (double)k);
        const double qk = std::pow(q, (double)k);
        s.mul(qpoch_inf_ratio({cplx(-by * qk / p.a)}, {cplx(-p.y * qk)}, q, tol));
        return s.value().real();
    }
    // theta-shifted form: a^{2k} times products whose arguments stay small
    ScaledProduct s;
    s.mul_rpow(p.a, 2.0 * (double)k);
    const double qk1 = std::pow(q, 1.0 - (double)k);
    s.mul(qpoch_inf_ratio({cplx(-qk1 / p.y)}, {cplx(-p.a * qk1 / by)}, q, tol));
    s.mul(qpoch_inf_ratio({cplx(-by / p.a), cplx(-p.a * q / by)},
                          {cplx(-p.y), cplx(-q / p.y)}, q, tol));
    return s.value().real();
}

Sequence read_sequence(std::istream& in)
{
    Sequence u;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line))
            continue;
        std::istringstream is(line);
        long k;
        double re, im;
        if (!(is >> k >> re >> im))
            throw ConfigError("sequence line " + std::to_string(line_no) +
                              ": expected 'k re im'");
        std::string rest;
        if (is >> rest)
            throw ConfigError("sequence line " + std::to_string(line_no) +
                              ": trailing content '" + rest + "'");
        if (!u.entries.emplace(k, cplx(re, im)).second)
            throw ConfigError("sequence line " + std::to_string(line_no) +
                              ": duplicate index " + std::to_string(k));
    }
    return u;
}

void write_sequence(std::ostream& out, const Sequence& u)
{
    out << std::setprecision(17);
    for (const auto& [k, v] : u.entries)
        out << k << ' ' << v.real() << ' ' << v.imag() << '\n';
}

double norm_squared(const Sequence& u, const JacobiParams& p, double q)
{
    double s = 0.0;
    for (const auto& [k, v] : u.entries)
        s += std::norm(v) * weight(k, p, q);
    return s;
}

double density_at(double theta, const JacobiParams& p, double q)
{
    const cplx z = std::polar(1.0, theta);
    const double by = p.b * p.y;
    auto mag2 = [&](cplx arg) { return std::norm(qpoch_inf(arg, q)); };
    return mag2(z * z) /
           (mag2(p.a * z) * mag2(p.b * z) * mag2(-by * z) * mag2(-q * z / by));
}

SpectralMeasure::SpectralMeasure(const JacobiParams& p, double q,
                                 const MeasureOptions& mo,
                                 const EvalOptions& opt)
    : p_(p), q_(q), C_(0), mass_tail_(0)
{
    p_.validate();
    if (!(q > 0) || !(q < 1))
        throw InvalidParameterError("measure needs 0 < q < 1");
    const double a = p.a, b = p.b, y = p.y, by = p.b * p.y;

    C_ = (qpoch_inf(cplx(a * b), q) * qpoch_inf(cplx(a * b), q) *
          qpoch_inf(cplx(-by / a), q) * qpoch_inf(cplx(-a * q / by), q) *
          qpoch_inf(cplx(-y), q) * qpoch_inf(cplx(-q / y), q))
             .real();

    // continuous part, integrated in theta over (0, pi)
    QuadratureRule rule = QuadratureRule::gauss_legendre(mo.quad_nodes);
    const double twopi = 2.0 * M_PI;
    for (int i = 0; i < mo.quad_nodes; ++i) {
        const double th = rule.theta[i];
        Atom at;
        at.sc = SpectralCoordinate::unit_circle(th);
        at.weight = C_ * density_at(th, p, q) * rule.weight[i] / twopi;
        atoms_.push_back(at);
    }

    // finite family at sigma = a q^k > 1
    const double mass_const =
        qpoch_inf_ratio({cplx(1.0 / (a * a))},
                        {cplx(q), cplx(a * b), cplx(b / a), cplx(-a * b * y),
                         cplx(-q / (a * b * y)), cplx(-by / a),
                         cplx(-a * q / by)},
                        q)
            .value()
            .real();
    for (long k = 0; a * std::pow(q, (double)k) > 1.0; ++k) {
        const double s = a * std::pow(q, (double)k);
        ScaledProduct wk;
        wk.mul(cplx((1.0 - s * s) / (1.0 - a * a)));
        wk.mul(qpoch(cplx(a * a), q, k));
        wk.mul(qpoch(cplx(a * b), q, k));
        wk.div(qpoch(cplx(q), q, k));
        wk.div(qpoch(cplx(a * q / b), q, k));
        wk.mul_rpow(a * b, -(double)k);
        wk.mul(cplx(mass_const));
        Atom at;
        at.sc = SpectralCoordinate::from_sigma(cplx(s), SpectralKind::discrete_a);
        at.weight = C_ * wk.value().real();
        if (!(at.weight > 0))
            throw Error("nonpositive discrete mass in the spectral measure");
        atoms_.push_back(at);
    }

    // infinite family at sigma = -q^{1-k}/(by): the raw masses grow, but the
    // eigenfunction factor decays super-geometrically, so the truncation rule
    // watches the product v_k |phi(y)|^2 rather than v_k alone
    long k0 = (long)std::ceil(1.0 - std::log(by) / std::log(q)) - 3;
    while (std::pow(q, 1.0 - (double)k0) <= by)
        ++k0;
    double total_d = 0.0;
    int below = 0;
    bool truncated = false;
    for (int step = 0; step < mo.max_mass_terms; ++step) {
        const long k = k0 + step;
        const double s_abs = std::pow(q, 1.0 - (double)k) / by;  // |sigma|
        ScaledProduct vk;
        vk.mul_rpow(q, 2.0 - 2.0 * (double)k);
        vk.div(cplx(by * by));
        vk.mul(cplx(1.0 - by * by * std::pow(q, 2.0 * ((double)k - 1.0))));
        vk.mul_rpow(q, -(double)k * ((double)k - 1.0));
        vk.mul_rpow(q * q / (by * by), (double)k - 1.0);
        const double qk1 = std::pow(q, 1.0 - (double)k);
        vk.div(qpoch_inf_scaled(cplx(q), q));
        vk.div(qpoch_inf_scaled(cplx(q), q));
        vk.div(qpoch_inf_scaled(cplx(-qk1 / y), q));
        vk.div(qpoch_inf_scaled(cplx(-a * qk1 / by), q));
        vk.div(qpoch_inf_scaled(cplx(-b * by * std::pow(q, (double)k - 1.0)), q));
        vk.div(qpoch_inf_scaled(cplx(-a * by * std::pow(q, (double)k - 1.0)), q));
        const double v = vk.value().real();
        if (!(v > 0))
            throw Error("nonpositive discrete mass in the spectral measure");

        Atom at;
        at.sc.sigma = cplx(-s_abs);
        at.sc.lambda = cplx(-0.5 * (s_abs + 1.0 / s_abs));
        at.sc.kind = SpectralKind::discrete_by;
        at.weight = C_ * v;

        const double d =
            at.weight * std::norm(phi_grid_value(0, at.sc, p, q, opt));
        total_d += d;
        if (step >= std::max(3, mo.min_mass_terms) &&
            d < mo.eps_mass * total_d) {
            if (++below >= 2) {
                mass_tail_ = d / total_d;
                truncated = true;
                break;
            }
        } else {
            below = 0;
        }
        atoms_.push_back(at);
    }
    if (!truncated)
        throw MassTruncationError(
            "discrete mass family not truncatable within the iteration cap");

    // the two families live on opposite sides of lambda = 0 by construction;
    // still assert global separation of all discrete eigenvalues
    std::vector<double> lams;
    for (const auto& at : atoms_)
        if (at.sc.kind != SpectralKind::continuous)
            lams.push_back(at.sc.lambda.real());
    std::sort(lams.begin(), lams.end());
    for (size_t i = 1; i < lams.size(); ++i)
        if (std::abs(lams[i] - lams[i - 1]) < 1e-10)
            throw Error("coinciding discrete eigenvalues in the measure");
}

cplx SpectralMeasure::integrate(
    const std::function<cplx(const SpectralCoordinate&)>& f) const
{
    cplx s{0.0, 0.0};
    for (const auto& at : atoms_)
        s += at.weight * f(at.sc);
    return s;
}

cplx forward(const Sequence& u, const SpectralCoordinate& sc,
             const JacobiParams& p, double q, const EvalOptions& opt)
{
    cplx s{0.0, 0.0};
    for (const auto& [k, v] : u.entries)
        s += v * phi_grid_value(k, sc, p, q, opt) * weight(k, p, q);
    return s;
}

cplx inverse(const std::function<cplx(const SpectralCoordinate&)>& g, long k,
             const SpectralMeasure& m, const EvalOptions& opt)
{
    const JacobiParams& p = m.params();
    const double q = m.qbase();
    return m.integrate([&](const SpectralCoordinate& sc) {
        return g(sc) * phi_grid_value(k, sc, p, q, opt);
    });
}

Sequence roundtrip(const Sequence& u, const SpectralMeasure& m, long k_lo,
                   long k_hi, const EvalOptions& opt)
{
    const JacobiParams& p = m.params();
    const double q = m.qbase();
    std::vector<std::pair<long, double>> wts;
    for (const auto& [j, v] : u.entries) {
        (void)v;
        wts.emplace_back(j, weight(j, p, q));
    }
    Sequence out;
    for (long k = k_lo; k <= k_hi; ++k)
        out.entries[k] = cplx(0.0, 0.0);
    for (const auto& at : m.atoms()) {
        GridFunction phi = phi_on_grid(at.sc, p, q, opt);
        cplx F{0.0, 0.0};
        for (const auto& [j, wj] : wts)
            F += u.entries.at(j) * phi(j) * wj;
        for (long k = k_lo; k <= k_hi; ++k)
            out.entries[k] += at.weight * F * phi(k);
    }
    return out;
}

double parseval_gap(const Sequence& u, const SpectralMeasure& m,
                    const EvalOptions& opt)
{
    const JacobiParams& p = m.params();
    const double q = m.qbase();
    const double lhs = norm_squared(u, p, q);
    double rhs = 0.0;
    for (const auto& at : m.atoms())
        rhs += at.weight * std::norm(forward(u, at.sc, p, q, opt));
    return std::abs(rhs - lhs) / lhs;
}

}  // namespace qjacobi

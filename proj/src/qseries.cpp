#include "qjacobi/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qjacobi {

namespace {

constexpr double kInfCutoff = 1e-17;   // truncation threshold for (a;q)_inf
constexpr double kMantLo = 1e-120;
constexpr double kMantHi = 1e120;

std::string fmt_cplx(cplx z)
{
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

void require_q(double q)
{
    if (!(q > 0.0) || !(q < 1.0))
        throw InvalidParameterError("base q must lie in (0,1)");
}

} // namespace

cplx pow_int(cplx z, long long n)
{
    if (n < 0) return 1.0 / pow_int(z, -n);
    cplx r{1.0, 0.0};
    cplx b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

void ScaledProduct::normalize()
{
    double mag = std::max(std::abs(m_.real()), std::abs(m_.imag()));
    if (mag == 0.0) { e2_ = 0.0; return; }
    if (mag > kMantHi || mag < kMantLo) {
        int ex = 0;
        std::frexp(mag, &ex);
        m_ = cplx(std::ldexp(m_.real(), -ex), std::ldexp(m_.imag(), -ex));
        e2_ += ex;
    }
}

ScaledProduct& ScaledProduct::mul(cplx f)
{
    m_ *= f;
    normalize();
    return *this;
}

ScaledProduct& ScaledProduct::div(cplx f)
{
    if (f == cplx(0.0, 0.0))
        throw DegenerateParameterError("division by an exactly vanishing q-shifted factorial");
    m_ /= f;
    normalize();
    return *this;
}

ScaledProduct& ScaledProduct::mul(const ScaledProduct& o)
{
    m_ *= o.m_;
    e2_ += o.e2_;
    normalize();
    return *this;
}

ScaledProduct& ScaledProduct::div(const ScaledProduct& o)
{
    if (o.is_zero())
        throw DegenerateParameterError("division by an exactly vanishing q-shifted factorial");
    m_ /= o.m_;
    e2_ -= o.e2_;
    normalize();
    return *this;
}

ScaledProduct& ScaledProduct::mul_rpow(double base, double expo)
{
    if (!(base > 0.0))
        throw InvalidParameterError("mul_rpow requires a positive base");
    e2_ += expo * std::log2(base);
    return *this;
}

cplx ScaledProduct::value() const
{
    if (is_zero()) return {0.0, 0.0};
    const double fl = std::floor(e2_);
    const double s = std::exp2(e2_ - fl);
    const long long rest = (long long)fl;
    const int h1 = (int)(rest / 2);
    const int h2 = (int)(rest - (long long)h1);
    cplx v = m_ * s;
    // fold the integer exponent in two halves to dodge intermediate overflow
    v = cplx(std::ldexp(v.real(), h1), std::ldexp(v.imag(), h1));
    v = cplx(std::ldexp(v.real(), h2), std::ldexp(v.imag(), h2));
    return v;
}

double ScaledProduct::log10_mag() const
{
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log10(std::abs(m_)) + e2_ * 0.30102999566398119521;
}

std::optional<long> q_int_exponent(cplx z, double q, double tol)
{
    require_q(q);
    double mag = std::abs(z);
    if (!(mag > 0.0)) return std::nullopt;
    double lq = std::log(q);
    // phase must vanish on the same log_q scale as the modulus test
    if (std::abs(std::arg(z)) > tol * std::abs(lq)) return std::nullopt;
    double t = std::log(mag) / lq;
    double n = std::round(t);
    if (std::abs(t - n) > tol) return std::nullopt;
    if (std::abs(n) > 1e6) return std::nullopt;
    return (long)n;
}

bool is_q_neg_power(cplx z, double q, double tol)
{
    auto m = q_int_exponent(z, q, tol);
    return m && *m <= 0;
}

cplx qpoch(cplx a, double q, long n, double tol)
{
    require_q(q);
    if (n < 0) throw InvalidParameterError("qpoch requires n >= 0");
    if (auto m = q_int_exponent(a, q, tol); m && *m <= 0 && -*m <= n - 1)
        return {0.0, 0.0};
    cplx r{1.0, 0.0};
    cplx aq = a;
    for (long i = 0; i < n; ++i) {
        r *= (1.0 - aq);
        aq *= q;
    }
    return r;
}

cplx qpoch_inf(cplx a, double q, double tol)
{
    return qpoch_inf_scaled(a, q, tol).value();
}

ScaledProduct qpoch_inf_scaled(cplx a, double q, double tol)
{
    require_q(q);
    if (is_q_neg_power(a, q, tol)) return ScaledProduct(cplx{0.0, 0.0});
    ScaledProduct r;
    cplx aq = a;
    while (std::abs(aq) >= kInfCutoff) {
        r.mul(1.0 - aq);
        aq *= q;
    }
    return r;
}

ScaledProduct qpoch_inf_ratio(const std::vector<cplx>& num,
                              const std::vector<cplx>& den,
                              double q, double tol)
{
    require_q(q);
    ScaledProduct r;
    bool zero = false;
    for (cplx d : den) {
        if (is_q_neg_power(d, q, tol))
            throw DegenerateParameterError(
                "vanishing denominator factor (" + fmt_cplx(d) + ";q)_inf");
    }
    for (cplx a : num) {
        if (is_q_neg_power(a, q, tol)) zero = true;
    }
    if (zero) return ScaledProduct(cplx{0.0, 0.0});

    std::vector<cplx> nn = num, dd = den;
    bool more = true;
    while (more) {
        more = false;
        for (auto& a : nn)
            if (std::abs(a) >= kInfCutoff) { r.mul(1.0 - a); a *= q; more = true; }
        for (auto& d : dd)
            if (std::abs(d) >= kInfCutoff) { r.div(1.0 - d); d *= q; more = true; }
    }
    return r;
}

std::pair<cplx, cplx> theta_shift(cplx a, double q, long n)
{
    require_q(q);
    if (a == cplx(0.0, 0.0)) throw InvalidParameterError("theta_shift requires a != 0");
    double qn = std::pow(q, (double)n);
    cplx lhs = qpoch_inf(a * qn, q) * qpoch_inf(std::pow(q, (double)(1 - n)) / a, q);
    cplx rhs = pow_int(-a, -n) * std::pow(q, -0.5 * (double)n * (double)(n - 1))
             * qpoch_inf(a, q) * qpoch_inf(q / a, q);
    return {lhs, rhs};
}

std::optional<long> SeriesSpec::terminating_index(double q, double tol) const
{
    std::optional<long> best;
    for (cplx a : upper) {
        if (auto m = q_int_exponent(a, q, tol); m && *m <= 0) {
            long n = -*m;
            if (!best || n < *best) best = n;
        }
    }
    return best;
}

std::optional<long> SeriesSpec::degenerate_lower_index(double q, double tol) const
{
    std::optional<long> best;
    for (cplx b : lower) {
        if (auto m = q_int_exponent(b, q, tol); m && *m <= 0) {
            long n = -*m;
            if (!best || n < *best) best = n;
        }
    }
    return best;
}

namespace {

void validate_spec(const SeriesSpec& s)
{
    if (s.upper.size() != s.lower.size() + 1)
        throw InvalidParameterError("series needs r+1 upper and r lower parameters");
}

/* Quad-precision fallback arithmetic for the continued expansion.  Only the
   basic operations are used, so no quadmath library calls are needed; on
   targets without __float128 the same code runs in long double. */
#ifdef __SIZEOF_FLOAT128__
using real_x = __float128;
#else
using real_x = long double;
#endif

struct cplx_x {
    real_x re{0}, im{0};
    cplx_x() = default;
    cplx_x(real_x r) : re(r) {}
    cplx_x(real_x r, real_x i) : re(r), im(i) {}
};

cplx_x operator+(cplx_x a, cplx_x b) { return {a.re + b.re, a.im + b.im}; }
cplx_x operator-(cplx_x a, cplx_x b) { return {a.re - b.re, a.im - b.im}; }
cplx_x operator*(cplx_x a, cplx_x b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
cplx_x operator/(cplx_x a, cplx_x b)
{
    real_x br = b.re < 0 ? -b.re : b.re;
    real_x bi = b.im < 0 ? -b.im : b.im;
    if (br >= bi) {
        real_x t = b.im / b.re, d = b.re + b.im * t;
        return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    real_x t = b.re / b.im, d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
}
cplx_x& operator*=(cplx_x& a, cplx_x b) { return a = a * b; }
cplx_x& operator/=(cplx_x& a, cplx_x b) { return a = a / b; }
cplx_x& operator+=(cplx_x& a, cplx_x b) { return a = a + b; }

cplx_x widen(cplx z) { return {(real_x)z.real(), (real_x)z.imag()}; }

cplx narrow(cplx_x z) { return {(double)z.re, (double)z.im}; }

real_x sqrt_x(real_x x)
{
    /* Newton from a double seed; two steps reach full quad accuracy. */
    real_x r = (real_x)std::sqrt((double)x);
    r = (real_x)0.5 * (r + x / r);
    r = (real_x)0.5 * (r + x / r);
    return r;
}

real_x abs_x(cplx_x z)
{
    real_x ar = z.re < 0 ? -z.re : z.re;
    real_x ai = z.im < 0 ? -z.im : z.im;
    if (ar < ai) std::swap(ar, ai);
    if (ar == 0)
        return 0;
    real_x t = ai / ar;
    return ar * sqrt_x(1 + t * t);
}

cplx_x qpoch_inf_x(cplx_x a, real_x q)
{
    cplx_x r{1};
    cplx_x aq = a;
    while (abs_x(aq) >= (real_x)1e-36) {
        r *= cplx_x{1} - aq;
        aq *= q;
    }
    return r;
}

cplx_x phi_direct_x(const std::vector<cplx_x>& upper, const std::vector<cplx_x>& lower,
                    cplx_x z, real_x q, int max_terms)
{
    cplx_x sum{1};
    cplx_x term{1};
    real_x qj = 1;
    real_x az = abs_x(z);
    for (int j = 0; j < max_terms; ++j) {
        cplx_x r = z;
        for (cplx_x a : upper) r *= cplx_x{1} - a * qj;
        r /= cplx_x{1} - cplx_x{q * qj};
        for (cplx_x b : lower) r /= cplx_x{1} - b * qj;
        term *= r;
        sum += term;
        qj *= q;
        real_x ratio = std::max(az, abs_x(r));
        if (ratio < 1 && j >= 2 &&
            abs_x(term) * ratio / (1 - ratio) <= (real_x)1e-30 * abs_x(sum))
            return sum;
    }
    throw MaxTermsError("series did not meet the tolerance within max_terms");
}

/* Exact finite sum of the first n_terms+1 terms; assumes no lower-parameter
   zero is reached within that range. */
cplx phi_finite(const SeriesSpec& s, double q, long n_top)
{
    cplx sum{1.0, 0.0};
    cplx term{1.0, 0.0};
    double qj = 1.0;
    for (long j = 0; j < n_top; ++j) {
        cplx r = s.z;
        for (cplx a : s.upper) r *= (1.0 - a * qj);
        r /= (1.0 - q * qj);
        for (cplx b : s.lower) r /= (1.0 - b * qj);
        term *= r;
        sum += term;
        qj *= q;
    }
    return sum;
}

} // namespace

cplx phi(const SeriesSpec& s, double q, const EvalOptions& opt)
{
    require_q(q);
    validate_spec(s);
    auto n_term = s.terminating_index(q, opt.q_membership_tol);
    auto m_low = s.degenerate_lower_index(q, opt.q_membership_tol);
    if (m_low && (!n_term || *n_term > *m_low))
        throw DegenerateLowerError("lower parameter in q^{-Z>=0} reached before termination");
    if (n_term) return phi_finite(s, q, *n_term);
    if (s.z == cplx(0.0, 0.0)) return {1.0, 0.0};
    if (std::abs(s.z) >= 1.0)
        throw NonConvergentError("series argument outside the unit disc");

    cplx sum{1.0, 0.0};
    cplx term{1.0, 0.0};
    double qj = 1.0;
    double az = std::abs(s.z);
    for (int j = 0; j < opt.max_terms; ++j) {
        cplx r = s.z;
        for (cplx a : s.upper) r *= (1.0 - a * qj);
        r /= (1.0 - q * qj);
        for (cplx b : s.lower) r /= (1.0 - b * qj);
        term *= r;
        sum += term;
        qj *= q;
        double ratio = std::max(az, std::abs(r));
        if (ratio < 1.0) {
            double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (j >= 2 && tail <= opt.rel_tol * std::abs(sum)) return sum;
        }
    }
    throw MaxTermsError("series did not meet the tolerance within max_terms");
}

cplx phi_continued(const SeriesSpec& s, double q, const EvalOptions& opt)
{
    require_q(q);
    validate_spec(s);
    auto n_term = s.terminating_index(q, opt.q_membership_tol);
    auto m_low = s.degenerate_lower_index(q, opt.q_membership_tol);
    if (m_low && (!n_term || *n_term > *m_low))
        throw DegenerateLowerError("lower parameter in q^{-Z>=0} reached before termination");
    if (n_term) return phi_finite(s, q, *n_term);

    const cplx z = s.z;
    if (z.imag() == 0.0 && z.real() >= 1.0 - 1e-14)
        throw BranchCutError("argument on the cut [1, infinity)");

    const size_t k1 = s.upper.size();           // k+1 upper parameters
    if (k1 == 1) {
        // 1phi0(a; -; q, z) = (a z; q)_inf / (z; q)_inf everywhere off the cut
        ScaledProduct r = qpoch_inf_ratio({s.upper[0] * z}, {z}, q, opt.q_membership_tol);
        return r.value();
    }

    for (cplx a : s.upper)
        if (a == cplx(0.0, 0.0))
            throw DegenerateParameterError("continuation requires nonzero upper parameters");
    for (size_t i = 0; i < k1; ++i)
        for (size_t j = i + 1; j < k1; ++j)
            if (q_int_exponent(s.upper[i] / s.upper[j], q, opt.q_membership_tol))
                throw DegenerateParameterError("upper parameter ratio in q^Z");

    cplx prod_a{1.0, 0.0};
    for (cplx a : s.upper) prod_a *= a;
    cplx prod_b{1.0, 0.0};
    for (cplx b : s.lower) prod_b *= b;
    const cplx w = q * prod_b / (z * prod_a);

    if (std::abs(w) >= 1.0) {
        if (std::abs(z) < 1.0) return phi(s, q, opt);   // same function inside the disc
        /* Annulus 1 <= |z| <= |q prod_b / prod_a| where neither expansion
           converges.  For a 2phi1 rotate the argument onto an upper
           parameter: with (A, B, C) the parameters and |B| < 1,
             (B, Az; q)_inf / (C, z; q)_inf x series(C/B, z; Az; q, B)
           converges geometrically at rate |B| for every z off the cut. */
        if (k1 == 2) {
            size_t bi = std::abs(s.upper[0]) <= std::abs(s.upper[1]) ? 0 : 1;
            for (int attempt = 0; attempt < 2; ++attempt, bi ^= 1) {
                const cplx B = s.upper[bi], A = s.upper[bi ^ 1], C = s.lower[0];
                if (std::abs(B) > 0.95) continue;
                try {
                    ScaledProduct pre = qpoch_inf_ratio({B, A * z}, {C, z}, q,
                                                        opt.q_membership_tol);
                    SeriesSpec t;
                    t.upper = {C / B, z};
                    t.lower = {A * z};
                    t.z = B;
                    pre.mul(phi(t, q, opt));
                    return pre.value();
                } catch (const DegenerateLowerError&) {
                } catch (const DegenerateParameterError&) {
                }
            }
        }
        throw NonConvergentError("transformed series argument outside the unit disc");
    }

    /* The k+1 terms can cancel; evaluate each near roundoff so the result
       keeps as much relative accuracy as the conditioning allows. */
    EvalOptions inner = opt;
    inner.rel_tol = std::max(1e-15, opt.rel_tol * 1e-3);

    cplx total{0.0, 0.0};
    double peak = 0.0;
    std::vector<char> live(k1, 0);
    for (size_t i = 0; i < k1; ++i) {
        const cplx ai = s.upper[i];
        std::vector<cplx> num, den;
        for (size_t j = 0; j < k1; ++j)
            if (j != i) num.push_back(s.upper[j]);
        for (cplx b : s.lower) num.push_back(b / ai);
        num.push_back(ai * z);
        num.push_back(q / (ai * z));
        for (cplx b : s.lower) den.push_back(b);
        for (size_t j = 0; j < k1; ++j)
            if (j != i) den.push_back(s.upper[j] / ai);
        den.push_back(z);
        den.push_back(q / z);
        ScaledProduct pre = qpoch_inf_ratio(num, den, q, opt.q_membership_tol);
        if (pre.is_zero()) continue;
        live[i] = 1;

        SeriesSpec t;
        t.upper.push_back(ai);
        for (cplx b : s.lower) t.upper.push_back(q * ai / b);
        for (size_t j = 0; j < k1; ++j)
            if (j != i) t.lower.push_back(q * ai / s.upper[j]);
        t.z = w;
        pre.mul(phi(t, q, inner));
        cplx term = pre.value();
        peak = std::max(peak, std::abs(term));
        total += term;
    }

    /* Cancellation between the expansion terms eats relative accuracy one for
       one; when the loss is measurable, redo the assembly in extended
       precision (the terms are moderate there, no scaling needed). */
    if (!(peak > 10.0 * std::abs(total)) || peak > 1e290)
        return total;

    const real_x xq = (real_x)q;
    const cplx_x xz = widen(z);
    cplx_x xw{xq};
    for (cplx b : s.lower) xw *= widen(b);
    for (cplx a : s.upper) xw /= widen(a);
    xw /= xz;

    cplx_x xtotal{0};
    for (size_t i = 0; i < k1; ++i) {
        if (!live[i]) continue;
        const cplx_x ai = widen(s.upper[i]);
        cplx_x pre{1};
        for (size_t j = 0; j < k1; ++j)
            if (j != i) pre *= qpoch_inf_x(widen(s.upper[j]), xq);
        for (cplx b : s.lower) pre *= qpoch_inf_x(widen(b) / ai, xq);
        pre *= qpoch_inf_x(ai * xz, xq);
        pre *= qpoch_inf_x(cplx_x{xq} / (ai * xz), xq);
        for (cplx b : s.lower) pre /= qpoch_inf_x(widen(b), xq);
        for (size_t j = 0; j < k1; ++j)
            if (j != i) pre /= qpoch_inf_x(widen(s.upper[j]) / ai, xq);
        pre /= qpoch_inf_x(xz, xq);
        pre /= qpoch_inf_x(cplx_x{xq} / xz, xq);

        std::vector<cplx_x> tu, tl;
        tu.push_back(ai);
        for (cplx b : s.lower) tu.push_back(cplx_x{xq} * ai / widen(b));
        for (size_t j = 0; j < k1; ++j)
            if (j != i) tl.push_back(cplx_x{xq} * ai / widen(s.upper[j]));
        xtotal += pre * phi_direct_x(tu, tl, xw, xq, opt.max_terms);
    }
    return narrow(xtotal);
}

cplx phi_auto(const SeriesSpec& s, double q, const EvalOptions& opt)
{
    auto n_term = s.terminating_index(q, opt.q_membership_tol);
    if (n_term) return phi(s, q, opt);
    // past |z| ~ 0.9 the continued form is cheaper when its argument converges
    if (std::abs(s.z) >= 0.9) {
        try {
            return phi_continued(s, q, opt);
        } catch (const DegenerateParameterError&) {
            if (std::abs(s.z) < 1.0) return phi(s, q, opt);
            throw;
        }
    }
    return phi(s, q, opt);
}

cplx w8w7(cplx a1, cplx a4, cplx a5, cplx a6, cplx a7, cplx a8,
          double q, cplx z, const EvalOptions& opt)
{
    require_q(q);
    if (a1 == cplx(1.0, 0.0))
        throw DegenerateParameterError("very-well-poised series requires a1 != 1");
    const cplx upp[5] = {a4, a5, a6, a7, a8};
    for (cplx a : upp)
        if (a == cplx(0.0, 0.0))
            throw InvalidParameterError("8W7 requires nonzero parameters a4..a8");
    std::optional<long> n_term;
    if (auto m = q_int_exponent(a1, q, opt.q_membership_tol); m && *m <= 0)
        n_term = -*m;
    for (cplx a : upp)
        if (auto m = q_int_exponent(a, q, opt.q_membership_tol); m && *m <= 0)
            if (!n_term || -*m < *n_term) n_term = -*m;
    for (cplx a : upp) {
        if (a == cplx(0.0, 0.0)) continue;
        if (auto m = q_int_exponent(q * a1 / a, q, opt.q_membership_tol); m && *m <= 0) {
            long hit = -*m;
            if (!n_term || *n_term > hit)
                throw DegenerateLowerError("lower parameter q a1/a_i in q^{-Z>=0}");
        }
    }
    if (!n_term && std::abs(z) >= 1.0)
        throw NonConvergentError("8W7 argument outside the unit disc");

    cplx sum{1.0, 0.0};
    cplx u{1.0, 0.0};      // the phi-type part of the term
    double qj = 1.0;       // q^j
    double q2j = 1.0;      // q^{2j}
    long cap = n_term ? *n_term : opt.max_terms;
    double az = std::abs(z);
    for (long j = 0; j < cap; ++j) {
        cplx r = z * (1.0 - a1 * qj);
        for (cplx a : upp) r *= (1.0 - a * qj);
        r /= (1.0 - q * qj);
        for (cplx a : upp) r /= (1.0 - (q * a1 / a) * qj);
        u *= r;
        qj *= q;
        q2j *= q * q;
        cplx term = u * (1.0 - a1 * q2j) / (1.0 - a1);
        sum += term;
        if (!n_term) {
            double ratio = std::max(az, std::abs(r));
            if (ratio < 1.0) {
                double tail = std::abs(term) * ratio / (1.0 - ratio);
                if (j >= 2 && tail <= opt.rel_tol * std::abs(sum)) return sum;
            }
            if (j + 1 >= opt.max_terms)
                throw MaxTermsError("8W7 did not meet the tolerance within max_terms");
        }
    }
    return sum;
}

cplx w8w7_as_phi(cplx a1, cplx a4, cplx a5, cplx a6, cplx a7, cplx a8,
                 double q, cplx z, const EvalOptions& opt)
{
    cplx sq = std::sqrt(a1);
    SeriesSpec s;
    s.upper = {a1, q * sq, -q * sq, a4, a5, a6, a7, a8};
    s.lower = {sq, -sq, q * a1 / a4, q * a1 / a5, q * a1 / a6, q * a1 / a7, q * a1 / a8};
    s.z = z;
    return phi(s, q, opt);
}

cplx bilateral_sum(const std::function<cplx(long)>& term, const EvalOptions& opt)
{
    cplx sum = term(0);
    for (int dir : {+1, -1}) {
        int small_streak = 0;
        for (int i = 1; i <= opt.max_terms; ++i) {
            cplx t = term((long)dir * i);
            sum += t;
            /* Oscillating tails bounce in magnitude from step to step, so a
               monotone-decrease gate can starve forever; a run of relatively
               small terms is what actually certifies the tail, and a single
               small term is not enough because envelopes can dip and
               recover early on. */
            if (std::abs(t) <= opt.rel_tol * std::abs(sum))
                ++small_streak;
            else
                small_streak = 0;
            if (small_streak >= 5) break;
            if (i == opt.max_terms)
                throw MaxTermsError("bilateral sum did not converge within max_terms");
        }
    }
    return sum;
}

QuadratureRule QuadratureRule::gauss_legendre(int n)
{
    if (n < 1) throw InvalidParameterError("quadrature order must be positive");
    QuadratureRule r;
    r.theta.resize(n);
    r.weight.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Newton on P_n, nodes of the standard interval (-1, 1)
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        // map (-1,1) -> (0,pi), descending x gives ascending theta
        r.theta[i] = pi * 0.5 * (1.0 - x);
        r.weight[i] = w * pi * 0.5;
    }
    return r;
}

} // namespace qjacobi

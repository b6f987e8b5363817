#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <qjacobi/errors.hpp>
#include <qjacobi/qjacobi.hpp>
#include "testutil.hpp"

using namespace qjacobi;
using testutil::near_q_power;
using testutil::rel_err;
using testutil::Rng;

namespace {

struct Draw {
    double q, a, b, y;
};

// admissible parameters kept clear of the q-power degeneracies that the
// series continuation cannot absorb
Draw draw_params(Rng& rng, double q_lo = 0.3, double q_hi = 0.7,
                 double a_hi = 1.6)
{
    for (;;) {
        Draw d;
        d.q = rng.uniform(q_lo, q_hi);
        d.a = rng.log_uniform(0.3, a_hi);
        d.b = rng.log_uniform(0.05, std::min(0.9 * d.a, 0.9 / d.a));
        d.y = rng.log_uniform(0.5, 2.0);
        const double ab = d.a * d.b;
        if (near_q_power(cplx(ab), d.q, 3e-2)) continue;
        if (near_q_power(cplx(ab / d.q), d.q, 3e-2)) continue;
        if (near_q_power(cplx(d.a * d.a), d.q, 3e-2)) continue;
        return d;
    }
}

double eigen_residual(const GridFunction& f, const SpectralCoordinate& sc,
                      const JacobiParams& p, double q, long k_lo, long k_hi)
{
    GridFunction g = apply_L(f, p, q, OperatorVariant::calL);
    double worst = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
        double r = std::abs(g(k) - sc.lambda * f(k)) /
                   ((1.0 + std::abs(sc.lambda)) * (1.0 + std::abs(f(k))));
        worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace

TEST_CASE("phi at the origin is one")
{
    JacobiParams p{0.6, 0.3, 1.0};
    auto sc = SpectralCoordinate::unit_circle(M_PI / 3);
    CHECK(std::abs(phi_lambda(cplx(0.0), sc, p, 0.5) - 1.0) < 1e-15);
}

TEST_CASE("phi is symmetric in sigma and 1/sigma")
{
    Rng rng(0x9a2f11u);
    for (int i = 0; i < 10; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        cplx s = rng.complex_in_annulus(1.05, 2.0);
        auto sc = SpectralCoordinate::from_sigma(s);
        auto sc_inv = SpectralCoordinate::from_sigma(1.0 / s);
        for (long k : {-2L, 0L, 3L}) {
            cplx x = p.y * std::pow(d.q, (double)k);
            cplx v1 = phi_lambda(x, sc, p, d.q);
            cplx v2 = phi_lambda(x, sc_inv, p, d.q);
            CHECK(rel_err(v1, v2) < 1e-12);
        }
    }
}

TEST_CASE("L has the expected eigenvalue at the pinned point")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    auto sc = SpectralCoordinate::unit_circle(M_PI / 3);
    GridFunction f = phi_on_grid(sc, p, q);
    GridFunction Lf = apply_L(f, p, q, OperatorVariant::L);
    const cplx ev = eigenvalue_L(p.a, sc.lambda);
    CHECK(std::abs(ev - cplx(-0.76)) < 1e-15);
    CHECK(std::abs(Lf(0) - ev * f(0)) < 1e-9);
}

TEST_CASE("constant functions are annihilated by L")
{
    JacobiParams p{0.8, 0.25, 1.3};
    const double q = 0.4;
    GridFunction one(p.y, q, [](long) { return cplx(1.0); });
    GridFunction L1 = apply_L(one, p, q, OperatorVariant::L);
    for (long k = -4; k <= 4; ++k)
        CHECK(std::abs(L1(k)) == 0.0);
}

TEST_CASE("calL is L/(2a) plus the constant shift")
{
    Rng rng(0x51c3d2u);
    for (int i = 0; i < 20; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        std::vector<cplx> vals;
        for (int j = 0; j < 13; ++j)
            vals.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        GridFunction f = GridFunction::windowed(p.y, d.q, -6, vals);
        GridFunction Lf = apply_L(f, p, d.q, OperatorVariant::L);
        GridFunction Cf = apply_L(f, p, d.q, OperatorVariant::calL);
        const double shift = 0.5 * (d.a + 1.0 / d.a);
        for (long k = -5; k <= 5; ++k) {
            cplx want = Lf(k) / (2.0 * d.a) + shift * f(k);
            CHECK(std::abs(Cf(k) - want) < 1e-12 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("phi is an eigenfunction across the continuous spectrum")
{
    Rng rng(0x77ab19u);
    for (int i = 0; i < 50; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        auto sc = SpectralCoordinate::unit_circle(rng.uniform(0.15, M_PI - 0.15));
        GridFunction f = phi_on_grid(sc, p, d.q);
        CHECK(eigen_residual(f, sc, p, d.q, -5, 5) < 1e-8);
    }
}

TEST_CASE("Phi is an eigenfunction for the same eigenvalue")
{
    Rng rng(0x3fe0b7u);
    for (int i = 0; i < 20; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        cplx s = std::polar(rng.uniform(1.0, 1.8), rng.uniform(0.2, M_PI - 0.2));
        if (near_q_power(s * s, d.q, 3e-2) ||
            near_q_power(cplx(d.a * d.a) * s * s, d.q, 3e-2))
            continue;
        auto sc = SpectralCoordinate::from_sigma(s);
        GridFunction f = Phi_on_grid(s, p, d.q);
        CHECK(eigen_residual(f, sc, p, d.q, -2, 2) < 1e-9);
    }
}

TEST_CASE("eigenfunction relation persists at discrete spectral points")
{
    const double q = 0.5;
    JacobiParams pa{2.5, 0.1, 1.0};
    for (int j : {0, 1}) {
        auto sc = SpectralCoordinate::from_sigma(cplx(pa.a * std::pow(q, j)),
                                                 SpectralKind::discrete_a);
        GridFunction f = phi_on_grid(sc, pa, q);
        CHECK(eigen_residual(f, sc, pa, q, -5, 5) < 1e-8);
    }
    JacobiParams pb{0.6, 0.3, 1.0};
    for (int l : {0, 1, 2}) {
        const double by = pb.b * pb.y;
        auto sc = SpectralCoordinate::from_sigma(
            cplx(-std::pow(q, 1.0 - l) / by), SpectralKind::discrete_by);
        GridFunction f = phi_on_grid(sc, pb, q);
        CHECK(eigen_residual(f, sc, pb, q, -5, 5) < 1e-8);
    }
}

TEST_CASE("Phi approaches its normalization at large grid points")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    const cplx s = std::polar(1.0, M_PI / 4);
    double prev = 1e300;
    for (long k : {-10L, -20L, -30L, -40L}) {
        double r = std::abs(pow_int(p.a * s, k) * phi_Phi(k, s, p, q) - 1.0);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("the connection formula reconstructs phi")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    {
        const cplx s = std::polar(1.0, M_PI / 4);
        auto sc = SpectralCoordinate::from_sigma(s);
        const cplx cs = c_function(s, p, q);
        const cplx ci = c_function(1.0 / s, p, q);
        for (long k : {-3L, 0L, 3L}) {
            cplx lhs = phi_lambda(p.y * std::pow(q, (double)k), sc, p, q);
            cplx rhs = cs * phi_Phi(k, s, p, q) + ci * phi_Phi(k, 1.0 / s, p, q);
            CHECK(rel_err(rhs, lhs) < 1e-8);
        }
    }
    Rng rng(0xb8d20cu);
    for (int i = 0; i < 20; ++i) {
        Draw d = draw_params(rng);
        JacobiParams pp{d.a, d.b, d.y};
        const cplx s = std::polar(1.0, rng.uniform(0.2, M_PI - 0.2));
        auto sc = SpectralCoordinate::from_sigma(s);
        const cplx cs = c_function(s, pp, d.q);
        const cplx ci = c_function(1.0 / s, pp, d.q);
        for (long k : {-3L, 0L, 3L}) {
            cplx lhs = phi_lambda(pp.y * std::pow(d.q, (double)k), sc, pp, d.q);
            cplx rhs =
                cs * phi_Phi(k, s, pp, d.q) + ci * phi_Phi(k, 1.0 / s, pp, d.q);
            CHECK(rel_err(rhs, lhs) < 1e-7);
        }
    }
}

TEST_CASE("the connection coefficient vanishes on the discrete spectrum")
{
    const double q = 0.5;
    {
        JacobiParams p{2.5, 0.1, 1.0};
        for (int j : {0, 1}) {
            const cplx s = cplx(p.a * std::pow(q, j));
            CHECK(std::abs(c_function(s, p, q)) == 0.0);
            auto sc = SpectralCoordinate::from_sigma(s, SpectralKind::discrete_a);
            const cplx ci = c_function(1.0 / s, p, q);
            for (long k : {-2L, 0L, 2L}) {
                cplx lhs = phi_lambda(p.y * std::pow(q, (double)k), sc, p, q);
                CHECK(rel_err(ci * phi_Phi(k, 1.0 / s, p, q), lhs) < 1e-8);
            }
        }
    }
    {
        JacobiParams p{0.6, 0.3, 1.0};
        const double by = p.b * p.y;
        for (int l : {0, 1, 2}) {
            const cplx s = cplx(-std::pow(q, 1.0 - l) / by);
            CHECK(std::abs(c_function(s, p, q)) == 0.0);
            auto sc = SpectralCoordinate::from_sigma(s, SpectralKind::discrete_by);
            const cplx ci = c_function(1.0 / s, p, q);
            for (long k : {-2L, 0L, 2L}) {
                cplx lhs = phi_lambda(p.y * std::pow(q, (double)k), sc, p, q);
                CHECK(rel_err(ci * phi_Phi(k, 1.0 / s, p, q), lhs) < 1e-8);
            }
        }
    }
}

TEST_CASE("sigma-lambda roundtrip picks the canonical branch")
{
    Rng rng(0x15ef02u);
    for (int i = 0; i < 40; ++i) {
        cplx s = rng.complex_in_annulus(1.1, 2.5);
        auto sc = SpectralCoordinate::from_lambda(lambda_of_sigma(s));
        CHECK(std::abs(sc.lambda - lambda_of_sigma(sc.sigma)) < 1e-14);
        CHECK(std::abs(sc.sigma) >= 1.0 - 1e-12);
        CHECK(rel_err(sc.sigma, s) < 1e-9);
    }
    for (int i = 0; i < 20; ++i) {
        double theta = rng.uniform(0.05, M_PI - 0.05);
        auto sc = SpectralCoordinate::from_lambda(cplx(std::cos(theta)));
        CHECK(sc.sigma.imag() >= 0.0);
        CHECK(std::abs(std::abs(sc.sigma) - 1.0) < 1e-12);
        CHECK(std::abs(sc.lambda - lambda_of_sigma(sc.sigma)) < 1e-14);
    }
}

TEST_CASE("degenerate sigma is rejected")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    CHECK_THROWS_AS(phi_Phi(0, cplx(1.0 / std::sqrt(q)), p, q),
                    DegenerateParameterError);
    CHECK_THROWS_AS(phi_Phi(0, cplx(1.0), p, q), DegenerateParameterError);
    CHECK_THROWS_AS(c_function(cplx(1.0), p, q), DegenerateParameterError);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS((JacobiParams{0.3, 0.6, 1.0}).validate(),
                    InvalidParameterError);
    CHECK_THROWS_AS((JacobiParams{2.5, 0.5, 1.0}).validate(),
                    InvalidParameterError);
    CHECK_THROWS_AS((JacobiParams{0.6, 0.3, -1.0}).validate(),
                    InvalidParameterError);
    auto sc = SpectralCoordinate::unit_circle(1.0);
    CHECK_THROWS_AS(phi_lambda(cplx(1.0), sc, JacobiParams{-0.6, 0.3, 1.0}, 0.5),
                    InvalidParameterError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <vector>

#include <qjacobi/errors.hpp>
#include <qjacobi/transform.hpp>
#include "testutil.hpp"

using namespace qjacobi;
using testutil::near_q_power;
using testutil::naive_qpoch_inf;
using testutil::rel_err;
using testutil::Rng;

namespace {

struct Draw {
    double q, a, b, y;
};

// admissible transform parameters, kept away from the q-power sets where the
// density develops narrow features or the series continuation degenerates
Draw draw_params(Rng& rng, bool allow_a_above_one = true)
{
    for (;;) {
        Draw d;
        d.q = rng.uniform(0.3, 0.7);
        d.a = rng.log_uniform(0.35, allow_a_above_one ? 1.6 : 0.9);
        d.b = rng.log_uniform(0.05, std::min(0.85 * d.a, 0.85 / d.a));
        d.y = rng.log_uniform(0.5, 2.0);
        if (std::abs(d.a - 1.0) < 0.08) continue;
        const double ab = d.a * d.b, by = d.b * d.y;
        if (near_q_power(cplx(d.a), d.q, 0.1)) continue;
        if (near_q_power(cplx(d.b), d.q, 0.1)) continue;
        if (near_q_power(cplx(by), d.q, 0.1)) continue;
        if (near_q_power(cplx(by * by), d.q, 3e-2)) continue;
        if (near_q_power(cplx(ab), d.q, 3e-2)) continue;
        if (near_q_power(cplx(ab / d.q), d.q, 3e-2)) continue;
        if (near_q_power(cplx(d.a * d.a), d.q, 3e-2)) continue;
        if (d.a > 1.0 && near_q_power(cplx(d.a * d.q / d.b), d.q, 3e-2)) continue;
        return d;
    }
}

}  // namespace

TEST_CASE("weight at the base point matches the direct product")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    const double want =
        (naive_qpoch_inf(cplx(-0.5), q) / naive_qpoch_inf(cplx(-1.0), q)).real();
    CHECK(rel_err(cplx(weight(0, p, q)), cplx(want)) < 1e-13);
}

TEST_CASE("weight ratio telescopes")
{
    Rng rng(0x8812aau);
    for (int i = 0; i < 10; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        for (long k = -10; k < 10; ++k) {
            const double qk = std::pow(d.q, (double)k);
            const double want = d.a * d.b * (1.0 + d.y * qk) /
                                (1.0 + d.b * d.y * qk / d.a);
            const double got = weight(k + 1, p, d.q) / weight(k, p, d.q);
            CHECK(rel_err(cplx(got), cplx(want)) < 1e-12);
        }
    }
}

TEST_CASE("rewritten weight agrees with a long-double direct product far down")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    const long k = -30;
    long double num = 1.0L, den = 1.0L;
    const long double rnum = (long double)(p.b * p.y / p.a);
    const long double rden = (long double)p.y;
    long double qi = powl((long double)q, (long double)k);
    while (qi > 1e-25L) {
        num *= 1.0L + rnum * qi;
        den *= 1.0L + rden * qi;
        qi *= (long double)q;
    }
    const long double want =
        powl((long double)(p.a * p.b), (long double)k) * num / den;
    CHECK(std::abs((long double)weight(k, p, q) / want - 1.0L) < 1e-10L);
}

TEST_CASE("discrete family at a q^k appears only for a above one")
{
    {
        SpectralMeasure m(JacobiParams{0.6, 0.3, 1.0}, 0.5,
                          MeasureOptions{100, 1e-12, 200});
        for (const auto& at : m.atoms())
            CHECK(at.sc.kind != SpectralKind::discrete_a);
    }
    {
        SpectralMeasure m(JacobiParams{2.5, 0.1, 1.0}, 0.5,
                          MeasureOptions{100, 1e-12, 200});
        int n_a = 0;
        for (const auto& at : m.atoms())
            if (at.sc.kind == SpectralKind::discrete_a) {
                ++n_a;
                CHECK(at.sc.lambda.real() >= 1.0);
            }
        CHECK(n_a == 2);
    }
}

TEST_CASE("measure atoms are nonnegative and eigenvalues separated")
{
    Rng rng(0x5ac901u);
    for (int i = 0; i < 4; ++i) {
        Draw d = draw_params(rng);
        SpectralMeasure m(JacobiParams{d.a, d.b, d.y}, d.q,
                          MeasureOptions{80, 1e-12, 200});
        CHECK(m.normalization() > 0);
        CHECK(m.mass_tail() <= 1e-12);
        int n_by = 0;
        for (const auto& at : m.atoms()) {
            CHECK(at.weight >= 0.0);
            if (at.sc.kind == SpectralKind::discrete_by) {
                ++n_by;
                CHECK(at.sc.lambda.real() <= -1.0);
                CHECK(at.weight > 0.0);
            }
        }
        CHECK(n_by >= 3);
    }
}

TEST_CASE("continuous density vanishes quadratically at the endpoints")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    {
        const double r = density_at(0.005, p, q) / density_at(0.01, p, q);
        CHECK(std::abs(r - 0.25) < 0.03);
    }
    {
        const double r =
            density_at(M_PI - 0.005, p, q) / density_at(M_PI - 0.01, p, q);
        CHECK(std::abs(r - 0.25) < 0.03);
    }
}

TEST_CASE("smallest discrete sigma below the circle bound")
{
    Rng rng(0x77e2d1u);
    for (int i = 0; i < 4; ++i) {
        Draw d = draw_params(rng);
        SpectralMeasure m(JacobiParams{d.a, d.b, d.y}, d.q,
                          MeasureOptions{60, 1e-12, 200});
        double smallest = 1e300;
        for (const auto& at : m.atoms())
            if (at.sc.kind == SpectralKind::discrete_by)
                smallest = std::min(smallest, std::abs(at.sc.sigma));
        CHECK(smallest > 1.0);
        CHECK(smallest <= 1.0 / d.q + 1e-12);
    }
}

TEST_CASE("forward transform of deltas and linearity")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    auto sc = SpectralCoordinate::unit_circle(1.1);
    Sequence d0{{{0, cplx(1.0)}}};
    Sequence d5{{{5, cplx(1.0)}}};
    const cplx f0 = forward(d0, sc, p, q);
    const cplx f5 = forward(d5, sc, p, q);
    CHECK(rel_err(f0, phi_lambda(cplx(1.0), sc, p, q) * weight(0, p, q)) <
          1e-14);
    CHECK(rel_err(f5, phi_lambda(cplx(std::pow(q, 5.0)), sc, p, q) *
                          weight(5, p, q)) < 1e-14);
    Sequence mix{{{0, cplx(0.3, -0.2)}, {5, cplx(-1.1, 0.4)}}};
    const cplx fm = forward(mix, sc, p, q);
    CHECK(std::abs(fm - (cplx(0.3, -0.2) * f0 + cplx(-1.1, 0.4) * f5)) <
          1e-14 * (1.0 + std::abs(fm)));
}

TEST_CASE("eigenfunctions are orthogonal with the reciprocal weight norm")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    SpectralMeasure m(p, q, MeasureOptions{400, 1e-12, 200});
    cplx gram[7][7] = {};
    for (const auto& at : m.atoms()) {
        GridFunction phi = phi_on_grid(at.sc, p, q);
        for (int j = -3; j <= 3; ++j)
            for (int k = -3; k <= 3; ++k)
                gram[j + 3][k + 3] += at.weight * phi(j) * phi(k);
    }
    for (int j = -3; j <= 3; ++j)
        for (int k = -3; k <= 3; ++k) {
            const cplx want =
                (j == k) ? cplx(1.0 / weight(k, p, q)) : cplx(0.0);
            CHECK(std::abs(gram[j + 3][k + 3] - want) < 1e-6);
        }
}

TEST_CASE("transform roundtrip restores deltas and random sequences")
{
    JacobiParams p{0.6, 0.3, 1.0};
    const double q = 0.5;
    SpectralMeasure m(p, q, MeasureOptions{400, 1e-12, 200});
    {
        Sequence u{{{0, cplx(1.0)}}};
        Sequence back = roundtrip(u, m, -4, 4);
        for (long k = -4; k <= 4; ++k) {
            const cplx want = (k == 0) ? cplx(1.0) : cplx(0.0);
            CHECK(std::abs(back.entries.at(k) - want) < 1e-6);
        }
    }
    Rng rng(0x4cc212u);
    {
        Sequence u;
        for (long k = -2; k <= 2; ++k)
            u.entries[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        Sequence back = roundtrip(u, m, -4, 4);
        for (long k = -4; k <= 4; ++k) {
            const cplx want = u.entries.count(k) ? u.entries.at(k) : cplx(0.0);
            CHECK(std::abs(back.entries.at(k) - want) < 1e-6);
        }
    }
}

TEST_CASE("roundtrip and isometry across random parameter draws")
{
    Rng rng(0x90417bu);
    for (int i = 0; i < 6; ++i) {
        Draw d = draw_params(rng);
        JacobiParams p{d.a, d.b, d.y};
        SpectralMeasure m(p, d.q, MeasureOptions{400, 1e-12, 200});
        Sequence u;
        for (long k = -2; k <= 2; ++k)
            u.entries[k] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        Sequence back = roundtrip(u, m, -3, 3);
        double worst = 0.0;
        for (long k = -3; k <= 3; ++k) {
            const cplx want = u.entries.count(k) ? u.entries.at(k) : cplx(0.0);
            worst = std::max(worst, std::abs(back.entries.at(k) - want));
        }
        CHECK(worst < 1e-6);
        CHECK(parseval_gap(u, m) < 1e-6);
    }
}

TEST_CASE("sequence file format roundtrips and rejects malformed input")
{
    Sequence u{{{-2, cplx(0.5, -1.25)}, {0, cplx(1.0, 0.0)}, {7, cplx(0, 3)}}};
    std::stringstream ss;
    write_sequence(ss, u);
    Sequence v = read_sequence(ss);
    REQUIRE(v.entries.size() == u.entries.size());
    for (const auto& [k, val] : u.entries)
        CHECK(std::abs(v.entries.at(k) - val) == 0.0);

    {
        std::stringstream bad("0 1.0 0.0\n3 nope 0.0\n");
        try {
            read_sequence(bad);
            FAIL("expected a parse error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    {
        std::stringstream dup("0 1 0\n0 2 0\n");
        CHECK_THROWS_AS(read_sequence(dup), ConfigError);
    }
    {
        std::stringstream trail("0 1 0 extra\n");
        CHECK_THROWS_AS(read_sequence(trail), ConfigError);
    }
}

#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include <qjacobi/qjacobi.hpp>

namespace qjacobi {

// Norm weight of the sequence space at grid index k:
//   (ab)^k (-byq^k/a;q)_inf / (-yq^k;q)_inf.
// For k < 0 the products are rewritten through the theta shift so that no
// intermediate factor overflows; the value itself is O(a^{2k}).
double weight(long k, const JacobiParams& p, double q, double tol = 1e-8);

// finitely supported sequence u_k on the grid y*q^k
struct Sequence {
    std::map<long, cplx> entries;
};

// plain text, one record "k re im" per line
Sequence read_sequence(std::istream& in);
void write_sequence(std::ostream& out, const Sequence& u);

double norm_squared(const Sequence& u, const JacobiParams& p, double q);

// continuous spectral density on the unit circle, w(e^{i theta}) >= 0
double density_at(double theta, const JacobiParams& p, double q);

struct MeasureOptions {
    int quad_nodes = 400;
    double eps_mass = 1e-12;
    int max_mass_terms = 200;
    // enumerate at least this many terms of the infinite mass family before
    // the eps_mass cutoff may fire; integrands that decay more slowly than
    // the transform's own eigenfunctions need the deeper atoms
    int min_mass_terms = 0;
};

// The spectral measure: absolutely continuous part on lambda in [-1,1]
// discretized by Gauss-Legendre in theta, a finite mass family at
// sigma = a q^k > 1 (present only for a > 1), and an infinite mass family at
// sigma = -q^{1-k}/(by), truncated where its contribution to the transform
// drops below eps_mass.  Atom weights carry the full normalization, so
// integration against the measure is a plain weighted sum.
class SpectralMeasure {
public:
    struct Atom {
        SpectralCoordinate sc;
        double weight;
    };

    SpectralMeasure(const JacobiParams& p, double q,
                    const MeasureOptions& mo = {}, const EvalOptions& opt = {});

    const JacobiParams& params() const { return p_; }
    double qbase() const { return q_; }
    double normalization() const { return C_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    // relative size of the first discarded mass contribution
    double mass_tail() const { return mass_tail_; }

    cplx integrate(const std::function<cplx(const SpectralCoordinate&)>& f) const;

private:
    JacobiParams p_;
    double q_;
    double C_;
    double mass_tail_;
    std::vector<Atom> atoms_;
};

// (F u)(lambda) = sum_k u_k phi_lambda(y q^k) weight(k)
cplx forward(const Sequence& u, const SpectralCoordinate& sc,
             const JacobiParams& p, double q, const EvalOptions& opt = {});

// u_k = integral of g(lambda) phi_lambda(y q^k) dnu(lambda)
cplx inverse(const std::function<cplx(const SpectralCoordinate&)>& g, long k,
             const SpectralMeasure& m, const EvalOptions& opt = {});

// inverse(forward(u)) on the index window [k_lo, k_hi], evaluated in a single
// pass over the measure atoms
Sequence roundtrip(const Sequence& u, const SpectralMeasure& m, long k_lo,
                   long k_hi, const EvalOptions& opt = {});

// relative gap between ||u||^2 in the sequence space and the spectral-side
// integral of |F u|^2
double parseval_gap(const Sequence& u, const SpectralMeasure& m,
                    const EvalOptions& opt = {});

}  // namespace qjacobi

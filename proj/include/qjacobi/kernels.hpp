#pragma once

#include <iosfwd>

#include <qjacobi/summation.hpp>
#include <qjacobi/transform.hpp>

namespace qjacobi {

/* Spectral-side kernel connecting the transform for the parameter pair
   (a, b) with the transform for (a q^alpha, b q^alpha).  lam carries sigma,
   mu carries tau, both on the canonical branch |.| >= 1. */
struct DualKernelArgs {
    cplx t{};
    double alpha = 0.0;
    SpectralCoordinate lam;
    SpectralCoordinate mu;
    JacobiParams p;
};

/* Bilateral sum
     sum_k (abt)^k 2phi1(aq^at, aq^a/t; abq^{2a}; q, -byq^k/a)
                   2phi1(bs, b/s; ab; q, -yq^k),
   (s = sigma, t = tau, a in the exponents = alpha), absolutely convergent
   for |ab q^alpha sigma tau| < |abt| < 1. */
cplx dual_kernel_series(const DualKernelArgs& args, double q,
                        const EvalOptions& opt = {});

/* The same sum as a bilateral two-factor product sum: factor one carries
   (aq^a tau^{±1}; abq^{2a}) at argument -by/a, factor two (b sigma^{±1}; ab)
   at -y, multiplier z = abt.  The balance constraints hold identically, so
   every closed evaluation of the product sum applies; in particular the
   degenerate route at sigma = -q^{1-l}/(by) (where e*y = q^{1-l} exactly)
   remains usable after the direct series has left its annulus. */
PairedParams dual_kernel_paired(const DualKernelArgs& args, double q);

/* Closed evaluation as the sum of two very-well-poised 8W7 terms with
   argument q/(abt), each dressed with a ratio of infinite products; the
   second term is the image of the first under (a, b, y) -> (b, a, by/a).
   Valid for |t| > q/(ab) with t off the sequences a^2 q^{2alpha + Z>=0} and
   b^2 q^{2alpha + Z>=0} and b/a not an integer power of q; usable at
   discrete spectral points where the series diverges. */
cplx dual_kernel_closed(const DualKernelArgs& args, double q,
                        const EvalOptions& opt = {});

// the two summands of the closed evaluation, for conditioning gauges and
// report records
std::vector<cplx> dual_kernel_closed_terms(const DualKernelArgs& args, double q,
                                           const EvalOptions& opt = {});

/* Absolute residual of the composition law
     P_s(mu, nu; q^beta; aq^alpha, bq^alpha)
       = integral of P_{q^{2alpha} s/t}(., nu; q^{alpha+beta}; a, b)
                     P_t(., mu; q^alpha; a, b)  against the spectral measure,
   for q^alpha |tau| < |t| < 1/sqrt(ab) and
   q^{beta-alpha} |t rho| < |s| < t q^{-2alpha}/sqrt(ab).  The left side is
   summed directly; the integrand uses the closed form, which covers the
   measure's discrete atoms.

   Against the kernel product, the infinite mass family contributes terms
   shrinking only by ab q^{2 alpha} |s| per rung, far more slowly than the
   transform integrands the measure's own cutoff watches.  The estimated
   truncated tail must stay below tail_tol relative to the result, or
   MassTruncationError is thrown; build the measure with min_mass_terms
   large enough for the region in play. */
double dual_product_residual(cplx s, cplx t, double alpha, double beta,
                             const SpectralCoordinate& mu,
                             const SpectralCoordinate& nu,
                             const SpectralMeasure& m,
                             const EvalOptions& opt = {},
                             double tail_tol = 1e-6);

/* Sequence-side kernel connecting the transform for (a, b) based at y with
   the transform for (ar, bs) based at y/s.  Lower triangular: zero whenever
   k < l. */
struct TransmutationArgs {
    long k = 0;
    long l = 0;
    double r = 1.0;
    double s = 1.0;
    JacobiParams p;
};

/* (ab)^{-l} [(ab, rs, q^{k-l+1}, -yq^k;q)_inf /
              (q, abrs, rsq^{k-l}, -byq^k/(ar);q)_inf]
   x 3phi2(q^{l-k}, r, ar/b; rs, -arq^{1-k}/(by); q, q)  for k >= l, else 0.
   Requires r, s > 0 and rs < 1. */
cplx transmutation_kernel(const TransmutationArgs& args, double q,
                          const EvalOptions& opt = {});

/* Same value with the terminating 3phi2 rewritten at argument -byq^k/a:
     (-yq^l;q)_{k-l} / (-byq^l/(ar);q)_{k-l}
       x 3phi2(q^{l-k}, ar/b, s; rs, -yq^l; q, -byq^k/a). */
cplx transmutation_kernel_alt(const TransmutationArgs& args, double q,
                              const EvalOptions& opt = {});

// closed product form at r = 1 (the 3phi2 collapses to 1)
cplx transmutation_kernel_r1(long k, long l, double s, const JacobiParams& p,
                             double q, const EvalOptions& opt = {});

/// s -> 1 limit of the r = 1 kernel: the diagonal value at l = k
cplx transmutation_kernel_diagonal(long k, const JacobiParams& p, double q,
                                   const EvalOptions& opt = {});

/* Residual of the finite composition law
     sum_l P_{k,l}(a,b,y;r,s) P_{l,p}(ar,bs,y/s;t,u) weight(l; ar,bs,y/s)
       = P_{k,p}(a,b,y;rt,su),
   where the sum runs over the triangular window p <= l <= k (both sides
   vanish for k < p).  Returned relative to the right side's magnitude. */
double transmutation_product_residual(long k, long p_idx, double r, double s,
                                      double t, double u,
                                      const JacobiParams& jp, double q,
                                      const EvalOptions& opt = {});

/* The same composition law reduced to terminating 3phi2 factors only:
     sum_{l=0}^{p} [(tu;q)_{p-l}/(q;q)_{p-l}] 3phi2(q^{l-p}, t, art/(bs);
                    tu, -artq^{1+l-k}/(by); q, q)
                   [(rs;q)_l/(q;q)_l] 3phi2(q^{-l}, r, ar/b;
                    rs, -arq^{1-k}/(by); q, q)
                   (rs)^{p-l} t^l (-arq^{1-k}/(by);q)_l /
                                  (-artq^{1-k}/(by);q)_l
       = [(rstu;q)_p/(q;q)_p] 3phi2(q^{-p}, rt, art/b;
                    rstu, -artq^{1-k}/(by); q, q). */
double kernel_product_3phi2_residual(long k, long p, double r, double s,
                                     double t, double u,
                                     const JacobiParams& jp, double q,
                                     const EvalOptions& opt = {});

/* Relative residual of the expansion of the (ar, bs)-parameter function in
   the (a, b) family:
     2phi1(ar sigma, ar/sigma; abrs; q, -byq^l/(ar))
       = [(ab, rs;q)_inf/(q, abrs;q)_inf] sum_{k=0}^{K} (ab)^k
         [(q^{k+1}, -byq^{k+l}/a;q)_inf / (rsq^k, -byq^{k+l}/(ar);q)_inf]
         3phi2(q^{-k}, r, ar/b; rs, -arq^{1-l-k}/(by); q, q)
         2phi1(a sigma, a/sigma; ab; q, -byq^{l+k}/a),
   truncated at K; needs rs < 1 and ab < 1. */
double shifted_parameter_expansion_residual(long l, double r, double s,
                                            const SpectralCoordinate& sc,
                                            const JacobiParams& p, double q,
                                            long K, const EvalOptions& opt = {});

/* Relative residual of the q-Saalschutz connection-coefficient identity
     (b sigma, b/sigma;q)_m = (ab, b/a;q)_m sum_{k=0}^{m}
       [(q^{-m};q)_k q^k / (q, ab, q^{1-m}a/b;q)_k] (a sigma, a/sigma;q)_k. */
double saalschutz_residual(cplx a, cplx b, cplx sigma, long m, double q);

/// CSV table of kernel values over a (k, l) window: "k,l,value_re,value_im"
void write_kernel_table_csv(std::ostream& out, const JacobiParams& p, double r,
                            double s, long k_lo, long k_hi, long l_lo,
                            long l_hi, double q, const EvalOptions& opt = {});

}  // namespace qjacobi

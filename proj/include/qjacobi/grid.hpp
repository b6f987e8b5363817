#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <qjacobi/qseries.hpp>

namespace qjacobi {

// Function on the geometric grid x0*q^k, k in Z.  Values come from a callback
// and are memoized.  An optional support window makes everything outside it
// exactly zero, so operator sums over such functions terminate without tail
// estimates.  Note the orientation: smaller k means larger grid point.
class GridFunction {
public:
    GridFunction(double x0, double q, std::function<cplx(long)> eval,
                 std::optional<std::pair<long, long>> window = std::nullopt);

    // compactly supported, values[i] sitting at exponent k_first + i
    static GridFunction windowed(double x0, double q, long k_first,
                                 std::vector<cplx> values);

    cplx operator()(long k) const;
    double point(long k) const;  // x0 * q^k
    double base() const { return x0_; }
    double qbase() const { return q_; }

    bool has_window() const { return window_.has_value(); }
    long window_lo() const { return window_->first; }
    long window_hi() const { return window_->second; }

    // |f(x0 q^{-l})| <= c * rho^l for l >= 0, i.e. controlled growth toward
    // large grid points; used to truncate upward operator sums.
    struct Envelope {
        double c{0}, rho{0};
    };
    std::optional<Envelope> growth;
    // finite sup of |f| over k >= 0, used to truncate downward operator sums
    std::optional<double> sup_bound;

private:
    double x0_, q_;
    std::function<cplx(long)> eval_;
    std::shared_ptr<std::unordered_map<long, cplx>> cache_;
    std::optional<std::pair<long, long>> window_;
};

}  // namespace qjacobi

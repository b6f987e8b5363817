#include <qjacobi/grid.hpp>

#include <cmath>

#include <qjacobi/errors.hpp>

namespace qjacobi {

GridFunction::GridFunction(double x0, double q, std::function<cplx(long)> eval,
                           std::optional<std::pair<long, long>> window)
    : x0_(x0),
      q_(q),
      eval_(std::move(eval)),
      cache_(std::make_shared<std::unordered_map<long, cplx>>()),
      window_(window)
{
    if (!(x0_ > 0) || !(q_ > 0) || !(q_ < 1))
        throw InvalidParameterError("grid needs x0 > 0 and 0 < q < 1");
}

GridFunction GridFunction::windowed(double x0, double q, long k_first,
                                    std::vector<cplx> values)
{
    auto store = std::make_shared<std::vector<cplx>>(std::move(values));
    const long k_last = k_first + (long)store->size() - 1;
    GridFunction f(
        x0, q,
        [store, k_first](long k) { return (*store)[(size_t)(k - k_first)]; },
        std::make_pair(k_first, k_last));
    return f;
}

cplx GridFunction::operator()(long k) const
{
    if (window_ && (k < window_->first || k > window_->second))
        return {0.0, 0.0};
    auto it = cache_->find(k);
    if (it != cache_->end())
        return it->second;
    cplx v = eval_(k);
    cache_->emplace(k, v);
    return v;
}

double GridFunction::point(long k) const
{
    return x0_ * std::pow(q_, (double)k);
}

}  // namespace qjacobi

#include "firasym/filter.hpp"

#include <cmath>
#include <string>

#include "firasym/errors.hpp"

namespace firasym {

void FilterSpec::validate() const {
    if (coeffs.empty())
        throw ConfigError("filter: coefficient sequence must be nonempty");
    for (double h : coeffs)
        if (!std::isfinite(h))
            throw ConfigError("filter: non-finite coefficient");
    if (declared_tail_bound < 0.0)
        throw ConfigError("filter: negative tail bound");
}

FilterSpec FilterSpec::white() { return FilterSpec{{1.0}, 0.0}; }

FilterSpec FilterSpec::fir2(double h0, double h1) { return FilterSpec{{h0, h1}, 0.0}; }

FilterSpec FilterSpec::ar1(double a, double tail_tol) {
    if (std::abs(a) >= 1.0)
        throw ConfigError("ar1 filter requires |a| < 1, got a=" + std::to_string(a));
    if (a == 0.0) return white();
    // Smallest K with |a|^{K+1}/(1-|a|) <= tail_tol.
    const double aa = std::abs(a);
    int K = static_cast<int>(std::ceil(std::log(tail_tol * (1.0 - aa)) / std::log(aa))) - 1;
    if (K < 0) K = 0;
    while (std::pow(aa, K + 1) / (1.0 - aa) > tail_tol) ++K;
    FilterSpec spec;
    spec.coeffs.resize(K + 1);
    double p = 1.0;
    for (int k = 0; k <= K; ++k) {
        spec.coeffs[k] = p;
        p *= a;
    }
    spec.declared_tail_bound = std::pow(aa, K + 1) / (1.0 - aa);
    return spec;
}

}  // namespace firasym

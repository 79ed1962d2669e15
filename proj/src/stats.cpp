#include "firasym/stats.hpp"

#include <algorithm>
#include <cmath>

#include "firasym/errors.hpp"

namespace firasym::stats {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw PreconditionError("mean of empty sample");
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw PreconditionError("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> mean_cov(const Eigen::MatrixXd& rows) {
    const long count = rows.rows(), d = rows.cols();
    if (count < 2) throw PreconditionError("mean_cov needs at least two observations");
    Eigen::VectorXd mu(d);
    for (long j = 0; j < d; ++j) {
        KahanSum s;
        for (long i = 0; i < count; ++i) s.add(rows(i, j));
        mu(j) = s.value() / static_cast<double>(count);
    }
    Eigen::MatrixXd C(d, d);
    for (long a = 0; a < d; ++a) {
        for (long b = a; b < d; ++b) {
            KahanSum s;
            for (long i = 0; i < count; ++i) s.add((rows(i, a) - mu(a)) * (rows(i, b) - mu(b)));
            const double v = s.value() / static_cast<double>(count - 1);
            C(a, b) = v;
            C(b, a) = v;
        }
    }
    return {mu, C};
}

SlopeFit slope_regression(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw PreconditionError("slope_regression needs >= 3 matched points");
    const double n = static_cast<double>(x.size());
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        rss += r * r;
    }
    f.stderr_ = std::sqrt(rss / ((n - 2.0) * sxx));
    return f;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic_normal(std::vector<double> xs) {
    if (xs.empty()) throw PreconditionError("ks statistic of empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = normal_cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace firasym::stats

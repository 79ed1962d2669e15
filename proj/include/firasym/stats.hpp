#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace firasym::stats {

// Neumaier-compensated accumulator.
class KahanSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double mean(const std::vector<double>& xs);
double median(std::vector<double> xs);  // by value: sorts its copy

// Two-pass sample mean and covariance of row-vectors (one row per
// observation); covariance normalized by (count - 1).
std::pair<Eigen::VectorXd, Eigen::MatrixXd> mean_cov(const Eigen::MatrixXd& rows);

// Ordinary least squares slope of y on x, with its standard error.
struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
};
SlopeFit slope_regression(const std::vector<double>& x, const std::vector<double>& y);

// Kolmogorov-Smirnov distance between the sample and the standard normal CDF.
double ks_statistic_normal(std::vector<double> xs);

double normal_cdf(double x);

}  // namespace firasym::stats

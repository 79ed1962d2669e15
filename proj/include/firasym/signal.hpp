#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "firasym/filter.hpp"
#include "firasym/innovation.hpp"

namespace firasym {

// One realization of the FIR regression data. The input u is stored for
// t = 1-n .. N-1 (index t maps to u_store[t + n - 1]); v, y cover t = 1..N.
// Rows of phi are [u(t-1) ... u(t-n)], so Y = phi * theta0 + v exactly.
struct Dataset {
    int n = 0;
    long N = 0;
    Eigen::VectorXd theta0;
    std::vector<double> u_store;  // u(1-n) .. u(N-1)
    Eigen::VectorXd v;
    Eigen::VectorXd y;
    Eigen::MatrixXd phi;

    double u_at(long t) const { return u_store[static_cast<std::size_t>(t + n - 1)]; }
    const Eigen::VectorXd& Y() const { return y; }
};

// i.i.d. draws from the innovation distribution. Deterministic for fixed
// (spec, count, seed); scaling the variance by s^2 scales each draw by s.
std::vector<double> gen_innovations(const InnovationSpec& spec, std::size_t count,
                                    std::uint64_t stream_seed);

// u(t) = sum_{k=0}^{K} h(k) e(t-k). The input must carry K extra leading
// samples; output length = e.size() - K.
std::vector<double> filter_signal(const FilterSpec& filter, const std::vector<double>& e);

// Assemble the regression data from a supplied input (t = 1-n .. N-1,
// length N + n - 1) and noise (t = 1..N).
Dataset simulate_fir(const Eigen::VectorXd& theta0, const std::vector<double>& u,
                     const Eigen::VectorXd& v);

// Full pipeline: innovations -> filtered stationary input (with K + n
// warmup samples so no regressor touches a zero-padded region) -> FIR
// output. u and v come from disjoint streams derived from the two seeds.
Dataset make_dataset(const Eigen::VectorXd& theta0, const FilterSpec& filter,
                     const InnovationSpec& innov_u, const InnovationSpec& innov_v,
                     long N, std::uint64_t u_seed, std::uint64_t v_seed);

}  // namespace firasym

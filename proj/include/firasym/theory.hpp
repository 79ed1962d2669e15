#pragma once

#include <Eigen/Dense>
#include <utility>

#include "firasym/filter.hpp"
#include "firasym/innovation.hpp"

namespace firasym {

// Closed-form limit targets for one experiment configuration. The limit
// random objects themselves are represented only through these covariances.
struct TheoryLimits {
    Eigen::MatrixXd Sigma;      // n x n, Toeplitz R_u(|i-j|)
    Eigen::MatrixXd SigmaInv;   // n x n
    Eigen::MatrixXd CGamma;     // n^2 x n^2
    Eigen::MatrixXd ls_cov;     // sigma^2 SigmaInv
    double rho_var = 0.0;       // E[v^4] - sigma^4
    double snr_limit = 0.0;     // theta0' Sigma theta0 / sigma^2
    double sigma2 = 0.0;        // noise variance used
    double truncation_error_bound = 0.0;
};

// R_u(tau) = sigma_e^2 sum_k h(k) h(k+|tau|) over the truncated support.
double autocovariance(const FilterSpec& filter, double sigma_e2, long tau);

// Toeplitz input covariance, [Sigma]_{i,j} = R_u(|i-j|).
Eigen::MatrixXd sigma_matrix(const FilterSpec& filter, double sigma_e2, int n);

// (i,j) in 1..n^2 -> lag pair (k, l):
//   k = |floor((i-1)/n) - floor((j-1)/n)|
//   l = |i - j - floor((i-1)/n) n + floor((j-1)/n) n|
std::pair<long, long> index_map(long i, long j, int n);

// [CGamma]_{i,j} = (E[e^4]/sigma_e^4 - 3) R_u(k) R_u(l)
//   + sum_{|tau| <= T} [R_u(tau) R_u(tau+k-l) + R_u(tau+k) R_u(tau-l)].
Eigen::MatrixXd cgamma_matrix(const FilterSpec& filter, const InnovationSpec& innov, int n,
                              long tau_cutoff);

// Covariance of the distributional limit of sqrt(N)(theta_ls - theta0).
Eigen::MatrixXd ls_limit_covariance(const Eigen::MatrixXd& Sigma, double sigma2);

// Variance of the limit of sqrt(N)(V'V/N - sigma^2).
double rho_variance(const InnovationSpec& innov_v);

// a.s. limit of the sample SNR.
double snr_limit(const Eigen::VectorXd& theta0, const Eigen::MatrixXd& Sigma, double sigma2);

// Default tau cutoff: the truncated R_u vanishes beyond the filter order,
// so K + n covers every nonzero term of the lag sum exactly.
long default_tau_cutoff(const FilterSpec& filter, int n);

TheoryLimits compute_limits(const FilterSpec& filter, const InnovationSpec& innov_u,
                            const InnovationSpec& innov_v, const Eigen::VectorXd& theta0);

}  // namespace firasym

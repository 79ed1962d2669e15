#include "firasym/theory.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "firasym/errors.hpp"

namespace firasym {

double autocovariance(const FilterSpec& filter, double sigma_e2, long tau) {
    filter.validate();
    const long K = filter.order();
    const long a = std::labs(tau);
    if (a > K) return 0.0;
    double acc = 0.0;
    for (long k = 0; k + a <= K; ++k) acc += filter.coeffs[k] * filter.coeffs[k + a];
    return sigma_e2 * acc;
}

Eigen::MatrixXd sigma_matrix(const FilterSpec& filter, double sigma_e2, int n) {
    if (n < 1) throw PreconditionError("sigma_matrix: n >= 1 required");
    Eigen::VectorXd r(n);
    for (int t = 0; t < n; ++t) r(t) = autocovariance(filter, sigma_e2, t);
    Eigen::MatrixXd S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = r(std::abs(i - j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (lmin <= 1e-12 * lmax)
        throw ConfigError("sigma_matrix: degenerate filter, input covariance numerically singular");
    return S;
}

std::pair<long, long> index_map(long i, long j, int n) {
    const long n2 = static_cast<long>(n) * n;
    if (i < 1 || i > n2 || j < 1 || j > n2)
        throw PreconditionError("index_map: indices must lie in 1..n^2");
    const long fi = (i - 1) / n;
    const long fj = (j - 1) / n;
    const long k = std::labs(fi - fj);
    const long l = std::labs(i - j - fi * n + fj * n);
    return {k, l};
}

Eigen::MatrixXd cgamma_matrix(const FilterSpec& filter, const InnovationSpec& innov, int n,
                              long tau_cutoff) {
    if (tau_cutoff < 1) throw PreconditionError("cgamma_matrix: tau_cutoff >= 1 required");
    innov.validate();
    const double s2 = innov.variance;
    const double excess = innov.moment4 / (s2 * s2) - 3.0;  // E[e^4]/sigma_e^4 - 3
    const long n2 = static_cast<long>(n) * n;
    const long T = tau_cutoff;

    // Cache R_u on the range the lag sum touches.
    const long rmax = T + 2L * n + 2;
    Eigen::VectorXd r(rmax + 1);
    for (long t = 0; t <= rmax; ++t) r(t) = autocovariance(filter, s2, t);
    auto R = [&](long tau) {
        const long a = std::labs(tau);
        return a <= rmax ? r(a) : 0.0;
    };

    Eigen::MatrixXd C(n2, n2);
    for (long i = 1; i <= n2; ++i) {
        for (long j = i; j <= n2; ++j) {
            const auto [k, l] = index_map(i, j, n);
            double acc = 0.0;
            for (long tau = -T; tau <= T; ++tau)
                acc += R(tau) * R(tau + k - l) + R(tau + k) * R(tau - l);
            const double val = excess * R(k) * R(l) + acc;
            C(i - 1, j - 1) = val;
            C(j - 1, i - 1) = val;
        }
    }
    return C;
}

Eigen::MatrixXd ls_limit_covariance(const Eigen::MatrixXd& Sigma, double sigma2) {
    Eigen::LLT<Eigen::MatrixXd> llt(Sigma);
    if (llt.info() != Eigen::Success)
        throw EstimationError("ls_limit_covariance: Sigma is not positive definite");
    const long n = Sigma.rows();
    return sigma2 * llt.solve(Eigen::MatrixXd::Identity(n, n));
}

double rho_variance(const InnovationSpec& innov_v) {
    innov_v.validate();
    return innov_v.moment4 - innov_v.variance * innov_v.variance;
}

double snr_limit(const Eigen::VectorXd& theta0, const Eigen::MatrixXd& Sigma, double sigma2) {
    if (!(sigma2 > 0.0)) throw PreconditionError("snr_limit: sigma2 > 0 required");
    return theta0.dot(Sigma * theta0) / sigma2;
}

long default_tau_cutoff(const FilterSpec& filter, int n) {
    return static_cast<long>(filter.order()) + n + 1;
}

TheoryLimits compute_limits(const FilterSpec& filter, const InnovationSpec& innov_u,
                            const InnovationSpec& innov_v, const Eigen::VectorXd& theta0) {
    const int n = static_cast<int>(theta0.size());
    TheoryLimits L;
    L.Sigma = sigma_matrix(filter, innov_u.variance, n);
    Eigen::LLT<Eigen::MatrixXd> llt(L.Sigma);
    L.SigmaInv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    L.CGamma = cgamma_matrix(filter, innov_u, n, default_tau_cutoff(filter, n));
    L.sigma2 = innov_v.variance;
    L.ls_cov = L.sigma2 * L.SigmaInv;
    L.rho_var = rho_variance(innov_v);
    L.snr_limit = snr_limit(theta0, L.Sigma, L.sigma2);
    // Tail mass discarded by the filter truncation, propagated to R_u and
    // then to the worst C_Gamma entry (|excess| + 2(2T+1) products, each
    // with at least one tail factor).
    double ch = 0.0;
    for (double h : filter.coeffs) ch += std::abs(h);
    const double tb = filter.declared_tail_bound;
    const double r_tail = innov_u.variance * tb * (2.0 * ch + tb);
    const double r_max = innov_u.variance * ch * ch;
    const double excess = std::abs(innov_u.moment4 / (innov_u.variance * innov_u.variance) - 3.0);
    const long T = default_tau_cutoff(filter, n);
    L.truncation_error_bound = r_tail * (excess * 2.0 * r_max + 4.0 * (2.0 * T + 1) * r_max);
    return L;
}

}  // namespace firasym

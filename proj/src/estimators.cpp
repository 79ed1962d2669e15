#include "firasym/estimators.hpp"

#include <cmath>
#include <string>

#include "firasym/errors.hpp"

namespace firasym {

namespace {

constexpr double kRankTol = 1e-12;

Eigen::MatrixXd gram_inverse(const Eigen::MatrixXd& phi) {
    const long n = phi.cols();
    Eigen::MatrixXd G = phi.transpose() * phi;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    const Eigen::VectorXd d = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || d.minCoeff() <= kRankTol * d.maxCoeff())
        throw EstimationError("regressor matrix is rank deficient (Phi'Phi numerically singular)");
    return ldlt.solve(Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& M, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
        throw EstimationError(std::string(what) + " is not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(M.rows(), M.cols()));
}

}  // namespace

std::string to_string(KernelFamily f) {
    switch (f) {
        case KernelFamily::ridge: return "ridge";
        case KernelFamily::dc: return "dc";
        case KernelFamily::tc: return "tc";
    }
    return "?";
}

KernelFamily kernel_family_from_string(const std::string& s) {
    if (s == "ridge") return KernelFamily::ridge;
    if (s == "dc") return KernelFamily::dc;
    if (s == "tc") return KernelFamily::tc;
    throw ConfigError("unsupported kernel family: " + s);
}

void KernelSpec::validate() const {
    if (n < 1) throw ConfigError("kernel: order n >= 1 required");
    switch (family) {
        case KernelFamily::ridge:
            if (eta.size() != 1) throw ConfigError("ridge kernel takes one hyper-parameter");
            if (!(eta[0] > 0.0)) throw ConfigError("ridge kernel requires eta > 0");
            break;
        case KernelFamily::dc:
            if (eta.size() != 3) throw ConfigError("dc kernel takes [c, lambda, rho]");
            if (!(eta[0] > 0.0)) throw ConfigError("dc kernel requires c > 0");
            if (!(eta[1] > 0.0 && eta[1] < 1.0)) throw ConfigError("dc kernel requires 0 < lambda < 1");
            if (!(std::abs(eta[2]) <= 1.0)) throw ConfigError("dc kernel requires |rho| <= 1");
            break;
        case KernelFamily::tc:
            if (eta.size() != 2) throw ConfigError("tc kernel takes [c, lambda]");
            if (!(eta[0] > 0.0)) throw ConfigError("tc kernel requires c > 0");
            if (!(eta[1] > 0.0 && eta[1] < 1.0)) throw ConfigError("tc kernel requires 0 < lambda < 1");
            break;
    }
}

KernelSpec KernelSpec::ridge(double eta0, int n) {
    KernelSpec s{KernelFamily::ridge, {eta0}, n};
    s.validate();
    return s;
}
KernelSpec KernelSpec::dc(double c, double lambda, double rho, int n) {
    KernelSpec s{KernelFamily::dc, {c, lambda, rho}, n};
    s.validate();
    return s;
}
KernelSpec KernelSpec::tc(double c, double lambda, int n) {
    KernelSpec s{KernelFamily::tc, {c, lambda}, n};
    s.validate();
    return s;
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec) {
    spec.validate();
    const int n = spec.n;
    Eigen::MatrixXd P(n, n);
    switch (spec.family) {
        case KernelFamily::ridge:
            P = spec.eta[0] * Eigen::MatrixXd::Identity(n, n);
            break;
        case KernelFamily::dc: {
            const double c = spec.eta[0], lam = spec.eta[1], rho = spec.eta[2];
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    P(i - 1, j - 1) = c * std::pow(rho, std::abs(i - j)) *
                                      std::pow(lam, 0.5 * (i + j));
            break;
        }
        case KernelFamily::tc: {
            const double c = spec.eta[0], lam = spec.eta[1];
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    P(i - 1, j - 1) = c * std::pow(lam, std::max(i, j));
            break;
        }
    }
    return P;
}

namespace {

void check_deriv_index(const KernelSpec& spec, int k) {
    if (k < 1 || k > spec.dim())
        throw PreconditionError("kernel derivative: index out of range 1..p");
    if (spec.family == KernelFamily::dc && std::abs(spec.eta[2]) == 1.0)
        throw PreconditionError("kernel derivative: dc kernel at the |rho| = 1 boundary");
}

// d/deta_k of one DC entry, as a factor on the entry value would divide by
// zero at rho = 0, so everything is written out explicitly.
double dc_entry_d(const KernelSpec& s, int k, int i, int j) {
    const double c = s.eta[0], lam = s.eta[1], rho = s.eta[2];
    const int d = std::abs(i - j);
    const double m = 0.5 * (i + j);
    switch (k) {
        case 1: return std::pow(rho, d) * std::pow(lam, m);
        case 2: return c * std::pow(rho, d) * m * std::pow(lam, m - 1.0);
        case 3: return d == 0 ? 0.0 : c * d * std::pow(rho, d - 1) * std::pow(lam, m);
    }
    return 0.0;
}

double dc_entry_d2(const KernelSpec& s, int k, int l, int i, int j) {
    if (k > l) std::swap(k, l);
    const double c = s.eta[0], lam = s.eta[1], rho = s.eta[2];
    const int d = std::abs(i - j);
    const double m = 0.5 * (i + j);
    if (k == 1 && l == 1) return 0.0;
    if (k == 1 && l == 2) return std::pow(rho, d) * m * std::pow(lam, m - 1.0);
    if (k == 1 && l == 3) return d == 0 ? 0.0 : d * std::pow(rho, d - 1) * std::pow(lam, m);
    if (k == 2 && l == 2) return c * std::pow(rho, d) * m * (m - 1.0) * std::pow(lam, m - 2.0);
    if (k == 2 && l == 3)
        return d == 0 ? 0.0 : c * d * std::pow(rho, d - 1) * m * std::pow(lam, m - 1.0);
    // (3, 3)
    return d <= 1 ? 0.0 : c * d * (d - 1.0) * std::pow(rho, d - 2) * std::pow(lam, m);
}

}  // namespace

Eigen::MatrixXd kernel_derivative(const KernelSpec& spec, int k) {
    spec.validate();
    check_deriv_index(spec, k);
    const int n = spec.n;
    Eigen::MatrixXd D(n, n);
    switch (spec.family) {
        case KernelFamily::ridge:
            D = Eigen::MatrixXd::Identity(n, n);
            break;
        case KernelFamily::dc:
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) D(i - 1, j - 1) = dc_entry_d(spec, k, i, j);
            break;
        case KernelFamily::tc: {
            const double c = spec.eta[0], lam = spec.eta[1];
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    const int mx = std::max(i, j);
                    D(i - 1, j - 1) = (k == 1) ? std::pow(lam, mx)
                                               : c * mx * std::pow(lam, mx - 1);
                }
            break;
        }
    }
    return D;
}

Eigen::MatrixXd kernel_derivative2(const KernelSpec& spec, int k, int l) {
    spec.validate();
    check_deriv_index(spec, k);
    check_deriv_index(spec, l);
    const int n = spec.n;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    switch (spec.family) {
        case KernelFamily::ridge:
            break;  // P is linear in eta
        case KernelFamily::dc:
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) D(i - 1, j - 1) = dc_entry_d2(spec, k, l, i, j);
            break;
        case KernelFamily::tc: {
            const double c = spec.eta[0], lam = spec.eta[1];
            const int kk = std::min(k, l), ll = std::max(k, l);
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    const int mx = std::max(i, j);
                    if (kk == 1 && ll == 1)
                        D(i - 1, j - 1) = 0.0;
                    else if (kk == 1 && ll == 2)
                        D(i - 1, j - 1) = mx * std::pow(lam, mx - 1);
                    else
                        D(i - 1, j - 1) = c * mx * (mx - 1.0) * std::pow(lam, mx - 2);
                }
            break;
        }
    }
    return D;
}

Eigen::VectorXd ls_estimate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y) {
    const long n = phi.cols();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
    qr.setThreshold(kRankTol);
    if (qr.rank() < n)
        throw EstimationError("ls_estimate: Phi is rank deficient (rank " +
                              std::to_string(qr.rank()) + " < n = " + std::to_string(n) + ")");
    return qr.solve(Y);
}

double noise_variance_estimate(const Eigen::VectorXd& Y, const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& theta_ls) {
    const long N = phi.rows(), n = phi.cols();
    if (N <= n) throw PreconditionError("noise_variance_estimate: N > n required");
    return (Y - phi * theta_ls).squaredNorm() / static_cast<double>(N - n);
}

RlsFit rls_estimate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y,
                    const Eigen::MatrixXd& P, double sigma2) {
    if (sigma2 < 0.0) throw PreconditionError("rls_estimate: sigma2 >= 0 required");
    RlsFit fit;
    fit.P = P;
    fit.sigma2_used = sigma2;
    if (sigma2 == 0.0) {
        fit.theta_tr = ls_estimate(phi, Y);
        fit.s_hat_inv = spd_inverse(P, "kernel matrix P");
        return fit;
    }
    Eigen::LLT<Eigen::MatrixXd> pllt(P);
    if (pllt.info() != Eigen::Success)
        throw EstimationError(
            "rls_estimate: kernel matrix is singular; use a positive definite kernel");
    const long n = phi.cols();
    const Eigen::MatrixXd Pinv = pllt.solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd A = phi.transpose() * phi + sigma2 * Pinv;
    fit.theta_tr = Eigen::LDLT<Eigen::MatrixXd>(A).solve(phi.transpose() * Y);
    fit.s_hat_inv = spd_inverse(s_hat(P, sigma2, phi), "S-hat");
    return fit;
}

Eigen::VectorXd rls_estimate_nxn(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y,
                                 const Eigen::MatrixXd& P, double sigma2) {
    const long N = phi.rows();
    if (N > 200)
        throw PreconditionError("rls_estimate_nxn materializes an N x N matrix; N <= 200 only");
    if (!(sigma2 > 0.0))
        throw PreconditionError("rls_estimate_nxn: sigma2 > 0 required (Q must be invertible)");
    const Eigen::MatrixXd Q =
        phi * P * phi.transpose() + sigma2 * Eigen::MatrixXd::Identity(N, N);
    return P * phi.transpose() * Eigen::LLT<Eigen::MatrixXd>(Q).solve(Y);
}

Eigen::MatrixXd s_hat(const Eigen::MatrixXd& P, double sigma2_hat, const Eigen::MatrixXd& phi) {
    return P + sigma2_hat * gram_inverse(phi);
}

Eigen::MatrixXd pinv_derivative_1(const KernelSpec& spec, int k) {
    check_deriv_index(spec, k);
    const Eigen::MatrixXd Pinv = spd_inverse(kernel_matrix(spec), "kernel matrix P");
    return -Pinv * kernel_derivative(spec, k) * Pinv;
}

Eigen::MatrixXd shat_derivative_1(const KernelSpec& spec, int k, double sigma2_hat,
                                  const Eigen::MatrixXd& phi) {
    check_deriv_index(spec, k);
    const Eigen::MatrixXd Sinv =
        spd_inverse(s_hat(kernel_matrix(spec), sigma2_hat, phi), "S-hat");
    return -Sinv * kernel_derivative(spec, k) * Sinv;
}

Eigen::MatrixXd pinv_derivative_2(const KernelSpec& spec, int k, int l) {
    check_deriv_index(spec, k);
    check_deriv_index(spec, l);
    const Eigen::MatrixXd Pinv = spd_inverse(kernel_matrix(spec), "kernel matrix P");
    const Eigen::MatrixXd Dk = kernel_derivative(spec, k);
    const Eigen::MatrixXd Dl = kernel_derivative(spec, l);
    const Eigen::MatrixXd Dkl = kernel_derivative2(spec, k, l);
    return Pinv * Dl * Pinv * Dk * Pinv - Pinv * Dkl * Pinv + Pinv * Dk * Pinv * Dl * Pinv;
}

Eigen::MatrixXd shat_derivative_2(const KernelSpec& spec, int k, int l, double sigma2_hat,
                                  const Eigen::MatrixXd& phi) {
    check_deriv_index(spec, k);
    check_deriv_index(spec, l);
    const Eigen::MatrixXd Sinv =
        spd_inverse(s_hat(kernel_matrix(spec), sigma2_hat, phi), "S-hat");
    const Eigen::MatrixXd Dk = kernel_derivative(spec, k);
    const Eigen::MatrixXd Dl = kernel_derivative(spec, l);
    const Eigen::MatrixXd Dkl = kernel_derivative2(spec, k, l);
    return Sinv * Dl * Sinv * Dk * Sinv - Sinv * Dkl * Sinv + Sinv * Dk * Sinv * Dl * Sinv;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ridge_taylor_gap(double eta_hat, double eta_star,
                                                             double sigma2_hat,
                                                             const Eigen::MatrixXd& phi) {
    if (!(eta_hat > 0.0 && eta_star > 0.0))
        throw PreconditionError("ridge_taylor_gap: both eta values must be positive");
    if (sigma2_hat < 0.0) throw PreconditionError("ridge_taylor_gap: sigma2_hat >= 0 required");
    if (sigma2_hat == 0.0) {
        // S-hat collapses to eta_hat I; Phi plays no role.
        const int n = phi.cols() > 0 ? static_cast<int>(phi.cols()) : 1;
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
        return {(1.0 / eta_hat - 1.0 / eta_star) * I,
                -(eta_hat - eta_star) / (eta_hat * eta_star) * I};
    }
    const long n = phi.cols();
    const Eigen::MatrixXd Ginv = gram_inverse(phi);
    const Eigen::MatrixXd S =
        eta_hat * Eigen::MatrixXd::Identity(n, n) + sigma2_hat * Ginv;
    const Eigen::MatrixXd Sinv = spd_inverse(S, "S-hat");
    const Eigen::MatrixXd Pstar_inv = (1.0 / eta_star) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd left = Sinv - Pstar_inv;
    const Eigen::MatrixXd right =
        -(eta_hat - eta_star) * Sinv * Pstar_inv - sigma2_hat * Sinv * Ginv * Pstar_inv;
    return {left, right};
}

}  // namespace firasym

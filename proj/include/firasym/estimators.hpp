#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace firasym {

enum class KernelFamily { ridge, dc, tc };

std::string to_string(KernelFamily f);
KernelFamily kernel_family_from_string(const std::string& s);

// Kernel matrix family and hyper-parameters:
//   ridge: eta = [eta0], P = eta0 I
//   dc:    eta = [c, lambda, rho], P_ij = c rho^|i-j| lambda^{(i+j)/2}
//   tc:    eta = [c, lambda],      P_ij = c lambda^{max(i,j)}
// Indices i, j run 1..n.
struct KernelSpec {
    KernelFamily family = KernelFamily::ridge;
    std::vector<double> eta;
    int n = 0;

    int dim() const { return static_cast<int>(eta.size()); }
    void validate() const;

    static KernelSpec ridge(double eta0, int n);
    static KernelSpec dc(double c, double lambda, double rho, int n);
    static KernelSpec tc(double c, double lambda, int n);
};

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec);
// Analytic dP/deta_k and d^2P/(deta_k deta_l); k, l are 1-based.
Eigen::MatrixXd kernel_derivative(const KernelSpec& spec, int k);
Eigen::MatrixXd kernel_derivative2(const KernelSpec& spec, int k, int l);

struct RlsFit {
    Eigen::VectorXd theta_tr;
    Eigen::MatrixXd P;
    double sigma2_used = 0.0;
    Eigen::MatrixXd s_hat_inv;  // inverse of P + sigma2_hat (Phi'Phi)^{-1}
};

// Least squares (Phi'Phi)^{-1} Phi'Y via column-pivoted QR; throws
// EstimationError on rank deficiency.
Eigen::VectorXd ls_estimate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y);

// ||Y - Phi theta_ls||^2 / (N - n).
double noise_variance_estimate(const Eigen::VectorXd& Y, const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& theta_ls);

// Production n x n form (Phi'Phi + sigma2 P^{-1})^{-1} Phi'Y. sigma2 = 0
// short-circuits to LS.
RlsFit rls_estimate(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y,
                    const Eigen::MatrixXd& P, double sigma2);

// Equivalent form P Phi' (Phi P Phi' + sigma2 I_N)^{-1} Y. Materializes an
// N x N matrix; restricted to N <= 200 and used as a cross-check only.
Eigen::VectorXd rls_estimate_nxn(const Eigen::MatrixXd& phi, const Eigen::VectorXd& Y,
                                 const Eigen::MatrixXd& P, double sigma2);

// P + sigma2_hat (Phi'Phi)^{-1}.
Eigen::MatrixXd s_hat(const Eigen::MatrixXd& P, double sigma2_hat, const Eigen::MatrixXd& phi);

// dP^{-1}/deta_k = -P^{-1} (dP/deta_k) P^{-1}, and the same identity with
// S-hat in place of P.
Eigen::MatrixXd pinv_derivative_1(const KernelSpec& spec, int k);
Eigen::MatrixXd shat_derivative_1(const KernelSpec& spec, int k, double sigma2_hat,
                                  const Eigen::MatrixXd& phi);
// Three-term second-derivative expansions of P^{-1} and S-hat^{-1}.
Eigen::MatrixXd pinv_derivative_2(const KernelSpec& spec, int k, int l);
Eigen::MatrixXd shat_derivative_2(const KernelSpec& spec, int k, int l, double sigma2_hat,
                                  const Eigen::MatrixXd& phi);

// Ridge Taylor gap: returns {S(eta_hat)^{-1} - P(eta_star)^{-1},
// -(eta_hat - eta_star) S^{-1} P*^{-1} - sigma2_hat S^{-1} (Phi'Phi)^{-1} P*^{-1}};
// the two sides agree to machine precision.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> ridge_taylor_gap(double eta_hat, double eta_star,
                                                             double sigma2_hat,
                                                             const Eigen::MatrixXd& phi);

}  // namespace firasym

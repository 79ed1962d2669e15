// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. All tolerances are fixed here, not configurable.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "firasym/checks.hpp"
#include "firasym/ensemble.hpp"
#include "firasym/estimators.hpp"
#include "firasym/report.hpp"
#include "firasym/signal.hpp"
#include "firasym/theory.hpp"

using namespace firasym;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

std::mt19937_64 gen(424242);

Eigen::MatrixXd random_mat(long r, long c) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXd m(r, c);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < c; ++j) m(i, j) = nd(gen);
    return m;
}

Eigen::MatrixXd random_spd(int n) {
    const Eigen::MatrixXd G = random_mat(n, n);
    return G * G.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    const double tol = 1e-10;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 4;
        const long N = 50 + t;
        const Eigen::MatrixXd phi = random_mat(N, n);
        const Eigen::VectorXd theta0 = random_mat(n, 1);
        const Eigen::VectorXd V = 0.5 * random_mat(N, 1);
        const Eigen::VectorXd Y = phi * theta0 + V;
        const Eigen::MatrixXd P = random_spd(n);
        const double s2 = 0.1 + 0.01 * t;

        // LS decomposition.
        const Eigen::VectorXd th = ls_estimate(phi, Y);
        const Eigen::MatrixXd gram_inv = (phi.transpose() * phi).inverse();
        const Eigen::VectorXd rhs =
            theta0 + static_cast<double>(N) * gram_inv * (phi.transpose() * V / N);
        worst = std::max(worst, (th - rhs).norm() / th.norm());

        // RLS two-form equivalence (N <= 200).
        const Eigen::VectorXd a = rls_estimate(phi, Y, P, s2).theta_tr;
        const Eigen::VectorXd b = rls_estimate_nxn(phi, Y, P, s2);
        worst = std::max(worst, (a - b).norm() / a.norm());

        // Inverse gap identity.
        const Eigen::MatrixXd S = s_hat(P, s2, phi);
        const Eigen::MatrixXd Sinv = S.inverse();
        const Eigen::MatrixXd Pinv = P.inverse();
        const Eigen::MatrixXd lhs = Sinv - Pinv;
        const Eigen::MatrixXd r45 = -(1.0 / N) * s2 * Sinv *
                                    (static_cast<double>(N) * gram_inv) * Pinv;
        worst = std::max(worst, (lhs - r45).norm() / std::max(lhs.norm(), 1e-300));

        // Ridge Taylor gap.
        const auto [gl, gr] = ridge_taylor_gap(1.0 + 0.01 * t, 0.8, s2, phi);
        worst = std::max(worst, (gl - gr).norm() / std::max(gl.norm(), 1e-300));
    }
    report(1, "algebraic identities exact", worst < tol,
           "worst relative residual " + std::to_string(worst));
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst1 = 0.0, worst2 = 0.0;
    for (int t = 0; t < 20; ++t) {
        std::vector<KernelSpec> specs = {
            KernelSpec::ridge(0.3 + 2.0 * u01(gen), 4),
            KernelSpec::tc(0.3 + u01(gen), 0.3 + 0.5 * u01(gen), 4),
            KernelSpec::dc(0.3 + u01(gen), 0.3 + 0.5 * u01(gen), 0.8 * (u01(gen) - 0.4), 4),
        };
        for (const auto& spec : specs) {
            for (int k = 1; k <= spec.dim(); ++k) {
                KernelSpec up = spec, dn = spec;
                up.eta[k - 1] += 1e-5;
                dn.eta[k - 1] -= 1e-5;
                const Eigen::MatrixXd fd =
                    (kernel_matrix(up).inverse() - kernel_matrix(dn).inverse()) / 2e-5;
                worst1 = std::max(worst1,
                                  (pinv_derivative_1(spec, k) - fd).norm() / fd.norm());
                for (int l = 1; l <= spec.dim(); ++l) {
                    KernelSpec upl = spec, dnl = spec;
                    const double h = 1e-4;
                    upl.eta[l - 1] += h;
                    dnl.eta[l - 1] -= h;
                    const Eigen::MatrixXd fd2 =
                        (pinv_derivative_1(upl, k) - pinv_derivative_1(dnl, k)) / (2.0 * h);
                    worst2 = std::max(worst2, (pinv_derivative_2(spec, k, l) - fd2).norm() /
                                                  (1.0 + fd2.norm()));
                }
            }
        }
    }
    report(2, "derivative identities vs finite differences", worst1 < 1e-6 && worst2 < 1e-4,
           "first " + std::to_string(worst1) + ", second " + std::to_string(worst2));
}

// ------------------------------------------------------------- criteria 3 & 9
McConfig clt_config() {
    McConfig cfg;
    cfg.n = 3;
    cfg.theta0 = Eigen::VectorXd::Ones(3);
    cfg.filter = FilterSpec::ar1(0.5);
    cfg.innov_u = InnovationSpec::gaussian(1.0);
    cfg.innov_v = InnovationSpec::gaussian(1.0);
    cfg.N_grid = {4000};
    cfg.reps = 2000;
    cfg.master_seed = 20240817;
    return cfg;
}

McReport clt_report(int workers) {
    const Ensemble e = run_ensemble(clt_config(), workers);
    McReport r;
    r.master_seed = e.cfg.master_seed;
    r.append(check_clt(e));
    return r;
}

void criterion3(const McReport& r) {
    bool pass = true;
    std::string detail;
    for (const auto& v : r.verdicts) {
        if (v.criterion.rfind("KS", 0) == 0) continue;  // normality is extra
        if (!v.pass) {
            pass = false;
            detail += v.criterion + " measured " + std::to_string(v.measured) + "; ";
        }
    }
    report(3, "CLT covariance targets at N=4000, reps=2000", pass, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    auto run = [&](InnovationSpec iu, double target) {
        McConfig cfg;
        cfg.n = 1;
        cfg.theta0 = Eigen::VectorXd::Ones(1);
        cfg.filter = FilterSpec::white();
        cfg.innov_u = iu;
        cfg.innov_v = InnovationSpec::gaussian(1.0);
        cfg.N_grid = {4000};
        cfg.reps = 2000;
        cfg.master_seed = 31337;
        const Ensemble e = run_ensemble(cfg);
        double acc = 0.0;
        for (const auto& r : e.records[0]) {
            const double g = std::sqrt(4000.0) * (r.pp(0, 0) - e.limits.Sigma(0, 0));
            acc += g * g;
        }
        acc /= cfg.reps;
        return std::abs(acc - target) / target;
    };
    const double eg = run(InnovationSpec::gaussian(1.0), 2.0);
    const double eu = run(InnovationSpec::uniform(1.0), 0.8);
    report(4, "kurtosis term of CGamma (gaussian 2.0 vs uniform 0.8)", eg < 0.1 && eu < 0.1,
           "relative errors " + std::to_string(eg) + ", " + std::to_string(eu));
}

// ------------------------------------------------------------- criteria 5-8
McConfig grid_config(InnovationSpec iu, std::uint64_t seed, int reps) {
    McConfig cfg;
    cfg.n = 3;
    cfg.theta0 = Eigen::VectorXd::Ones(3);
    cfg.filter = FilterSpec::ar1(0.5);
    cfg.innov_u = iu;
    cfg.innov_v = iu;
    cfg.N_grid = {100, 400, 1600, 6400};
    cfg.reps = reps;
    cfg.master_seed = seed;
    return cfg;
}

bool all_pass(const std::vector<Verdict>& vs, std::string& detail) {
    bool ok = true;
    for (const auto& v : vs)
        if (!v.pass) {
            ok = false;
            detail += v.criterion + " measured " + std::to_string(v.measured) + "; ";
        }
    return ok;
}

void criteria5678() {
    const Ensemble gauss = run_ensemble(grid_config(InnovationSpec::gaussian(1.0), 7001, 500));
    std::string d5;
    report(5, "O_p rate slopes over N_grid, reps=500", all_pass(check_op_rates(gauss), d5), d5);

    // Eighth moments carry a visible finite-N bias at N=100 which shrinks
    // with the model order and input correlation, so the flatness check uses
    // a white input with n=2 and enough replications to pin the slope down.
    auto moment_config = [](InnovationSpec iu, std::uint64_t seed) {
        McConfig cfg = grid_config(iu, seed, 20000);
        cfg.n = 2;
        cfg.theta0 = Eigen::VectorXd::Ones(2);
        cfg.filter = FilterSpec::white();
        return cfg;
    };
    const Ensemble gauss20k =
        run_ensemble(moment_config(InnovationSpec::gaussian(1.0), 7002));
    const Ensemble unif20k =
        run_ensemble(moment_config(InnovationSpec::uniform(1.0), 7003));
    std::string d6;
    const bool p6 = all_pass(check_moment_bounds(gauss20k), d6) &
                    all_pass(check_moment_bounds(unif20k), d6);
    report(6, "moment-bound products flat (gaussian and uniform)", p6, d6);

    std::string d7;
    report(7, "S-hat inverse and derivative gap decay (ridge eta=1)",
           all_pass(check_shat_limits(gauss, KernelSpec::ridge(1.0, 3)), d7), d7);

    std::string d8;
    bool p8 = all_pass(check_trace_bounds(1000, 515), d8) &
              all_pass(check_logdet_bounds(1000, 616), d8) &
              all_pass(check_snr(gauss), d8);
    report(8, "lemma checkers and SNR limit", p8, d8);
}

void criterion9(const McReport& base) {
    const McReport other = clt_report(3);
    const std::string a = report_to_json(base).dump(2);
    const std::string b = report_to_json(other).dump(2);
    report(9, "byte-identical reports across worker counts", a == b);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    const McReport clt = clt_report(1);
    criterion3(clt);
    criterion4();
    criteria5678();
    criterion9(clt);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s (%d failed, %.1f s)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures, secs);
    return failures == 0 ? 0 : 1;
}

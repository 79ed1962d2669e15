#include "firasym/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "firasym/errors.hpp"
#include "firasym/rng.hpp"
#include "firasym/stats.hpp"

namespace firasym {

namespace {

using stats::KahanSum;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Slope regressions need at least 4 grid points with a real spread.
void require_grid(const Ensemble& e) {
    const auto& g = e.cfg.N_grid;
    if (g.size() < 4 || static_cast<double>(g.back()) / g.front() < 10.0)
        throw ConfigError("N_grid must have >= 4 points spanning >= 1 decade");
}

// Monotone-decay checks are meaningless on a narrow grid.
void require_wide_grid(const Ensemble& e) {
    const auto& g = e.cfg.N_grid;
    if (g.size() < 4 || static_cast<double>(g.back()) / g.front() < 100.0)
        throw ConfigError("N_grid must have >= 4 points spanning >= 2 decades");
}

// Median over replications of a per-replication scalar deviation.
std::vector<double> median_per_n(const Ensemble& e,
                                 const std::function<double(const RepRecord&)>& dev) {
    std::vector<double> out;
    for (const auto& reps : e.records) {
        std::vector<double> d;
        d.reserve(reps.size());
        for (const auto& r : reps) d.push_back(dev(r));
        out.push_back(stats::median(d));
    }
    return out;
}

std::vector<double> rms_per_n(const Ensemble& e,
                              const std::function<double(const RepRecord&)>& dev) {
    std::vector<double> out;
    for (const auto& reps : e.records) {
        KahanSum s;
        for (const auto& r : reps) {
            const double d = dev(r);
            s.add(d * d);
        }
        out.push_back(std::sqrt(s.value() / static_cast<double>(reps.size())));
    }
    return out;
}

std::vector<double> mean_per_n(const Ensemble& e,
                               const std::function<double(const RepRecord&)>& f) {
    std::vector<double> out;
    for (const auto& reps : e.records) {
        KahanSum s;
        for (const auto& r : reps) s.add(f(r));
        out.push_back(s.value() / static_cast<double>(reps.size()));
    }
    return out;
}

std::vector<double> log_grid(const Ensemble& e) {
    std::vector<double> out;
    for (long N : e.cfg.N_grid) out.push_back(std::log(static_cast<double>(N)));
    return out;
}

std::vector<double> logs(const std::vector<double>& xs) {
    std::vector<double> out;
    for (double x : xs) out.push_back(std::log(x));
    return out;
}

bool strictly_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] < xs[i - 1])) return false;
    return true;
}

Verdict as_verdict(const Ensemble& e, const std::string& name,
                   const std::vector<double>& medians, double tol) {
    Verdict v;
    v.suite = "as";
    v.criterion = name;
    v.seed = e.cfg.master_seed;
    v.tolerance = tol;
    v.measured = medians.back();
    v.target = 0.0;
    const bool mono = strictly_decreasing(medians);
    v.pass = mono && medians.back() < tol;
    std::ostringstream os;
    os << "medians along N_grid:";
    for (double m : medians) os << ' ' << fmt(m);
    if (!mono) os << " (not monotone)";
    v.detail = os.str();
    return v;
}

Verdict slope_verdict(const Ensemble& e, const std::string& suite, const std::string& name,
                      const std::vector<double>& values, double target_slope, double window) {
    const auto fit = stats::slope_regression(log_grid(e), logs(values));
    Verdict v;
    v.suite = suite;
    v.criterion = name;
    v.seed = e.cfg.master_seed;
    v.measured = fit.slope;
    v.target = target_slope;
    v.tolerance = window;
    v.pass = std::abs(fit.slope - target_slope) <= window;
    v.detail = "slope stderr " + fmt(fit.stderr_);
    return v;
}

double rel_frobenius(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
    return (got - want).norm() / want.norm();
}

// Mean over reps of f(r) as a matrix (raw second-moment accumulation).
Eigen::MatrixXd mean_matrix(const std::vector<RepRecord>& reps,
                            const std::function<Eigen::MatrixXd(const RepRecord&)>& f) {
    Eigen::MatrixXd acc = f(reps[0]);
    for (std::size_t i = 1; i < reps.size(); ++i) acc += f(reps[i]);
    return acc / static_cast<double>(reps.size());
}

// Max over entries of |mean| / SE(mean) for a per-rep matrix statistic.
double max_abs_zscore(const std::vector<RepRecord>& reps,
                      const std::function<Eigen::MatrixXd(const RepRecord&)>& f) {
    const Eigen::MatrixXd mu = mean_matrix(reps, f);
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(mu.rows(), mu.cols());
    for (const auto& r : reps) {
        const Eigen::MatrixXd d = f(r) - mu;
        var += d.cwiseProduct(d);
    }
    var /= static_cast<double>(reps.size() - 1);
    const double n = static_cast<double>(reps.size());
    double z = 0.0;
    for (long i = 0; i < mu.rows(); ++i)
        for (long j = 0; j < mu.cols(); ++j) {
            const double se = std::sqrt(var(i, j) / n);
            if (se > 0.0) z = std::max(z, std::abs(mu(i, j)) / se);
        }
    return z;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

}  // namespace

std::vector<Verdict> check_as_convergence(const Ensemble& e) {
    require_wide_grid(e);
    const auto& L = e.limits;
    const double s2 = L.sigma2;
    const double rel = e.cfg.tol.get("as_final", 0.05);
    // Scale for statistics whose limit is zero.
    const double pv_scale = std::sqrt(s2 * L.Sigma(0, 0));

    std::vector<Verdict> out;
    out.push_back(as_verdict(
        e, "PhiPhi/N -> Sigma",
        median_per_n(e, [&](const RepRecord& r) { return (r.pp - L.Sigma).norm(); }),
        rel * L.Sigma.norm()));
    out.push_back(as_verdict(
        e, "PhiV/N -> 0",
        median_per_n(e, [&](const RepRecord& r) { return r.pv.norm(); }), rel * pv_scale));
    out.push_back(as_verdict(
        e, "VV/N -> sigma2",
        median_per_n(e, [&](const RepRecord& r) { return std::abs(r.vv - s2); }), rel * s2));
    out.push_back(as_verdict(
        e, "N(PhiPhi)^-1 -> SigmaInv",
        median_per_n(e,
                     [&](const RepRecord& r) {
                         return (r.pp.inverse() - L.SigmaInv).norm();
                     }),
        rel * L.SigmaInv.norm()));
    const double th_scale = std::max(e.cfg.theta0.norm(), 1.0);
    out.push_back(as_verdict(
        e, "theta_ls -> theta0",
        median_per_n(e,
                     [&](const RepRecord& r) { return (r.theta_ls - e.cfg.theta0).norm(); }),
        rel * th_scale));
    out.push_back(as_verdict(
        e, "sigma2_hat -> sigma2",
        median_per_n(e, [&](const RepRecord& r) { return std::abs(r.sigma2_hat - s2); }),
        rel * s2));
    return out;
}

std::vector<Verdict> check_clt(const Ensemble& e) {
    if (e.cfg.reps < 1000)
        throw ConfigError("insufficient replications for distributional checks (reps >= 1000)");
    const auto& reps = e.records.back();
    const long N = e.cfg.N_grid.back();
    const double sN = std::sqrt(static_cast<double>(N));
    const auto& L = e.limits;
    const int n = e.cfg.n;
    const double s2 = L.sigma2;
    std::vector<Verdict> out;
    auto mk = [&](const std::string& name, double measured, double target, double tol,
                  bool pass, const std::string& detail = "") {
        out.push_back({"clt", name, pass, measured, target, tol, e.cfg.master_seed, detail});
    };

    // (a) E[Gamma (x) Gamma] vs CGamma.
    {
        const double tol = e.cfg.tol.get("clt_cgamma", 0.15);
        const Eigen::MatrixXd emp = mean_matrix(reps, [&](const RepRecord& r) {
            const Eigen::MatrixXd G = sN * (r.pp - L.Sigma);
            return kron(G, G);
        });
        const double err = rel_frobenius(emp, L.CGamma);
        mk("cov sqrtN vec(PhiPhi/N - Sigma) vs CGamma", err, 0.0, tol, err <= tol);
    }
    // (b) E[upsilon upsilon'] vs sigma^2 Sigma.
    {
        const double tol = e.cfg.tol.get("clt_upsilon", 0.10);
        const Eigen::MatrixXd emp = mean_matrix(reps, [&](const RepRecord& r) {
            const Eigen::VectorXd u = sN * r.pv;
            return Eigen::MatrixXd(u * u.transpose());
        });
        const double err = rel_frobenius(emp, s2 * L.Sigma);
        mk("cov sqrtN PhiV/N vs sigma2 Sigma", err, 0.0, tol, err <= tol);
    }
    // (c) Var of sqrt(N)(VV/N - sigma2) vs E[v^4] - sigma^4.
    {
        const double tol = e.cfg.tol.get("clt_rho", 0.10);
        KahanSum s;
        for (const auto& r : reps) {
            const double x = sN * (r.vv - s2);
            s.add(x * x);
        }
        const double emp = s.value() / static_cast<double>(reps.size());
        const double err = std::abs(emp - L.rho_var) / L.rho_var;
        mk("var sqrtN (VV/N - sigma2) vs E[v^4]-sigma^4", err, 0.0, tol, err <= tol);
    }
    // (d) Cov of sqrt(N)(theta_ls - theta0) vs sigma^2 SigmaInv.
    {
        const double tol = e.cfg.tol.get("clt_theta", 0.10);
        const Eigen::MatrixXd emp = mean_matrix(reps, [&](const RepRecord& r) {
            const Eigen::VectorXd d = sN * (r.theta_ls - e.cfg.theta0);
            return Eigen::MatrixXd(d * d.transpose());
        });
        const double err = rel_frobenius(emp, L.ls_cov);
        mk("cov sqrtN (theta_ls - theta0) vs sigma2 SigmaInv", err, 0.0, tol, err <= tol);
    }
    // (e) Cross moments of the limit triple are zero.
    {
        const double zmax = e.cfg.tol.get("clt_cross_z", 4.0);
        const double z1 = max_abs_zscore(reps, [&](const RepRecord& r) {
            const Eigen::VectorXd u = sN * r.pv;
            const Eigen::MatrixXd G = sN * (r.pp - L.Sigma);
            Eigen::MatrixXd M(static_cast<long>(n) * n, n);
            for (int a = 0; a < n; ++a)
                M.block(static_cast<long>(a) * n, 0, n, n) = u(a) * G;
            return M;
        });
        mk("cross moment upsilon x Gamma ~ 0 (|z| max)", z1, 0.0, zmax, z1 < zmax);
        const double z2 = max_abs_zscore(reps, [&](const RepRecord& r) {
            const double rho = sN * (r.vv - s2);
            return Eigen::MatrixXd(rho * sN * r.pv);
        });
        mk("cross moment rho upsilon ~ 0 (|z| max)", z2, 0.0, zmax, z2 < zmax);
        const double z3 = max_abs_zscore(reps, [&](const RepRecord& r) {
            const double rho = sN * (r.vv - s2);
            return Eigen::MatrixXd(rho * sN * (r.pp - L.Sigma));
        });
        mk("cross moment rho Gamma ~ 0 (|z| max)", z3, 0.0, zmax, z3 < zmax);
    }
    // (f) Normality of a fixed projection of sqrt(N)(theta_ls - theta0).
    {
        Eigen::VectorXd w = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
        const double scale = std::sqrt(w.dot(L.ls_cov * w));
        std::vector<double> z;
        z.reserve(reps.size());
        for (const auto& r : reps)
            z.push_back(sN * w.dot(r.theta_ls - e.cfg.theta0) / scale);
        const double ks = stats::ks_statistic_normal(std::move(z));
        const double crit = e.cfg.tol.get("clt_ks_mult", 1.95) /
                            std::sqrt(static_cast<double>(reps.size()));
        mk("KS normality of projected sqrtN (theta_ls - theta0)", ks, 0.0, crit, ks < crit);
    }
    return out;
}

std::vector<Verdict> check_op_rates(const Ensemble& e) {
    require_grid(e);
    const auto& L = e.limits;
    const double s2 = L.sigma2;
    const double win = e.cfg.tol.get("rate_window", 0.1);
    std::vector<Verdict> out;
    auto half = [&](const std::string& name,
                    const std::function<double(const RepRecord&)>& dev) {
        out.push_back(slope_verdict(e, "rates", name, rms_per_n(e, dev), -0.5, win));
    };
    half("theta_ls - theta0 ~ O_p(1/sqrtN)",
         [&](const RepRecord& r) { return (r.theta_ls - e.cfg.theta0).norm(); });
    half("PhiV/N ~ O_p(1/sqrtN)", [&](const RepRecord& r) { return r.pv.norm(); });
    half("sigma2_hat - sigma2 ~ O_p(1/sqrtN)",
         [&](const RepRecord& r) { return std::abs(r.sigma2_hat - s2); });
    half("PhiPhi/N - Sigma ~ O_p(1/sqrtN)",
         [&](const RepRecord& r) { return (r.pp - L.Sigma).norm(); });
    half("VV/N - sigma2 ~ O_p(1/sqrtN)",
         [&](const RepRecord& r) { return std::abs(r.vv - s2); });

    // Growth statistics: means of ||Phi'Phi||_F and V'V scale like N.
    {
        std::vector<double> growth;
        for (std::size_t ni = 0; ni < e.records.size(); ++ni) {
            const double Nd = static_cast<double>(e.cfg.N_grid[ni]);
            KahanSum s;
            for (const auto& r : e.records[ni]) s.add(Nd * r.pp.norm());
            growth.push_back(s.value() / static_cast<double>(e.records[ni].size()));
        }
        out.push_back(slope_verdict(e, "rates", "PhiPhi ~ O_p(N)", growth, 1.0, win));
    }
    {
        std::vector<double> growth;
        for (std::size_t ni = 0; ni < e.records.size(); ++ni) {
            const double Nd = static_cast<double>(e.cfg.N_grid[ni]);
            KahanSum s;
            for (const auto& r : e.records[ni]) s.add(Nd * r.vv);
            growth.push_back(s.value() / static_cast<double>(e.records[ni].size()));
        }
        out.push_back(slope_verdict(e, "rates", "VV ~ O_p(N)", growth, 1.0, win));
    }
    return out;
}

std::vector<Verdict> check_moment_bounds(const Ensemble& e) {
    require_grid(e);
    const auto& L = e.limits;
    const double s2 = L.sigma2;
    const double slope_win = e.cfg.tol.get("moment_slope", 0.15);
    const double ratio_max = e.cfg.tol.get("moment_ratio", 10.0);
    std::vector<Verdict> out;

    auto product = [&](const std::string& name, double npow,
                       const std::function<double(const RepRecord&)>& stat) {
        std::vector<double> vals;
        for (std::size_t ni = 0; ni < e.records.size(); ++ni) {
            const double Nd = static_cast<double>(e.cfg.N_grid[ni]);
            KahanSum s;
            for (const auto& r : e.records[ni]) s.add(stat(r));
            vals.push_back(std::pow(Nd, npow) * s.value() /
                           static_cast<double>(e.records[ni].size()));
        }
        const double ratio =
            *std::max_element(vals.begin(), vals.end()) /
            *std::min_element(vals.begin(), vals.end());
        Verdict v = slope_verdict(e, "moments", name, vals, 0.0, slope_win);
        v.pass = v.pass && ratio <= ratio_max;
        v.detail += "; max/min ratio " + fmt(ratio) + " (limit " + fmt(ratio_max) + ")";
        out.push_back(v);
    };

    product("N^2 E||PhiV/N||^4", 2.0,
            [&](const RepRecord& r) { return std::pow(r.pv.squaredNorm(), 2.0); });
    product("N^4 E||PhiV/N||^8", 4.0,
            [&](const RepRecord& r) { return std::pow(r.pv.squaredNorm(), 4.0); });
    product("N^2 E||PhiPhi/N - Sigma||^4", 2.0,
            [&](const RepRecord& r) { return std::pow((r.pp - L.Sigma).squaredNorm(), 2.0); });
    product("N^2 E|VV/N - sigma2|^4", 2.0,
            [&](const RepRecord& r) { return std::pow(r.vv - s2, 4.0); });
    product("N^4 E||PhiPhi/N - Sigma||^8", 4.0,
            [&](const RepRecord& r) { return std::pow((r.pp - L.Sigma).squaredNorm(), 4.0); });
    product("N^4 E|VV/N - sigma2|^8", 4.0,
            [&](const RepRecord& r) { return std::pow(r.vv - s2, 8.0); });
    return out;
}

std::vector<Verdict> check_shat_limits(const Ensemble& e, const KernelSpec& kernel) {
    require_grid(e);
    kernel.validate();
    if (kernel.n != e.cfg.n) throw ConfigError("kernel order must match the model order");
    const Eigen::MatrixXd P = kernel_matrix(kernel);
    const Eigen::MatrixXd Pinv =
        Eigen::LLT<Eigen::MatrixXd>(P).solve(Eigen::MatrixXd::Identity(P.rows(), P.cols()));
    const double win = e.cfg.tol.get("shat_slope", 0.15);
    const double final_tol = e.cfg.tol.get("shat_final", 0.01);

    auto shat_inv = [&](const RepRecord& r, long N) {
        const Eigen::MatrixXd gram_inv = r.pp.inverse() / static_cast<double>(N);
        const Eigen::MatrixXd S = P + r.sigma2_hat * gram_inv;
        return Eigen::MatrixXd(
            Eigen::LLT<Eigen::MatrixXd>(S).solve(Eigen::MatrixXd::Identity(S.rows(), S.cols())));
    };

    // Mean Frobenius gaps per N: inverse gap and first-derivative gaps
    // (summed over hyper-parameters).
    std::vector<double> gap, dgap;
    for (std::size_t ni = 0; ni < e.records.size(); ++ni) {
        const long N = e.cfg.N_grid[ni];
        KahanSum g, dg;
        for (const auto& r : e.records[ni]) {
            const Eigen::MatrixXd Sinv = shat_inv(r, N);
            g.add((Sinv - Pinv).norm());
            double acc = 0.0;
            for (int k = 1; k <= kernel.dim(); ++k) {
                const Eigen::MatrixXd D = kernel_derivative(kernel, k);
                acc += (-Sinv * D * Sinv - (-Pinv * D * Pinv)).norm();
            }
            dg.add(acc);
        }
        const double m = static_cast<double>(e.records[ni].size());
        gap.push_back(g.value() / m);
        dgap.push_back(dg.value() / m);
    }

    std::vector<Verdict> out;
    out.push_back(slope_verdict(e, "shat", "||Shat^-1 - P^-1|| ~ 1/N", gap, -1.0, win));
    out.push_back(slope_verdict(e, "shat", "first-derivative gap ~ 1/N", dgap, -1.0, win));
    std::vector<double> sgap, sdgap;
    for (std::size_t ni = 0; ni < gap.size(); ++ni) {
        const double sN = std::sqrt(static_cast<double>(e.cfg.N_grid[ni]));
        sgap.push_back(sN * gap[ni]);
        sdgap.push_back(sN * dgap[ni]);
    }
    out.push_back(slope_verdict(e, "shat", "sqrtN gap ~ 1/sqrtN", sgap, -0.5, win));
    out.push_back(slope_verdict(e, "shat", "sqrtN derivative gap ~ 1/sqrtN", sdgap, -0.5, win));
    {
        Verdict v;
        v.suite = "shat";
        v.criterion = "final inverse gap below tolerance";
        v.seed = e.cfg.master_seed;
        v.measured = gap.back();
        v.tolerance = final_tol;
        v.pass = strictly_decreasing(gap) && gap.back() < final_tol;
        out.push_back(v);
    }
    {
        // Diagnostic for item 2's hypothesis: reports norms, never fails.
        const auto& r = e.records.back().front();
        const Eigen::MatrixXd Sinv = shat_inv(r, e.cfg.N_grid.back());
        Verdict v;
        v.suite = "shat";
        v.criterion = "diagnostic ||Shat^-1||_F vs ||P^-1||_F";
        v.seed = e.cfg.master_seed;
        v.measured = Sinv.norm();
        v.target = Pinv.norm();
        v.pass = true;
        v.detail = "||Shat^-1||_F=" + fmt(Sinv.norm()) + " ||P^-1||_F=" + fmt(Pinv.norm());
        out.push_back(v);
    }
    return out;
}

namespace {

// Random SPD matrix with a prescribed condition number: random orthogonal
// basis times log-spaced eigenvalues.
Eigen::MatrixXd random_spd(std::mt19937_64& gen, int m, double cond) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXd G(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i, j) = nd(gen);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd U = qr.householderQ();
    Eigen::VectorXd lam(m);
    for (int i = 0; i < m; ++i)
        lam(i) = std::pow(cond, -static_cast<double>(i) / std::max(1, m - 1));
    return U * lam.asDiagonal() * U.transpose();
}

}  // namespace

std::vector<Verdict> check_trace_bounds(int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("check_trace_bounds: trials >= 1");
    std::mt19937_64 gen(rng::derive_seed(seed, 0, 0, rng::kLemmaStream));
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_int_distribution<int> dim(2, 6);
    std::uniform_real_distribution<double> logcond(0.0, 6.0);
    const double slack = 1e-10;
    int violations = 0;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int m = dim(gen);
        const double cond = std::pow(10.0, logcond(gen));
        const Eigen::MatrixXd B = random_spd(gen, m, cond);
        Eigen::MatrixXd A(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) A(i, j) = nd(gen);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
        const double l1 = es.eigenvalues().maxCoeff();
        const double lm = es.eigenvalues().minCoeff();
        const double cnd = l1 / lm;
        const Eigen::VectorXd umin = es.eigenvectors().col(0);
        const Eigen::MatrixXd Binv = B.inverse();

        // Tr(A' B^{-k} A) sandwich for k = 1, 2.
        for (int k = 1; k <= 2; ++k) {
            const Eigen::MatrixXd Bk = (k == 1) ? Binv : Eigen::MatrixXd(Binv * Binv);
            const double tr = (A.transpose() * Bk * A).trace();
            const double bl = umin.dot(A * A.transpose() * umin);
            const double bu = (A * A.transpose()).trace();
            const double lo = bl / std::pow(l1, k) * std::pow(cnd, k);
            const double hi = bu / std::pow(l1, k) * std::pow(cnd, k);
            const double viol = std::max(lo - tr, tr - hi) / std::max(1.0, std::abs(tr));
            worst = std::max(worst, viol);
            if (viol > slack) ++violations;
        }
        // Cubic sandwich for Tr(B^{-1} A' B^{-1} A B^{-1}).
        {
            const double tr = (Binv * A.transpose() * Binv * A * Binv).trace();
            const double bl = std::pow(umin.dot(A * umin), 2.0);
            const double bu = (A * A.transpose()).trace();
            const double lo = bl / std::pow(l1, 3) * std::pow(cnd, 3);
            const double hi = bu / std::pow(l1, 3) * std::pow(cnd, 3);
            const double viol = std::max(lo - tr, tr - hi) / std::max(1.0, std::abs(tr));
            worst = std::max(worst, viol);
            if (viol > slack) ++violations;
        }
    }
    Verdict v;
    v.suite = "lemmas";
    v.criterion = "trace sandwich on random SPD instances";
    v.seed = seed;
    v.measured = static_cast<double>(violations);
    v.tolerance = slack;
    v.pass = violations == 0;
    v.detail = "trials " + std::to_string(trials) + ", worst relative violation " + fmt(worst);
    return {v};
}

std::vector<Verdict> check_logdet_bounds(int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("check_logdet_bounds: trials >= 1");
    std::mt19937_64 gen(rng::derive_seed(seed, 1, 0, rng::kLemmaStream));
    std::uniform_int_distribution<int> dim(2, 8);
    std::uniform_real_distribution<double> logcond(0.0, 4.0);
    std::uniform_real_distribution<double> logscale(-2.0, 2.0);
    const double slack = 1e-10;
    int violations = 0;
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int m = dim(gen);
        const Eigen::MatrixXd A =
            std::pow(10.0, logscale(gen)) * random_spd(gen, m, std::pow(10.0, logcond(gen)));
        const double ld = std::log(A.determinant());
        const double lower = (Eigen::MatrixXd::Identity(m, m) - A.inverse()).trace();
        const double upper = (A - Eigen::MatrixXd::Identity(m, m)).trace();
        const double viol = std::max(lower - ld, ld - upper);
        worst = std::max(worst, viol);
        if (viol > slack) ++violations;
    }
    Verdict v;
    v.suite = "lemmas";
    v.criterion = "Tr(I - A^-1) <= logdet(A) <= Tr(A - I)";
    v.seed = seed;
    v.measured = static_cast<double>(violations);
    v.tolerance = slack;
    v.pass = violations == 0;
    v.detail = "trials " + std::to_string(trials) + ", worst violation " + fmt(worst);
    return {v};
}

std::vector<Verdict> check_snr(const Ensemble& e) {
    const double tol = e.cfg.tol.get("snr_rel", 0.05);
    std::vector<double> snr;
    for (const auto& r : e.records.back()) snr.push_back(r.snr_sample);
    const double med = stats::median(snr);
    const double target = e.limits.snr_limit;
    Verdict v;
    v.suite = "snr";
    v.criterion = "sample SNR median -> theta0' Sigma theta0 / sigma2";
    v.seed = e.cfg.master_seed;
    v.measured = med;
    v.target = target;
    v.tolerance = tol;
    v.pass = target == 0.0 ? med == 0.0 : std::abs(med - target) <= tol * target;
    v.detail = "at N=" + std::to_string(e.cfg.N_grid.back());
    return {v};
}

}  // namespace firasym

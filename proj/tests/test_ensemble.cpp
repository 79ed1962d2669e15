#include <doctest.h>

#include <cmath>

#include "firasym/checks.hpp"
#include "firasym/ensemble.hpp"
#include "firasym/errors.hpp"
#include "firasym/stats.hpp"

using namespace firasym;

namespace {

McConfig small_config() {
    McConfig cfg;
    cfg.n = 2;
    cfg.theta0 = Eigen::VectorXd::Ones(2);
    cfg.filter = FilterSpec::ar1(0.5);
    cfg.innov_u = InnovationSpec::gaussian(1.0);
    cfg.innov_v = InnovationSpec::gaussian(1.0);
    cfg.N_grid = {50, 100, 200, 400};
    cfg.reps = 20;
    cfg.master_seed = 77;
    return cfg;
}

bool records_equal(const Ensemble& a, const Ensemble& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i)
        for (std::size_t r = 0; r < a.records[i].size(); ++r) {
            const auto& x = a.records[i][r];
            const auto& y = b.records[i][r];
            if (x.pp != y.pp || x.pv != y.pv || x.vv != y.vv ||
                x.theta_ls != y.theta_ls || x.sigma2_hat != y.sigma2_hat ||
                x.snr_sample != y.snr_sample)
                return false;
        }
    return true;
}

}  // namespace

TEST_CASE("ensemble runs are bit-identical for a fixed seed") {
    const McConfig cfg = small_config();
    CHECK(records_equal(run_ensemble(cfg, 2), run_ensemble(cfg, 2)));
}

TEST_CASE("parallel ensemble matches the serial reference for any worker count") {
    const McConfig cfg = small_config();
    const Ensemble ref = run_ensemble_serial(cfg);
    for (int workers : {1, 2, 3, 7}) CHECK(records_equal(ref, run_ensemble(cfg, workers)));
}

TEST_CASE("pure-noise ensemble: sigma2_hat mean near 1") {
    McConfig cfg = small_config();
    cfg.theta0 = Eigen::VectorXd::Zero(2);
    cfg.N_grid = {400};
    cfg.reps = 200;
    const Ensemble e = run_ensemble(cfg, 0);
    std::vector<double> s2;
    for (const auto& r : e.records[0]) s2.push_back(r.sigma2_hat);
    const double m = stats::mean(s2);
    double var = 0.0;
    for (double x : s2) var += (x - m) * (x - m);
    var /= (s2.size() - 1);
    const double se = std::sqrt(var / s2.size());
    CHECK(std::abs(m - 1.0) < 3.0 * se);
    // theta0 = 0 makes the clean output identically zero, so SNR is exactly 0.
    CHECK(e.records[0][0].snr_sample == 0.0);
}

TEST_CASE("white-noise ensemble mean of PhiPhi/N is near the identity") {
    McConfig cfg = small_config();
    cfg.filter = FilterSpec::white();
    cfg.N_grid = {2000};
    cfg.reps = 300;
    const Ensemble e = run_ensemble(cfg, 0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    for (const auto& r : e.records[0]) m += r.pp;
    m /= static_cast<double>(cfg.reps);
    // SE per entry from the CGamma diagonal: sqrt(CGamma_ii / (reps N)).
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double cg = e.limits.CGamma(i * 2 + j, i * 2 + j);
            const double se = std::sqrt(cg / (cfg.reps * 2000.0));
            CHECK(std::abs(m(i, j) - (i == j ? 1.0 : 0.0)) < 3.5 * se);
        }
}

TEST_CASE("clt checker requires enough replications") {
    McConfig cfg = small_config();
    cfg.reps = 50;
    const Ensemble e = run_ensemble(cfg, 0);
    CHECK_THROWS_AS(check_clt(e), ConfigError);
}

TEST_CASE("grid guards reject short or narrow grids") {
    McConfig cfg = small_config();
    cfg.N_grid = {50, 100, 200};
    const Ensemble e = run_ensemble(cfg, 0);
    CHECK_THROWS_AS(check_as_convergence(e), ConfigError);
    CHECK_THROWS_AS(check_op_rates(e), ConfigError);
}

TEST_CASE("config validation rejects bad grids and reps") {
    McConfig cfg = small_config();
    cfg.N_grid = {50, 50};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.N_grid = {1};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = small_config();
    cfg.reps = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("monte carlo CGamma estimate is coherent with the closed form") {
    // Oracle coherence at moderate scale: empirical E[Gamma (x) Gamma] entry
    // (0,0) within 3 SE of the formula.
    McConfig cfg = small_config();
    cfg.N_grid = {5000};
    cfg.reps = 300;
    const Ensemble e = run_ensemble(cfg, 0);
    const double sN = std::sqrt(5000.0);
    std::vector<double> vals;
    for (const auto& r : e.records[0]) {
        const double g = sN * (r.pp(0, 0) - e.limits.Sigma(0, 0));
        vals.push_back(g * g);
    }
    const double m = stats::mean(vals);
    double var = 0.0;
    for (double x : vals) var += (x - m) * (x - m);
    var /= (vals.size() - 1);
    const double se = std::sqrt(var / vals.size());
    CHECK(std::abs(m - e.limits.CGamma(0, 0)) < 3.0 * se);
}

TEST_CASE("snr checker trivial scaling") {
    McConfig cfg = small_config();
    cfg.N_grid = {50, 100, 200, 400, 6400};
    cfg.reps = 50;
    const Ensemble e = run_ensemble(cfg, 0);
    const auto v = check_snr(e);
    REQUIRE(v.size() == 1);
    CHECK(v[0].pass);
    // Scaling sigma^2 by 4 quarters the limit.
    McConfig cfg4 = cfg;
    cfg4.innov_v = InnovationSpec::gaussian(4.0);
    const Ensemble e4 = run_ensemble(cfg4, 0);
    CHECK(e4.limits.snr_limit == doctest::Approx(e.limits.snr_limit / 4.0));
}

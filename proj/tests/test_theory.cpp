#include <doctest.h>

#include <cmath>
#include <random>

#include "firasym/checks.hpp"
#include "firasym/errors.hpp"
#include "firasym/signal.hpp"
#include "firasym/stats.hpp"
#include "firasym/theory.hpp"

using namespace firasym;

TEST_CASE("white noise autocovariance") {
    const auto f = FilterSpec::white();
    CHECK(autocovariance(f, 1.0, 0) == 1.0);
    CHECK(autocovariance(f, 1.0, 1) == 0.0);
}

TEST_CASE("ar1 autocovariance closed forms") {
    const auto f = FilterSpec::ar1(0.5);
    CHECK(autocovariance(f, 1.0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(autocovariance(f, 1.0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(autocovariance(f, 1.0, -2) == autocovariance(f, 1.0, 2));
}

TEST_CASE("sigma matrix: white noise gives the identity") {
    CHECK(sigma_matrix(FilterSpec::white(), 1.0, 2).isApprox(Eigen::MatrixXd::Identity(2, 2)));
}

TEST_CASE("sigma matrix: ar1 hand values, Toeplitz symmetry, positive spectrum") {
    const auto S = sigma_matrix(FilterSpec::ar1(0.5), 1.0, 2);
    CHECK(S(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(S(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(S(1, 0) == S(0, 1));

    const auto S5 = sigma_matrix(FilterSpec::ar1(0.8), 2.0, 5);
    for (int i = 0; i + 1 < 5; ++i)
        for (int j = 0; j + 1 < 5; ++j) CHECK(S5(i, j) == S5(i + 1, j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S5);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("index map hand evaluations") {
    CHECK(index_map(3, 3, 2) == std::pair<long, long>{0, 0});
    CHECK(index_map(1, 4, 2) == std::pair<long, long>{1, 1});
    CHECK(index_map(2, 3, 2) == std::pair<long, long>{1, 1});
    CHECK_THROWS_AS(index_map(0, 1, 2), PreconditionError);
    CHECK_THROWS_AS(index_map(1, 5, 2), PreconditionError);
    // Swapping (i, j) never changes the lag pair.
    for (long i = 1; i <= 9; ++i)
        for (long j = 1; j <= 9; ++j) CHECK(index_map(i, j, 3) == index_map(j, i, 3));
}

TEST_CASE("cgamma scalar hand values") {
    const auto w = FilterSpec::white();
    const auto Cg = cgamma_matrix(w, InnovationSpec::gaussian(1.0), 1, 5);
    CHECK(Cg(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    const auto Cu = cgamma_matrix(w, InnovationSpec::uniform(1.0), 1, 5);
    CHECK(Cu(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("cgamma symmetry and kurtosis cancellation") {
    const auto f = FilterSpec::ar1(0.5);
    const auto C = cgamma_matrix(f, InnovationSpec::gaussian(1.0), 3, 40);
    CHECK((C - C.transpose()).norm() < 1e-10);
    // A mixture with E[e^4] = 3 sigma_e^4 has the same limit covariance.
    const auto Cm = cgamma_matrix(f, InnovationSpec::mixture(1.0, 3.0), 3, 40);
    CHECK((C - Cm).norm() < 1e-10);
}

TEST_CASE("doubling the tau cutoff stays inside the truncation bound") {
    const Eigen::VectorXd theta0 = Eigen::VectorXd::Ones(2);
    const auto f = FilterSpec::ar1(0.7);
    const auto iu = InnovationSpec::gaussian(1.0);
    const auto limits = compute_limits(f, iu, InnovationSpec::gaussian(1.0), theta0);
    const long T = default_tau_cutoff(f, 2);
    const auto C1 = cgamma_matrix(f, iu, 2, T);
    const auto C2 = cgamma_matrix(f, iu, 2, 2 * T);
    CHECK((C1 - C2).lpNorm<Eigen::Infinity>() <= limits.truncation_error_bound + 1e-15);
}

TEST_CASE("cgamma entry against a long-run Monte Carlo oracle") {
    // N Var([Phi'Phi/N]_{11}) estimated over independent realizations.
    const auto f = FilterSpec::ar1(0.5);
    const auto iu = InnovationSpec::gaussian(1.0);
    const int n = 2;
    const long N = 50000;
    const int reps = 200;
    const Eigen::VectorXd theta0 = Eigen::VectorXd::Ones(n);
    std::vector<double> stat;
    for (int r = 0; r < reps; ++r) {
        const Dataset d = make_dataset(theta0, f, iu, InnovationSpec::gaussian(1.0), N,
                                       1000 + 2 * r, 5000 + 2 * r);
        const double m = (d.phi.col(0).squaredNorm()) / static_cast<double>(N);
        stat.push_back(std::sqrt(static_cast<double>(N)) *
                       (m - autocovariance(f, 1.0, 0)));
    }
    stats::KahanSum s2, s4;
    for (double x : stat) {
        s2.add(x * x);
        s4.add(x * x * x * x);
    }
    const double var = s2.value() / reps;
    const double se = std::sqrt((s4.value() / reps - var * var) / reps);
    const auto C = cgamma_matrix(f, iu, n, default_tau_cutoff(f, n));
    CHECK(std::abs(var - C(0, 0)) < 3.0 * se);
}

TEST_CASE("ls limit covariance hand values") {
    CHECK(ls_limit_covariance(Eigen::MatrixXd::Identity(3, 3), 1.0)
              .isApprox(Eigen::MatrixXd::Identity(3, 3)));
    Eigen::MatrixXd S(2, 2);
    S << 4.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0;
    const auto C = ls_limit_covariance(S, 0.25);
    CHECK(C(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(C(0, 1) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(ls_limit_covariance(S, 0.0).norm() == 0.0);
}

TEST_CASE("rho variance for the shipped families") {
    CHECK(rho_variance(InnovationSpec::gaussian(1.0)) == doctest::Approx(2.0));
    CHECK(rho_variance(InnovationSpec::uniform(1.0)) == doctest::Approx(0.8));
    CHECK(rho_variance(InnovationSpec::gaussian(2.0)) == doctest::Approx(8.0));
}

TEST_CASE("snr limit hand values") {
    Eigen::MatrixXd S(2, 2);
    S << 4.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0;
    Eigen::VectorXd th(2);
    th << 1.0, 1.0;
    CHECK(snr_limit(Eigen::VectorXd::Zero(2), S, 1.0) == 0.0);
    CHECK(snr_limit(th, S, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(snr_limit(th, Eigen::MatrixXd::Identity(2, 2), 0.5) ==
          doctest::Approx(th.squaredNorm() / 0.5));
}

TEST_CASE("log-det sandwich holds on random SPD matrices") {
    const auto vs = check_logdet_bounds(100, 9001);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].pass);
}

TEST_CASE("trace sandwich hand case B = diag(4,1), A = I, k = 1") {
    // Tr(B^-1) = 1.25 between B_L/4 * 4 = 1 and B_U/4 * 4 = 2.
    Eigen::MatrixXd B(2, 2);
    B << 4, 0, 0, 1;
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
    const double tr = (A.transpose() * B.inverse() * A).trace();
    const double l1 = 4.0, cond = 4.0;
    const Eigen::VectorXd umin = Eigen::Vector2d(0, 1);
    const double lo = umin.dot(A * A.transpose() * umin) / l1 * cond;
    const double hi = (A * A.transpose()).trace() / l1 * cond;
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(2.0));
    CHECK(tr == doctest::Approx(1.25));
    CHECK(lo <= tr);
    CHECK(tr <= hi);
}

TEST_CASE("trace sandwich has no violations over random trials") {
    const auto vs = check_trace_bounds(1000, 4242);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].pass);
}

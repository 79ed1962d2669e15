#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "firasym/ensemble.hpp"
#include "firasym/estimators.hpp"

namespace firasym {

struct Verdict {
    std::string suite;
    std::string criterion;
    bool pass = false;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string detail;
};

// "Almost sure" is operationalized as monotone decay of the ensemble median
// deviation along N_grid plus a final-N threshold; this caveat is carried
// verbatim into every report.
inline constexpr const char* kAsConvergenceNote =
    "almost-sure convergence is operationalized as monotone decay of ensemble "
    "deviation medians along N_grid plus a final-N threshold";

struct McReport {
    std::uint64_t master_seed = 0;
    int schema_version = 1;
    std::string note = kAsConvergenceNote;
    std::vector<Verdict> verdicts;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
    void append(std::vector<Verdict> more) {
        for (auto& v : more) verdicts.push_back(std::move(v));
    }
};

// Per-statistic monotone median decay + final threshold, the almost-sure
// convergence proxy. Requires >= 4 grid points spanning >= 2 decades.
std::vector<Verdict> check_as_convergence(const Ensemble& e);

// Distributional limits at the largest N: second moments of the
// sqrt(N)-scaled blocks against CGamma, sigma^2 Sigma, E[v^4]-sigma^4
// and sigma^2 Sigma^{-1}; near-zero cross moments; KS normality of a fixed
// one-dimensional projection. Requires reps >= 1000.
std::vector<Verdict> check_clt(const Ensemble& e);

// Log-log slope tests for the O_p(1/sqrt(N)) and O_p(N) statements.
std::vector<Verdict> check_op_rates(const Ensemble& e);

// Flatness of the N^2- and N^4-scaled moment products.
std::vector<Verdict> check_moment_bounds(const Ensemble& e);

// S-hat(eta)^{-1} -> P(eta)^{-1} and derivative-gap decay, plus the
// ||S^{-1}||_F vs ||P^{-1}||_F diagnostic.
std::vector<Verdict> check_shat_limits(const Ensemble& e, const KernelSpec& kernel);

// Deterministic trace sandwich on random SPD instances with condition
// numbers up to 1e6.
std::vector<Verdict> check_trace_bounds(int trials, std::uint64_t seed);

// Tr(I - A^{-1}) <= logdet(A) <= Tr(A - I) on random SPD instances.
std::vector<Verdict> check_logdet_bounds(int trials, std::uint64_t seed);

// Sample SNR against theta0' Sigma theta0 / sigma^2.
std::vector<Verdict> check_snr(const Ensemble& e);

}  // namespace firasym

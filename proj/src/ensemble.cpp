#include "firasym/ensemble.hpp"

#include <omp.h>

#include <stdexcept>
#include <string>

#include "firasym/errors.hpp"
#include "firasym/estimators.hpp"
#include "firasym/rng.hpp"
#include "firasym/stats.hpp"

namespace firasym {

void McConfig::validate() const {
    if (n < 1) throw ConfigError("mc config: n >= 1 required");
    if (theta0.size() != n) throw ConfigError("mc config: theta0 must have length n");
    filter.validate();
    innov_u.validate();
    innov_v.validate();
    if (N_grid.empty()) throw ConfigError("mc config: N_grid must be nonempty");
    long prev = n;
    for (long N : N_grid) {
        if (N <= prev)
            throw ConfigError("mc config: N_grid must be strictly increasing with min > n; "
                              "N > n required");
        prev = N;
    }
    if (reps < 2) throw ConfigError("mc config: reps >= 2 required");
}

RepRecord run_replication(const McConfig& cfg, long N, std::size_t n_index, std::size_t rep) {
    const std::uint64_t us =
        rng::derive_seed(cfg.master_seed, n_index, rep, rng::kInputStream);
    const std::uint64_t vs =
        rng::derive_seed(cfg.master_seed, n_index, rep, rng::kNoiseStream);
    const Dataset d = make_dataset(cfg.theta0, cfg.filter, cfg.innov_u, cfg.innov_v, N, us, vs);

    RepRecord r;
    const double Nd = static_cast<double>(N);
    r.pp = d.phi.transpose() * d.phi / Nd;
    r.pv = d.phi.transpose() * d.v / Nd;
    r.vv = d.v.squaredNorm() / Nd;
    r.theta_ls = ls_estimate(d.phi, d.y);
    r.sigma2_hat = noise_variance_estimate(d.y, d.phi, r.theta_ls);

    const Eigen::VectorXd clean = d.phi * cfg.theta0;
    const double cm = clean.mean();
    const double sample_var = (clean.array() - cm).square().sum() / (Nd - 1.0);
    r.snr_sample = sample_var / cfg.innov_v.variance;
    return r;
}

namespace {

Ensemble run_impl(const McConfig& cfg, int workers, bool parallel) {
    cfg.validate();
    Ensemble e;
    e.cfg = cfg;
    e.limits = compute_limits(cfg.filter, cfg.innov_u, cfg.innov_v, cfg.theta0);
    e.records.resize(cfg.N_grid.size());
    for (auto& v : e.records) v.resize(cfg.reps);

    // Flattened (N index, replication) work items; each slot is written by
    // exactly one iteration so the schedule never affects the result.
    const long total = static_cast<long>(cfg.N_grid.size()) * cfg.reps;
    std::string first_error;
    if (parallel) {
        const int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
        for (long w = 0; w < total; ++w) {
            const std::size_t ni = static_cast<std::size_t>(w) / cfg.reps;
            const std::size_t rep = static_cast<std::size_t>(w) % cfg.reps;
            try {
                e.records[ni][rep] = run_replication(cfg, cfg.N_grid[ni], ni, rep);
            } catch (const std::exception& ex) {
#pragma omp critical
                if (first_error.empty())
                    first_error = "replication (N=" + std::to_string(cfg.N_grid[ni]) +
                                  ", rep=" + std::to_string(rep) + "): " + ex.what();
            }
        }
    } else {
        for (long w = 0; w < total; ++w) {
            const std::size_t ni = static_cast<std::size_t>(w) / cfg.reps;
            const std::size_t rep = static_cast<std::size_t>(w) % cfg.reps;
            try {
                e.records[ni][rep] = run_replication(cfg, cfg.N_grid[ni], ni, rep);
            } catch (const std::exception& ex) {
                throw EstimationError("replication (N=" + std::to_string(cfg.N_grid[ni]) +
                                      ", rep=" + std::to_string(rep) + "): " + ex.what());
            }
        }
    }
    if (!first_error.empty()) throw EstimationError(first_error);
    return e;
}

}  // namespace

Ensemble run_ensemble(const McConfig& cfg, int workers) { return run_impl(cfg, workers, true); }

Ensemble run_ensemble_serial(const McConfig& cfg) { return run_impl(cfg, 0, false); }

}  // namespace firasym

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "firasym/signal.hpp"
#include "firasym/theory.hpp"

namespace firasym {

// Named tolerance table with built-in defaults; any entry can be overridden
// from the config file.
struct ToleranceTable {
    std::map<std::string, double> values;
    double get(const std::string& name, double fallback) const {
        auto it = values.find(name);
        return it == values.end() ? fallback : it->second;
    }
};

struct McConfig {
    int n = 0;
    Eigen::VectorXd theta0;
    FilterSpec filter;
    InnovationSpec innov_u;
    InnovationSpec innov_v;
    std::vector<long> N_grid;
    int reps = 0;
    std::uint64_t master_seed = 0;
    ToleranceTable tol;

    void validate() const;
};

// Per-replication statistics; everything downstream is derived from these.
struct RepRecord {
    Eigen::MatrixXd pp;        // Phi'Phi / N
    Eigen::VectorXd pv;        // Phi'V / N
    double vv = 0.0;           // V'V / N
    Eigen::VectorXd theta_ls;
    double sigma2_hat = 0.0;
    double snr_sample = 0.0;   // sample var of noise-free outputs / sigma^2
};

struct Ensemble {
    McConfig cfg;
    TheoryLimits limits;
    // records[N_index][rep]
    std::vector<std::vector<RepRecord>> records;
};

// One replication: pure function of (cfg, N index, rep index), so the
// ensemble is deterministic no matter how the loop is scheduled.
RepRecord run_replication(const McConfig& cfg, long N, std::size_t n_index, std::size_t rep);

// OpenMP-parallel production path. workers = 0 means "library default".
Ensemble run_ensemble(const McConfig& cfg, int workers = 0);

// Serial reference implementation kept for testing: must produce results
// bit-identical to run_ensemble for every worker count.
Ensemble run_ensemble_serial(const McConfig& cfg);

}  // namespace firasym

// Compares the serial reference ensemble against the OpenMP path and
// verifies they agree bit-for-bit while reporting the speedup.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "firasym/ensemble.hpp"

using namespace firasym;

namespace {

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    McConfig cfg;
    cfg.n = 3;
    cfg.theta0 = Eigen::VectorXd::Ones(3);
    cfg.filter = FilterSpec::ar1(0.5);
    cfg.innov_u = InnovationSpec::gaussian(1.0);
    cfg.innov_v = InnovationSpec::gaussian(1.0);
    cfg.N_grid = {400, 1600, 6400};
    cfg.reps = 200;
    cfg.master_seed = 1;

    Ensemble serial, parallel;
    const double ts = timed([&] { serial = run_ensemble_serial(cfg); });
    const double tp = timed([&] { parallel = run_ensemble(cfg); });

    bool identical = true;
    for (std::size_t i = 0; i < serial.records.size() && identical; ++i)
        for (std::size_t r = 0; r < serial.records[i].size() && identical; ++r)
            identical = serial.records[i][r].theta_ls == parallel.records[i][r].theta_ls &&
                        serial.records[i][r].pp == parallel.records[i][r].pp;

    std::printf("threads           : %d\n", omp_get_max_threads());
    std::printf("serial reference  : %.3f s\n", ts);
    std::printf("openmp            : %.3f s\n", tp);
    std::printf("speedup           : %.2fx\n", ts / tp);
    std::printf("bit-identical     : %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}

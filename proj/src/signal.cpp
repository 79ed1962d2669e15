#include "firasym/signal.hpp"

#include <cmath>
#include <random>
#include <string>

#include "firasym/errors.hpp"

namespace firasym {

std::vector<double> gen_innovations(const InnovationSpec& spec, std::size_t count,
                                    std::uint64_t stream_seed) {
    if (count < 1) throw PreconditionError("gen_innovations: count must be >= 1");
    spec.validate();
    std::mt19937_64 gen(stream_seed);
    std::vector<double> out(count);
    switch (spec.family) {
        case InnovationFamily::gaussian: {
            std::normal_distribution<double> d(0.0, 1.0);
            const double s = std::sqrt(spec.variance);
            for (auto& x : out) x = s * d(gen);
            break;
        }
        case InnovationFamily::uniform: {
            const double b = std::sqrt(3.0 * spec.variance);
            std::uniform_real_distribution<double> d(-1.0, 1.0);
            for (auto& x : out) x = b * d(gen);
            break;
        }
        case InnovationFamily::mixture: {
            std::normal_distribution<double> d(0.0, 1.0);
            std::uniform_real_distribution<double> sel(0.0, 1.0);
            const double amp = spec.mix_point_amp;
            const double gs = std::sqrt(spec.mix_gauss_var);
            for (auto& x : out) {
                const double pick = sel(gen);
                if (pick < 0.5)
                    x = (pick < 0.25) ? amp : -amp;
                else
                    x = gs * d(gen);
            }
            break;
        }
    }
    return out;
}

std::vector<double> filter_signal(const FilterSpec& filter, const std::vector<double>& e) {
    filter.validate();
    const std::size_t K = filter.coeffs.size() - 1;
    if (e.size() <= K)
        throw PreconditionError("filter_signal: input needs at least K+1 = " +
                                std::to_string(K + 1) + " samples, got " +
                                std::to_string(e.size()));
    const std::size_t out_len = e.size() - K;
    std::vector<double> u(out_len);
    const double* h = filter.coeffs.data();
    for (std::size_t t = 0; t < out_len; ++t) {
        double acc = 0.0;
        // u[t] corresponds to e index t + K; full window always available.
        for (std::size_t k = 0; k <= K; ++k) acc += h[k] * e[t + K - k];
        u[t] = acc;
    }
    return u;
}

Dataset simulate_fir(const Eigen::VectorXd& theta0, const std::vector<double>& u,
                     const Eigen::VectorXd& v) {
    const int n = static_cast<int>(theta0.size());
    const long N = v.size();
    if (n < 1) throw ConfigError("simulate_fir: model order must be >= 1");
    if (N <= n)
        throw ConfigError("simulate_fir: N > n required (Phi cannot be full column rank), got N=" +
                          std::to_string(N) + " n=" + std::to_string(n));
    if (static_cast<long>(u.size()) != N + n - 1)
        throw PreconditionError("simulate_fir: u must cover t = 1-n .. N-1 (length N+n-1)");

    Dataset d;
    d.n = n;
    d.N = N;
    d.theta0 = theta0;
    d.u_store = u;
    d.v = v;
    d.phi.resize(N, n);
    for (long t = 1; t <= N; ++t)
        for (int i = 1; i <= n; ++i) d.phi(t - 1, i - 1) = d.u_at(t - i);
    d.y = d.phi * theta0 + v;
    return d;
}

Dataset make_dataset(const Eigen::VectorXd& theta0, const FilterSpec& filter,
                     const InnovationSpec& innov_u, const InnovationSpec& innov_v,
                     long N, std::uint64_t u_seed, std::uint64_t v_seed) {
    const int n = static_cast<int>(theta0.size());
    const std::size_t K = filter.coeffs.size() - 1;
    // K extra innovations ahead of t = 1-n so u(1-n) is already a full
    // convolution of the stationary process.
    const std::size_t e_len = static_cast<std::size_t>(N + n - 1) + K;
    std::vector<double> e = gen_innovations(innov_u, e_len, u_seed);
    std::vector<double> u = filter_signal(filter, e);
    std::vector<double> vv = gen_innovations(innov_v, static_cast<std::size_t>(N), v_seed);
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(vv.data(), static_cast<long>(vv.size()));
    return simulate_fir(theta0, u, v);
}

}  // namespace firasym

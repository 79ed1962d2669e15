#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "firasym/checks.hpp"
#include "firasym/dataset_io.hpp"
#include "firasym/ensemble.hpp"
#include "firasym/errors.hpp"
#include "firasym/estimators.hpp"
#include "firasym/report.hpp"
#include "firasym/rng.hpp"
#include "firasym/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace firasym;

namespace {

// Exit codes: 0 pass, 1 scientific fail, 2 config error, 3 I/O error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

json load_config(const std::string& path) {
    const std::string text = read_text_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);
    return j;
}

std::string out_dir(const std::string& flag) {
    // Environment override is the one allowed out-of-config knob.
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("FIRASYM_OUT")) return env;
    return ".";
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed, bool seed_set,
                 const std::string& out, bool truth) {
    const json cfg = load_config(config_path);
    McConfig mc;  // reuse the field parsing; N_grid not needed here
    const int n = static_cast<int>(cfg.at("n").get<double>());
    Eigen::VectorXd theta0(n);
    {
        const auto& th = cfg.at("theta0");
        if (static_cast<int>(th.size()) != n) throw ConfigError("theta0 must have length n");
        for (int i = 0; i < n; ++i) theta0(i) = th[i].get<double>();
    }
    const FilterSpec filter = parse_filter(cfg.at("filter"));
    const InnovationSpec iu = parse_innovation(cfg.at("innov_u"));
    const InnovationSpec iv = parse_innovation(cfg.at("innov_v"));
    const long N = cfg.at("N").get<long>();
    if (N <= n) throw ConfigError("N > n required");
    const std::uint64_t master = seed_set ? seed : cfg.value("seed", std::uint64_t{0});

    const std::uint64_t us = rng::derive_seed(master, 0, 0, rng::kInputStream);
    const std::uint64_t vs = rng::derive_seed(master, 0, 0, rng::kNoiseStream);
    const Dataset d = make_dataset(theta0, filter, iu, iv, N, us, vs);

    const fs::path dir = out_dir(out);
    fs::create_directories(dir);
    const fs::path csv = dir / "dataset.csv";
    write_dataset_csv(csv.string(), d, master);
    if (truth) write_truth_sidecar((dir / "dataset.truth.json").string(), d);

    const Eigen::VectorXd clean = d.phi * theta0;
    const double sample_var =
        (clean.array() - clean.mean()).square().sum() / static_cast<double>(N - 1);
    std::cout << "wrote " << csv.string() << "  n=" << n << " N=" << N
              << " snr_sample=" << sample_var / iv.variance << "\n";
    (void)mc;
    return kExitPass;
}

int cmd_estimate(const std::string& config_path, const std::string& data_path,
                 const std::string& out) {
    const json cfg = load_config(config_path);
    const Dataset d = read_dataset_csv(data_path);

    const Eigen::VectorXd theta_ls = ls_estimate(d.phi, d.y);
    const double sigma2_hat = noise_variance_estimate(d.y, d.phi, theta_ls);

    json rep;
    rep["schema_version"] = 1;
    rep["n"] = d.n;
    rep["N"] = d.N;
    rep["theta_ls"] = std::vector<double>(theta_ls.data(), theta_ls.data() + d.n);
    rep["sigma2_hat"] = sigma2_hat;

    if (cfg.contains("kernel")) {
        const KernelSpec kspec = parse_kernel(cfg.at("kernel"), d.n);
        const Eigen::MatrixXd P = kernel_matrix(kspec);
        double sigma2 = sigma2_hat;
        if (cfg.contains("sigma2")) sigma2 = cfg.at("sigma2").get<double>();
        const RlsFit fit = rls_estimate(d.phi, d.y, P, sigma2);
        rep["kernel"] = {{"family", to_string(kspec.family)}, {"eta", kspec.eta}};
        rep["sigma2_used"] = sigma2;
        rep["theta_tr"] =
            std::vector<double>(fit.theta_tr.data(), fit.theta_tr.data() + d.n);
    }
    if (cfg.contains("filter") && cfg.contains("innov_u") && cfg.contains("innov_v")) {
        // Asymptotic standard errors from sigma^2 Sigma^{-1} / N.
        const FilterSpec filter = parse_filter(cfg.at("filter"));
        const InnovationSpec iu = parse_innovation(cfg.at("innov_u"));
        const Eigen::MatrixXd Sigma = sigma_matrix(filter, iu.variance, d.n);
        const Eigen::MatrixXd cov = ls_limit_covariance(Sigma, sigma2_hat);
        std::vector<double> se(d.n);
        for (int i = 0; i < d.n; ++i)
            se[i] = std::sqrt(cov(i, i) / static_cast<double>(d.N));
        rep["theta_ls_stderr"] = se;
    }

    const fs::path dir = out_dir(out);
    fs::create_directories(dir);
    const fs::path path = dir / "estimate.json";
    write_text_file(path.string(), rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";
    return kExitPass;
}

int cmd_verify(const std::string& config_path, std::uint64_t seed, bool seed_set,
               const std::string& suites_csv, const std::string& out, int workers) {
    const json cfg = load_config(config_path);
    McConfig mc = parse_mc_config(cfg);
    if (seed_set) mc.master_seed = seed;

    std::set<std::string> suites;
    {
        std::stringstream ss(suites_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) suites.insert(tok);
    }
    const std::set<std::string> known = {"as", "clt", "rates", "moments", "shat", "lemmas", "snr"};
    if (suites.empty()) throw ConfigError("suite selection must be nonempty");
    for (const auto& s : suites)
        if (!known.count(s)) throw ConfigError("unknown suite: " + s);

    McReport report;
    report.master_seed = mc.master_seed;

    const bool needs_ensemble =
        suites.count("as") || suites.count("clt") || suites.count("rates") ||
        suites.count("moments") || suites.count("shat") || suites.count("snr");
    Ensemble e;
    if (needs_ensemble) e = run_ensemble(mc, workers);

    if (suites.count("as")) report.append(check_as_convergence(e));
    if (suites.count("clt")) report.append(check_clt(e));
    if (suites.count("rates")) report.append(check_op_rates(e));
    if (suites.count("moments")) report.append(check_moment_bounds(e));
    if (suites.count("shat")) {
        KernelSpec kernel = cfg.contains("kernel") ? parse_kernel(cfg.at("kernel"), mc.n)
                                                   : KernelSpec::ridge(1.0, mc.n);
        report.append(check_shat_limits(e, kernel));
    }
    if (suites.count("lemmas")) {
        const int trials = static_cast<int>(cfg.value("lemma_trials", 1000));
        report.append(check_trace_bounds(trials, mc.master_seed));
        report.append(check_logdet_bounds(trials, mc.master_seed));
    }
    if (suites.count("snr")) report.append(check_snr(e));

    const fs::path dir = out_dir(out);
    fs::create_directories(dir);
    write_text_file((dir / "report.json").string(), report_to_json(report).dump(2) + "\n");
    const std::string table = render_report(report);
    write_text_file((dir / "report.txt").string(), table);
    std::cout << table;
    if (!report.all_pass()) {
        std::cerr << "failing criteria:\n";
        for (const auto& v : report.verdicts)
            if (!v.pass) std::cerr << "  [" << v.suite << "] " << v.criterion << "\n";
        return kExitFail;
    }
    return kExitPass;
}

int cmd_report(const std::string& in_path) {
    const json j = json::parse(read_text_file(in_path), nullptr, false);
    if (j.is_discarded()) throw ConfigError("report file is not valid JSON: " + in_path);
    const McReport r = report_from_json(j);
    std::cout << render_report(r);
    return r.all_pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FIR model data generation, LS/RLS estimation and asymptotic verification"};
    app.require_subcommand(1);

    std::string config_path, out, data_path, in_path;
    std::string suites = "as,clt,rates,moments,shat,lemmas,snr";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    bool truth = false;

    auto* sim = app.add_subcommand("simulate", "generate a dataset CSV");
    sim->add_option("--config", config_path)->required();
    sim->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    sim->add_option("--out", out);
    sim->add_flag("--truth", truth, "also write the v/theta0 sidecar");

    auto* est = app.add_subcommand("estimate", "fit LS/RLS on a dataset CSV");
    est->add_option("--config", config_path)->required();
    est->add_option("--data", data_path)->required();
    est->add_option("--out", out);

    auto* ver = app.add_subcommand("verify", "run seeded Monte Carlo verification suites");
    ver->add_option("--config", config_path)->required();
    ver->add_option("--seed", seed)->each([&](const std::string&) { seed_set = true; });
    ver->add_option("--suites", suites, "comma-separated subset of as,clt,rates,moments,shat,lemmas,snr");
    ver->add_option("--out", out);
    ver->add_option("--workers", workers);

    auto* rep = app.add_subcommand("report", "render a report.json as a table");
    rep->add_option("--in", in_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, seed, seed_set, out, truth);
        if (est->parsed()) return cmd_estimate(config_path, data_path, out);
        if (ver->parsed()) return cmd_verify(config_path, seed, seed_set, suites, out, workers);
        if (rep->parsed()) return cmd_report(in_path);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const PreconditionError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const IoError& ex) {
        std::cerr << "io error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}

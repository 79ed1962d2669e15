#include "firasym/report.hpp"

#include <fstream>
#include <sstream>

#include "firasym/errors.hpp"

namespace firasym {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("config: missing field '") + key + "'");
    return j.at(key);
}

double require_num(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

FilterSpec parse_filter(const json& j) {
    if (j.contains("coeffs")) {
        FilterSpec f;
        for (const auto& c : j.at("coeffs")) f.coeffs.push_back(c.get<double>());
        f.declared_tail_bound = j.value("tail_bound", 0.0);
        f.validate();
        return f;
    }
    const std::string preset = require(j, "preset").get<std::string>();
    if (preset == "white") return FilterSpec::white();
    if (preset == "ar1") return FilterSpec::ar1(require_num(j, "a"));
    if (preset == "fir2") return FilterSpec::fir2(require_num(j, "h0"), require_num(j, "h1"));
    throw ConfigError("config: unknown filter preset '" + preset + "'");
}

InnovationSpec parse_innovation(const json& j) {
    const std::string fam = require(j, "family").get<std::string>();
    const double var = require_num(j, "variance");
    switch (innovation_family_from_string(fam)) {
        case InnovationFamily::gaussian: return InnovationSpec::gaussian(var);
        case InnovationFamily::uniform: return InnovationSpec::uniform(var);
        case InnovationFamily::mixture:
            return InnovationSpec::mixture(var, require_num(j, "moment4"));
    }
    throw ConfigError("config: unknown innovation family");
}

KernelSpec parse_kernel(const json& j, int n) {
    const std::string fam = require(j, "family").get<std::string>();
    std::vector<double> eta;
    for (const auto& x : require(j, "eta")) eta.push_back(x.get<double>());
    KernelSpec spec{kernel_family_from_string(fam), eta, n};
    spec.validate();
    return spec;
}

McConfig parse_mc_config(const json& j) {
    McConfig cfg;
    cfg.n = static_cast<int>(require_num(j, "n"));
    const json& th = require(j, "theta0");
    cfg.theta0.resize(static_cast<long>(th.size()));
    for (std::size_t i = 0; i < th.size(); ++i) cfg.theta0(static_cast<long>(i)) = th[i].get<double>();
    cfg.filter = parse_filter(require(j, "filter"));
    cfg.innov_u = parse_innovation(require(j, "innov_u"));
    cfg.innov_v = parse_innovation(require(j, "innov_v"));
    for (const auto& N : require(j, "N_grid")) cfg.N_grid.push_back(N.get<long>());
    cfg.reps = static_cast<int>(require_num(j, "reps"));
    cfg.master_seed = j.value("seed", std::uint64_t{0});
    if (j.contains("tolerances"))
        for (const auto& [k, v] : j.at("tolerances").items())
            cfg.tol.values[k] = v.get<double>();
    cfg.validate();
    return cfg;
}

json report_to_json(const McReport& r) {
    json out;
    out["schema_version"] = r.schema_version;
    out["master_seed"] = r.master_seed;
    out["note"] = r.note;
    out["all_pass"] = r.all_pass();
    json vs = json::array();
    for (const auto& v : r.verdicts) {
        vs.push_back({{"suite", v.suite},
                      {"criterion", v.criterion},
                      {"pass", v.pass},
                      {"measured", v.measured},
                      {"target", v.target},
                      {"tolerance", v.tolerance},
                      {"seed", v.seed},
                      {"detail", v.detail}});
    }
    out["verdicts"] = std::move(vs);
    return out;
}

McReport report_from_json(const json& j) {
    McReport r;
    r.schema_version = j.value("schema_version", 1);
    r.master_seed = j.value("master_seed", std::uint64_t{0});
    r.note = j.value("note", std::string{});
    for (const auto& v : j.value("verdicts", json::array())) {
        Verdict out;
        out.suite = v.value("suite", std::string{});
        out.criterion = v.value("criterion", std::string{});
        out.pass = v.value("pass", false);
        out.measured = v.value("measured", 0.0);
        out.target = v.value("target", 0.0);
        out.tolerance = v.value("tolerance", 0.0);
        out.seed = v.value("seed", std::uint64_t{0});
        out.detail = v.value("detail", std::string{});
        r.verdicts.push_back(std::move(out));
    }
    return r;
}

std::string render_report(const McReport& r) {
    std::ostringstream os;
    os << "seed " << r.master_seed << "\n";
    os << "note: " << r.note << "\n";
    for (const auto& v : r.verdicts) {
        os << (v.pass ? "PASS" : "FAIL") << "  [" << v.suite << "] " << v.criterion
           << "  measured=" << v.measured << " target=" << v.target
           << " tol=" << v.tolerance;
        if (!v.detail.empty()) os << "  (" << v.detail << ")";
        os << "\n";
    }
    os << (r.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << text;
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace firasym

#include "firasym/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "firasym/errors.hpp"

namespace firasym {

namespace {

std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// "key=value" scan on a header line.
std::string header_field(const std::string& line, const std::string& key) {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos)
        throw IoError("dataset header missing field '" + key + "'");
    const auto start = pos + key.size() + 1;
    const auto end = line.find(' ', start);
    return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

void write_dataset_csv(const std::string& path, const Dataset& d, std::uint64_t seed) {
    std::ostringstream os;
    os << "# n=" << d.n << " theta0=";
    for (int i = 0; i < d.n; ++i) os << (i ? "," : "") << num(d.theta0(i));
    os << " seed=" << seed << "\n";
    if (d.n > 1) {
        os << "# warmup=";
        for (long t = 1 - d.n; t <= -1; ++t) os << (t > 1 - d.n ? "," : "") << num(d.u_at(t));
        os << "\n";
    }
    os << "t,u,y\n";
    for (long t = 1; t <= d.N; ++t)
        os << t << ',' << num(d.u_at(t - 1)) << ',' << num(d.y(t - 1)) << "\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open dataset file for writing: " + path);
    f << os.str();
    if (!f) throw IoError("dataset write failed: " + path);
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open dataset file: " + path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("# n=", 0) != 0)
        throw IoError("dataset file missing '# n=' header: " + path);
    const int n = std::stoi(header_field(line, "n"));
    const std::vector<double> th = split_doubles(header_field(line, "theta0"));
    if (static_cast<int>(th.size()) != n)
        throw IoError("dataset header: theta0 length does not match n");

    std::vector<double> warmup;
    std::streampos after_header = f.tellg();
    if (std::getline(f, line) && line.rfind("# warmup=", 0) == 0) {
        warmup = split_doubles(line.substr(9));
        if (static_cast<int>(warmup.size()) != n - 1)
            throw IoError("dataset header: warmup length must be n-1");
        std::getline(f, line);  // advance to the column header
    } else {
        if (n > 1) throw IoError("dataset file missing warmup header for n > 1");
        f.clear();
        f.seekg(after_header);
        std::getline(f, line);  // re-read: must be the column header
    }
    if (line != "t,u,y") throw IoError("dataset file missing 't,u,y' column header");

    std::vector<double> u = warmup, y;
    long expect_t = 1;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const std::vector<double> row = split_doubles(line);
        if (row.size() != 3) throw IoError("dataset row must have 3 columns");
        if (static_cast<long>(row[0]) != expect_t)
            throw IoError("dataset rows must be consecutive t starting at 1");
        u.push_back(row[1]);
        y.push_back(row[2]);
        ++expect_t;
    }
    const long N = static_cast<long>(y.size());
    Eigen::VectorXd theta0 = Eigen::Map<const Eigen::VectorXd>(th.data(), n);
    Eigen::VectorXd Y = Eigen::Map<const Eigen::VectorXd>(y.data(), N);
    // v is recovered from the model identity.
    Eigen::MatrixXd phi(N, n);
    Dataset tmp;
    tmp.n = n;
    tmp.N = N;
    tmp.u_store = u;
    for (long t = 1; t <= N; ++t)
        for (int i = 1; i <= n; ++i) phi(t - 1, i - 1) = tmp.u_at(t - i);
    Eigen::VectorXd v = Y - phi * theta0;
    Dataset d = simulate_fir(theta0, u, v);
    d.y = Y;  // keep file bytes authoritative
    return d;
}

void write_truth_sidecar(const std::string& path, const Dataset& d) {
    nlohmann::json j;
    j["theta0"] = std::vector<double>(d.theta0.data(), d.theta0.data() + d.theta0.size());
    j["v"] = std::vector<double>(d.v.data(), d.v.data() + d.v.size());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open sidecar for writing: " + path);
    f << j.dump(2) << "\n";
    if (!f) throw IoError("sidecar write failed: " + path);
}

}  // namespace firasym

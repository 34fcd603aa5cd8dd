#include "lfs/config.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lfs {

void RunConfig::validate() const {
    if (precision_bits < 128) throw std::invalid_argument("config: precision_bits must be >= 128");
    if (relation_horizon < 100) throw std::invalid_argument("config: relation_horizon must be >= 100");
    if (commit_horizon < 2) throw std::invalid_argument("config: commit_horizon must be >= 2");
    if (safety < 1) throw std::invalid_argument("config: safety must be >= 1");
    if (steps_per_unit < 4) throw std::invalid_argument("config: steps_per_unit must be >= 4");
    if (nu <= 0) throw std::invalid_argument("config: nu must be positive");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    for (const auto& [re, im, c] : test_grid) {
        if (c < 0) throw std::invalid_argument("config: test function c must be >= 0");
        if (c == 0 && re * re + im * im >= 9.8596)  // pi^2, the degree-4 growth bound
            throw std::invalid_argument("config: test function alpha too large for c = 0");
    }
    for (const auto& curve : curves) {
        if (curve.conductor < 1) throw std::invalid_argument("config: curve conductor must be positive");
        if (curve.root_number != 1 && curve.root_number != -1)
            throw std::invalid_argument("config: curve root number must be +1 or -1");
        if (curve.discriminant() == 0) throw std::invalid_argument("config: singular curve");
    }
}

RunConfig default_config() {
    RunConfig rc;
    rc.curves = builtin_curves();
    return rc;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        if (cur.empty()) continue;
        out.push_back(std::stod(cur));
    }
    return out;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    RunConfig rc = default_config();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    bool test_grid_cleared = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;

        try {
            if (toks[0] == "curve") {
                if (toks.size() != 9) throw std::invalid_argument("curve line needs 8 fields");
                EllipticCurveData c;
                c.label = toks[1];
                c.a1 = std::stol(toks[2]);
                c.a2 = std::stol(toks[3]);
                c.a3 = std::stol(toks[4]);
                c.a4 = std::stol(toks[5]);
                c.a6 = std::stol(toks[6]);
                c.conductor = std::stol(toks[7]);
                c.root_number = std::stoi(toks[8]);
                rc.curves.push_back(c);
                continue;
            }
            if (toks.size() >= 3 && toks[1] == "=") {
                const std::string& key = toks[0];
                std::string value = toks[2];
                for (size_t i = 3; i < toks.size(); ++i) value += toks[i];
                if (key == "precision_bits") rc.precision_bits = std::stoul(value);
                else if (key == "relation_horizon") rc.relation_horizon = std::stoll(value);
                else if (key == "commit_horizon") rc.commit_horizon = std::stol(value);
                else if (key == "safety") rc.safety = std::stod(value);
                else if (key == "node_budget") rc.node_budget = std::stoll(value);
                else if (key == "steps_per_unit") rc.steps_per_unit = std::stol(value);
                else if (key == "nu") rc.nu = std::stod(value);
                else if (key == "weight_tol") rc.weight_tol = value;
                else if (key == "global_relations") rc.global_relations = std::stoi(value);
                else if (key == "jobs") rc.jobs = std::stoi(value);
                else if (key == "s_grid") rc.s_imag_grid = parse_list(value);
                else if (key == "square_primes") {
                    rc.square_primes.clear();
                    for (double v : parse_list(value)) rc.square_primes.push_back(static_cast<long>(v));
                } else if (key == "test_function") {
                    // test_function = alpha_re,alpha_im,c ; repeated lines accumulate
                    auto vals = parse_list(value);
                    if (vals.size() != 3) throw std::invalid_argument("test_function needs 3 values");
                    if (!test_grid_cleared) { rc.test_grid.clear(); test_grid_cleared = true; }
                    rc.test_grid.push_back({vals[0], vals[1], vals[2]});
                } else {
                    throw std::invalid_argument("unknown key '" + key + "'");
                }
                continue;
            }
            throw std::invalid_argument("unparseable line");
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << path << ":" << lineno << ": " << e.what();
            throw std::runtime_error(os.str());
        }
    }
    rc.validate();
    return rc;
}

SearchConfig make_search_config(const RunConfig& rc) {
    rc.validate();
    set_precision_bits(rc.precision_bits);

    SearchConfig cfg;
    cfg.commit_horizon = rc.commit_horizon;
    cfg.square_primes = rc.square_primes;
    cfg.relation_horizon = rc.relation_horizon;
    cfg.node_budget = rc.node_budget;
    cfg.global_relations = rc.global_relations;
    cfg.afe.quad.nu = Real(rc.nu);
    cfg.afe.quad.steps_per_unit = rc.steps_per_unit;
    cfg.afe.quad.safety = Real(rc.safety);
    cfg.afe.weight_tol = Real(rc.weight_tol);
    cfg.s_imag_grid.clear();
    for (double t : rc.s_imag_grid) cfg.s_imag_grid.push_back(Real(t));
    cfg.test_functions.clear();
    for (const auto& [re, im, c] : rc.test_grid)
        cfg.test_functions.emplace_back(Complex(Real(re), Real(im)), Real(c));
    return cfg;
}

}  // namespace lfs

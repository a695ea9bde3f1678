#include <hkdv/errors.hpp>
#include <hkdv/experiments.hpp>
#include <hkdv/grid.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hkdv {

namespace {

using kv = std::map<std::string, std::string>;

struct suite_defaults {
    int n;
    double L;
    int j;
    int k;
    kv keys;
};

const std::map<std::string, suite_defaults>& defaults() {
    static const std::map<std::string, suite_defaults> d = {
        {"decay",
         {1024, 64.0, 1, 1,
          {{"js", "1,2"},
           {"times", "1,2,4,8,16,32,64"},
           {"xi_env", "16,32"},
           {"x_max", "40"},
           {"n_x", "641"},
           {"beta", "0"},
           {"slope_lo", "-0.55"},
           {"slope_hi", "-0.45"},
           {"max_shift", "0.02"}}}},
        {"persistence",
         {512, 128.0, 1, 1,
          {{"T", "1"},
           {"dt", "0.002"},
           {"stride", "5"},
           {"s", "2"},
           {"r", "0.4"},
           {"amp", "1"},
           {"width", "2"},
           {"eps", "0.05"},
           {"tolerance", "0.1"},
           {"decay_threshold", "1e-6"}}}},
        {"propagation",
         {4096, 512.0, 1, 1,
          {{"T", "0.5"},
           {"dt", "0.002"},
           {"stride", "10"},
           {"x0", "0"},
           {"eps", "0.5"},
           {"v", "4"},
           {"R", "10"},
           {"xi_lo", "2"},
           {"xi_c", "10"},
           {"smooth_amp", "0.3"},
           {"rough_amp", "0.3"},
           {"env_offset", "-25"},
           {"env_width", "15"},
           {"cut_eps", "0.25"},
           {"cut_b", "3"},
           {"bound", "2"},
           {"growth", "10"},
           {"tolerance", "0.1"}}}},
        {"blowup",
         {524288, 512.0, 2, 1,
          {{"alpha", "3"},
           {"qmax", "2"},
           {"pmax", "2"},
           {"scheme", "normalized"},
           {"delta", "1"},
           {"t_irrational", "sqrt2"},
           {"excluded", "1/3,2/3,3/2,5/2,1/4"},
           {"h_set", "1/64,1/128,1/256"},
           {"rho", "0.25"},
           {"contrast_min", "10"},
           {"excluded_lo", "0.5"},
           {"excluded_hi", "2"},
           {"decay_threshold", "0.15"},
           {"kmax", "50"}}}},
        {"smoothing",
         {4096, 100.0, 1, 1,
          {{"T", "0.5"}, {"s", "2"}, {"ks", "1,2"}, {"amp", "1"}, {"dt", "0"}, {"min_gain", "0.5"}}}},
        {"identities",
         {1024, 64.0, 1, 1,
          {{"reduction_js", "1,2,3,4,5"},
           {"reduction_fields", "20"},
           {"reduction_tol", "1e-8"},
           {"commutator_js", "1,2"},
           {"commutator_times", "0.05,0.1,0.5"},
           {"commutator_tol", "1e-6"},
           {"decomposition_times", "0.1,0.5,1"},
           {"decomposition_r", "0.4"},
           {"decomposition_s", "2"},
           {"decomposition_n", "8192"},
           {"decomposition_L", "512"},
           {"probes", "kato_ponce,frac_leibniz,interpolation,weighted_decomposition,strichartz,maximal"},
           {"ensemble", "6"}}}},
    };
    return d;
}

const suite_defaults& defaults_for(const std::string& name) {
    auto it = defaults().find(name);
    if (it == defaults().end()) throw config_error("experiment.name", "unknown suite '" + name + "'");
    return it->second;
}

double parse_number(const std::string& field, const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "sqrt2") return std::sqrt(2.0);
    if (s == "sqrt3") return std::sqrt(3.0);
    if (s == "golden") return 0.5 * (1.0 + std::sqrt(5.0));
    const auto slash = s.find('/');
    try {
        std::size_t pos = 0;
        if (slash != std::string::npos) {
            const double a = std::stod(s.substr(0, slash), &pos);
            if (pos != slash) throw std::invalid_argument(s);
            const std::string rest = s.substr(slash + 1);
            const double b = std::stod(rest, &pos);
            if (pos != rest.size() || b == 0.0) throw std::invalid_argument(s);
            return a / b;
        }
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(field, "expected a number, got '" + raw + "'");
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"decay", "persistence", "propagation", "blowup", "smoothing", "identities"};
    return names;
}

double experiment_config::num(const std::string& key) const {
    auto it = suite.find(key);
    if (it == suite.end()) throw config_error("suite." + key, "missing");
    return parse_number("suite." + key, it->second);
}

int experiment_config::integer(const std::string& key) const {
    const double v = num(key);
    if (v != std::floor(v) || std::abs(v) > 2e9) throw config_error("suite." + key, "expected an integer");
    return static_cast<int>(v);
}

std::vector<double> experiment_config::list(const std::string& key) const {
    const std::string raw = text(key);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_number("suite." + key, item));
    if (out.empty()) throw config_error("suite." + key, "expected a non-empty list");
    return out;
}

std::string experiment_config::text(const std::string& key) const {
    auto it = suite.find(key);
    if (it == suite.end()) throw config_error("suite." + key, "missing");
    return it->second;
}

experiment_config default_config(const std::string& name) {
    const auto& d = defaults_for(name);
    experiment_config c;
    c.name = name;
    c.n = d.n;
    c.L = d.L;
    c.j = d.j;
    c.k = d.k;
    c.suite = d.keys;
    return c;
}

experiment_config parse_config(std::istream& is, const std::string& name) {
    boost::property_tree::ptree pt;
    try {
        boost::property_tree::ini_parser::read_ini(is, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw config_error("file", e.message() + " at line " + std::to_string(e.line()));
    }
    std::string suite_name = name;
    if (auto nm = pt.get_optional<std::string>("experiment.name")) {
        if (!name.empty() && *nm != name) throw config_error("experiment.name", "'" + *nm + "' does not match suite '" + name + "'");
        suite_name = *nm;
    }
    experiment_config c = default_config(suite_name);
    const std::set<std::string> sections = {"experiment", "grid", "params", "suite"};
    for (const auto& [sec, body] : pt) {
        if (!sections.count(sec)) throw config_error(sec, "unknown section");
        for (const auto& [key, val] : body) {
            const std::string field = sec + "." + key;
            const std::string v = val.get_value<std::string>();
            if (sec == "experiment") {
                if (key == "name") continue;
                if (key == "seed") {
                    const double s = parse_number(field, v);
                    if (s < 0 || s != std::floor(s) || s > 9.0e15) throw config_error(field, "expected a nonnegative integer");
                    c.seed = static_cast<std::uint64_t>(s);
                } else if (key == "output_dir") {
                    c.output_dir = v;
                } else {
                    throw config_error(field, "unknown key");
                }
            } else if (sec == "grid") {
                const double x = parse_number(field, v);
                if (key == "n") {
                    if (x != std::floor(x) || x > 1e9) throw config_error(field, "expected an integer");
                    c.n = static_cast<int>(x);
                } else if (key == "L") {
                    c.L = x;
                } else {
                    throw config_error(field, "unknown key");
                }
            } else if (sec == "params") {
                const double x = parse_number(field, v);
                if (x != std::floor(x) || std::abs(x) > 1e6) throw config_error(field, "expected an integer");
                if (key == "j")
                    c.j = static_cast<int>(x);
                else if (key == "k")
                    c.k = static_cast<int>(x);
                else
                    throw config_error(field, "unknown key");
            } else {
                if (!c.suite.count(key)) throw config_error(field, "unknown key for suite " + c.name);
                c.suite[key] = v;
            }
        }
    }
    validate(c);
    return c;
}

experiment_config load_config(const std::string& path, const std::string& name) {
    std::ifstream is(path);
    if (!is) throw config_error("file", "cannot open " + path);
    return parse_config(is, name);
}

void validate(const experiment_config& c) {
    defaults_for(c.name);
    if (!(c.L > 0.0) || !std::isfinite(c.L)) throw config_error("grid.L", "must be positive and finite");
    try {
        make_grid(c.n, c.L);
    } catch (const invalid_argument& e) {
        throw config_error("grid.n", e.what());
    }
    if (c.j < 1) throw config_error("params.j", "must be at least 1");
    if (c.k < 1) throw config_error("params.k", "must be at least 1");
    if (c.output_dir.empty()) throw config_error("experiment.output_dir", "must not be empty");
    auto positive = [&](const std::string& key) {
        if (!(c.num(key) > 0.0)) throw config_error("suite." + key, "must be positive");
    };
    auto all_positive = [&](const std::string& key) {
        for (double v : c.list(key))
            if (!(v > 0.0)) throw config_error("suite." + key, "entries must be positive");
    };
    auto int_list = [&](const std::string& key, int lo) {
        for (double v : c.list(key))
            if (v != std::floor(v) || v < lo) throw config_error("suite." + key, "entries must be integers >= " + std::to_string(lo));
    };
    if (c.name == "decay") {
        int_list("js", 1);
        for (double t : c.list("times"))
            if (!(t >= 1.0)) throw config_error("suite.times", "times must be at least 1");
        if (c.list("times").size() < 2) throw config_error("suite.times", "need at least two times");
        all_positive("xi_env");
        positive("x_max");
        if (c.integer("n_x") < 2) throw config_error("suite.n_x", "must be at least 2");
        if (!(c.num("slope_lo") < c.num("slope_hi"))) throw config_error("suite.slope_lo", "must be below slope_hi");
        positive("max_shift");
        c.num("beta");
    } else if (c.name == "persistence") {
        for (auto key : {"T", "dt", "s", "r", "amp", "width", "eps", "tolerance", "decay_threshold"}) positive(key);
        if (c.num("T") > 1.0) throw config_error("suite.T", "must not exceed 1");
        if (c.integer("stride") < 1) throw config_error("suite.stride", "must be at least 1");
        if (!(c.num("r") < 1.0)) throw config_error("suite.r", "must lie in (0,1)");
        if (c.num("s") < 2.0 * c.j * c.num("r")) throw config_error("suite.s", "must satisfy s >= 2 j r");
    } else if (c.name == "propagation") {
        for (auto key : {"T", "dt", "eps", "R", "xi_lo", "xi_c", "smooth_amp", "rough_amp", "env_width", "cut_eps", "cut_b",
                         "bound", "growth", "tolerance"})
            positive(key);
        if (c.integer("stride") < 1) throw config_error("suite.stride", "must be at least 1");
        if (c.num("v") < 0.0) throw config_error("suite.v", "must be nonnegative");
        if (!(c.num("R") > c.num("eps"))) throw config_error("suite.R", "must exceed eps");
        if (!(c.num("xi_c") > c.num("xi_lo"))) throw config_error("suite.xi_c", "must exceed xi_lo");
        if (c.num("cut_b") < 5.0 * c.num("cut_eps")) throw config_error("suite.cut_b", "must be at least 5 cut_eps");
    } else if (c.name == "blowup") {
        positive("alpha");
        if (c.integer("qmax") < 1) throw config_error("suite.qmax", "must be at least 1");
        if (c.integer("pmax") < 1) throw config_error("suite.pmax", "must be at least 1");
        const std::string sch = c.text("scheme");
        if (sch != "double_exponential" && sch != "normalized") throw config_error("suite.scheme", "must be 'double_exponential' or 'normalized'");
        positive("delta");
        positive("t_irrational");
        all_positive("excluded");
        all_positive("h_set");
        if (c.num("rho") < 0.0) throw config_error("suite.rho", "must be nonnegative");
        positive("contrast_min");
        if (!(c.num("excluded_lo") < c.num("excluded_hi"))) throw config_error("suite.excluded_lo", "must be below excluded_hi");
        positive("decay_threshold");
        if (c.integer("kmax") < 2) throw config_error("suite.kmax", "must be at least 2");
    } else if (c.name == "smoothing") {
        positive("T");
        positive("amp");
        if (c.num("s") < c.j + 1) throw config_error("suite.s", "must be at least j+1");
        int_list("ks", 1);
        if (c.num("dt") < 0.0) throw config_error("suite.dt", "must be nonnegative (0 selects the default)");
        c.num("min_gain");
    } else if (c.name == "identities") {
        int_list("reduction_js", 1);
        for (double v : c.list("reduction_js"))
            if (v > 32) throw config_error("suite.reduction_js", "entries must not exceed 32");
        if (c.integer("reduction_fields") < 1) throw config_error("suite.reduction_fields", "must be positive");
        positive("reduction_tol");
        int_list("commutator_js", 1);
        all_positive("commutator_times");
        positive("commutator_tol");
        all_positive("decomposition_times");
        const double r = c.num("decomposition_r");
        if (!(r > 0.0 && r < 1.0)) throw config_error("suite.decomposition_r", "must lie in (0,1)");
        if (c.num("decomposition_s") < 2.0 * c.j * r) throw config_error("suite.decomposition_s", "must satisfy s >= 2 j r");
        try {
            make_grid(c.integer("decomposition_n"), c.num("decomposition_L"));
        } catch (const invalid_argument& e) {
            throw config_error("suite.decomposition_n", e.what());
        }
        if (c.integer("ensemble") < 1) throw config_error("suite.ensemble", "must be positive");
        const std::set<std::string> known = {"dispersive_decay", "strichartz", "kato_smoothing", "maximal",
                                             "kato_ponce", "frac_leibniz", "interpolation", "weighted_decomposition"};
        std::stringstream ss(c.text("probes"));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!known.count(item)) throw config_error("suite.probes", "unknown probe '" + item + "'");
    }
}

std::string to_ini(const experiment_config& c) {
    std::ostringstream os;
    os << "[experiment]\nname = " << c.name << "\nseed = " << c.seed << "\noutput_dir = " << c.output_dir << "\n\n";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c.L);
    os << "[grid]\nn = " << c.n << "\nL = " << buf << "\n\n";
    os << "[params]\nj = " << c.j << "\nk = " << c.k << "\n\n[suite]\n";
    for (const auto& [k, v] : c.suite) os << k << " = " << v << "\n";
    return os.str();
}

}  // namespace hkdv

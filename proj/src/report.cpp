#include <hkdv/errors.hpp>
#include <hkdv/experiments.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace hkdv {

bool experiment_report::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

check_record make_check(const std::string& name, double measured, const std::string& relation, double threshold,
                        double threshold_hi) {
    check_record c{name, measured, threshold, relation, threshold_hi, false};
    const bool finite = std::isfinite(measured);
    if (relation == "<")
        c.pass = finite && measured < threshold;
    else if (relation == "<=")
        c.pass = finite && measured <= threshold;
    else if (relation == ">")
        c.pass = finite && measured > threshold;
    else if (relation == ">=")
        c.pass = finite && measured >= threshold;
    else if (relation == "in")
        c.pass = finite && measured >= threshold && measured <= threshold_hi;
    else if (relation == "finite")
        c.pass = finite;
    else
        throw invalid_argument("unknown check relation '" + relation + "'");
    return c;
}

namespace {

nlohmann::json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

std::string report_json(const experiment_report& rep) {
    nlohmann::ordered_json j;
    const auto& c = rep.config;
    j["suite"] = c.name;
    j["pass"] = rep.pass();
    nlohmann::ordered_json cfg;
    cfg["name"] = c.name;
    cfg["seed"] = c.seed;
    cfg["output_dir"] = c.output_dir;
    cfg["grid"] = {{"n", c.n}, {"L", c.L}};
    cfg["params"] = {{"j", c.j}, {"k", c.k}};
    cfg["suite"] = c.suite;
    cfg["rng"] = rep.rng_algorithm;
    j["config"] = cfg;
    j["config_ini"] = to_ini(c);
    auto checks = nlohmann::ordered_json::array();
    for (const auto& r : rep.checks) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["measured"] = number(r.measured);
        e["relation"] = r.relation;
        e["threshold"] = number(r.threshold);
        if (r.relation == "in") e["threshold_hi"] = number(r.threshold_hi);
        e["pass"] = r.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["artifacts"] = rep.artifacts;
    j["notes"] = rep.notes;
    j["wall_seconds"] = rep.wall_seconds;
    return j.dump(2) + "\n";
}

void write_report(const experiment_report& rep) {
    std::filesystem::create_directories(rep.directory);
    const auto path = std::filesystem::path(rep.directory) / "report.json";
    std::ofstream os(path);
    if (!os) throw io_error("cannot write " + path.string());
    os << report_json(rep);
    std::ofstream ini(std::filesystem::path(rep.directory) / "config.ini");
    ini << to_ini(rep.config);
}

}  // namespace hkdv

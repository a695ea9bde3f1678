#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hkdv {

/// Flat sectioned key=value configuration.
///
/// Sections: [experiment] name, seed, output_dir; [grid] n, L; [params] j, k; [suite] suite keys.
/// Missing keys take the suite default; unknown keys are rejected.
struct experiment_config {
    std::string name;
    int n = 0;
    double L = 0.0;
    int j = 1;
    int k = 1;
    std::uint64_t seed = 1;
    std::string output_dir = "hkdv_out";
    std::map<std::string, std::string> suite;

    double num(const std::string& key) const;
    int integer(const std::string& key) const;
    std::vector<double> list(const std::string& key) const;
    std::string text(const std::string& key) const;
};

/// Names of the six suites in catalogue order.
const std::vector<std::string>& suite_names();

/// Default configuration of a suite; throws config_error for unknown names.
experiment_config default_config(const std::string& name);

/// Parses INI text on top of the defaults of the named suite (the [experiment] name must match when given).
experiment_config parse_config(std::istream& is, const std::string& name);
experiment_config load_config(const std::string& path, const std::string& name);

/// Checks every field against the target module's preconditions.
void validate(const experiment_config& cfg);

/// Serializes the configuration as INI text (the config echo).
std::string to_ini(const experiment_config& cfg);

struct check_record {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    /// One of "<", "<=", ">", ">=", "in", "finite".
    std::string relation;
    /// Upper end for relation "in".
    double threshold_hi = 0.0;
    bool pass = false;
};

struct experiment_report {
    experiment_config config;
    std::string rng_algorithm;
    std::vector<check_record> checks;
    /// Paths relative to the suite output directory.
    std::vector<std::string> artifacts;
    std::map<std::string, std::string> notes;
    double wall_seconds = 0.0;
    std::string directory;

    bool pass() const;
};

check_record make_check(const std::string& name, double measured, const std::string& relation, double threshold,
                        double threshold_hi = 0.0);

/// Runs the suite, writes CSV and report.json under output_dir/<name>, and returns the report.
/// HKDV_OUTPUT_DIR, when set, replaces output_dir.
experiment_report run(const experiment_config& cfg);

std::string report_json(const experiment_report& rep);
void write_report(const experiment_report& rep);

struct catalogue_entry {
    std::string name;
    std::string description;
    std::vector<std::string> anchors;
};

const std::vector<catalogue_entry>& catalogue();
std::string catalogue_text();
std::string catalogue_json();

/// Writes one Vega-Lite JSON file per figure next to the report; returns the written paths.
std::vector<std::string> emit_plots(const std::string& report_path);

}  // namespace hkdv

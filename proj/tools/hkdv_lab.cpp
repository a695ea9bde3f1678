#include <hkdv/errors.hpp>
#include <hkdv/experiments.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"hKdV pseudospectral verification lab"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one experiment suite");
    std::string suite, config_path;
    run->add_option("suite", suite, "Suite name")->required();
    run->add_option("--config", config_path, "INI configuration file (defaults when omitted)");

    auto* list = app.add_subcommand("list", "List the suite catalogue");
    bool as_json = false;
    list->add_flag("--json", as_json, "Machine-readable catalogue");

    auto* plots = app.add_subcommand("plots", "Write Vega-Lite figures for a report");
    std::string report_path;
    plots->add_option("report", report_path, "Path to report.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*list) {
            std::cout << (as_json ? hkdv::catalogue_json() : hkdv::catalogue_text());
            return 0;
        }
        if (*plots) {
            for (const auto& p : hkdv::emit_plots(report_path)) std::cout << p << "\n";
            return 0;
        }
        const auto cfg = config_path.empty() ? hkdv::default_config(suite) : hkdv::load_config(config_path, suite);
        const auto rep = hkdv::run(cfg);
        for (const auto& c : rep.checks)
            std::printf("%s %-48s measured=%.6g %s %.6g%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                        c.relation.c_str(), c.threshold,
                        c.relation == "in" ? (" .. " + std::to_string(c.threshold_hi)).c_str() : "");
        for (const auto& [k, v] : rep.notes) std::printf("note %s: %s\n", k.c_str(), v.c_str());
        std::printf("%s %s (%.1f s) -> %s\n", rep.pass() ? "PASS" : "FAIL", cfg.name.c_str(), rep.wall_seconds,
                    rep.directory.c_str());
        return rep.pass() ? 0 : 1;
    } catch (const hkdv::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

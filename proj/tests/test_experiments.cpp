#include <doctest.h>

#include <hkdv/errors.hpp>
#include <hkdv/experiments.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hkdv;
namespace fs = std::filesystem;

namespace {

std::string failing_field(const std::string& ini, const std::string& suite) {
    std::istringstream is(ini);
    try {
        validate(parse_config(is, suite));
    } catch (const config_error& e) {
        return e.field;
    }
    return "";
}

}  // namespace

TEST_SUITE("experiments_cli") {

TEST_CASE("suite names and defaults") {
    const auto& names = suite_names();
    CHECK(names == std::vector<std::string>{"decay", "persistence", "propagation", "blowup", "smoothing", "identities"});
    for (const auto& n : names) {
        const auto cfg = default_config(n);
        CHECK(cfg.name == n);
        CHECK_NOTHROW(validate(cfg));
    }
    CHECK_THROWS_AS(default_config("nope"), config_error);
}

TEST_CASE("config parse errors name the field") {
    CHECK(failing_field("[grid]\nn = 15\n", "decay") == "grid.n");
    CHECK(failing_field("[grid]\nL = -3\n", "decay") == "grid.L");
    CHECK(failing_field("[params]\nj = 0\n", "persistence") == "params.j");
    CHECK(failing_field("[suite]\nbogus = 1\n", "decay") == "suite.bogus");
    CHECK(failing_field("[colours]\nred = 1\n", "decay") == "colours");
    CHECK(failing_field("[suite]\nT = 2\n", "persistence") == "suite.T");
    CHECK(failing_field("[suite]\nprobes = kato_ponce,astrology\n", "identities") == "suite.probes");
    CHECK(failing_field("[experiment]\nname = blowup\n", "decay") == "experiment.name");
    CHECK(failing_field("[suite]\nt_irrational = pi-ish\n", "blowup") == "suite.t_irrational");
    CHECK(failing_field("[grid]\nn = 2048\n[suite]\nslope_lo = -0.52\n", "decay").empty());
}

TEST_CASE("numbers accept fractions and named constants") {
    std::istringstream is("[suite]\nt_irrational = golden\nrho = 1/8\n");
    const auto cfg = parse_config(is, "blowup");
    CHECK(cfg.num("t_irrational") == doctest::Approx(0.5 * (1 + std::sqrt(5.0))));
    CHECK(cfg.num("rho") == 0.125);
    CHECK(cfg.list("h_set") == std::vector<double>{1.0 / 64, 1.0 / 128, 1.0 / 256});
}

TEST_CASE("config echo round trips") {
    for (const auto& n : suite_names()) {
        const auto cfg = default_config(n);
        std::istringstream is(to_ini(cfg));
        const auto back = parse_config(is, n);
        CHECK(back.n == cfg.n);
        CHECK(back.L == cfg.L);
        CHECK(back.j == cfg.j);
        CHECK(back.k == cfg.k);
        CHECK(back.seed == cfg.seed);
        CHECK(back.suite == cfg.suite);
        CHECK(to_ini(back) == to_ini(cfg));
    }
}

TEST_CASE("check relations") {
    CHECK(make_check("a", 1.0, "<", 2.0).pass);
    CHECK_FALSE(make_check("a", 2.0, "<", 2.0).pass);
    CHECK(make_check("a", 2.0, "<=", 2.0).pass);
    CHECK(make_check("a", 3.0, ">", 2.0).pass);
    CHECK(make_check("a", 2.0, ">=", 2.0).pass);
    CHECK(make_check("a", 0.5, "in", 0.0, 1.0).pass);
    CHECK_FALSE(make_check("a", 1.5, "in", 0.0, 1.0).pass);
    CHECK(make_check("a", 7.0, "finite", 0.0).pass);
    CHECK_FALSE(make_check("a", NAN, "<", 2.0).pass);
    CHECK_FALSE(make_check("a", INFINITY, ">", 2.0).pass);
    CHECK_THROWS_AS(make_check("a", 1.0, "~", 2.0), invalid_argument);

    experiment_report rep;
    CHECK(rep.pass());
    rep.checks.push_back(make_check("a", 1.0, "<", 2.0));
    CHECK(rep.pass());
    rep.checks.push_back(make_check("b", 3.0, "<", 2.0));
    CHECK_FALSE(rep.pass());
}

TEST_CASE("report JSON keeps non-finite values as strings") {
    experiment_report rep;
    rep.config = default_config("decay");
    rep.checks.push_back(make_check("x", INFINITY, "<", 1.0));
    const auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j["suite"] == "decay");
    CHECK(j["pass"] == false);
    CHECK(j["checks"][0]["measured"].is_string());
    CHECK(j.contains("config_ini"));
}

TEST_CASE("catalogue") {
    const auto& cat = catalogue();
    REQUIRE(cat.size() == 6);
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(cat[i].name == suite_names()[i]);
        CHECK_FALSE(cat[i].description.empty());
        CHECK_FALSE(cat[i].anchors.empty());
    }
    const auto j = nlohmann::json::parse(catalogue_json());
    CHECK(j.size() == 6);
    CHECK(j[0]["name"] == "decay");
    CHECK(catalogue_text().find("smoothing") != std::string::npos);
}

TEST_CASE("suite run honours the output override and writes the report") {
    const fs::path dir = fs::temp_directory_path() / "hkdv_exp_test";
    fs::remove_all(dir);
    setenv("HKDV_OUTPUT_DIR", dir.c_str(), 1);
    auto cfg = default_config("identities");
    cfg.suite["probes"] = "interpolation";
    cfg.suite["reduction_fields"] = "2";
    const auto rep = run(cfg);
    unsetenv("HKDV_OUTPUT_DIR");
    CHECK(rep.directory == (dir / "identities").string());
    CHECK(fs::exists(dir / "identities" / "report.json"));
    CHECK(fs::exists(dir / "identities" / "config.ini"));
    for (const auto& a : rep.artifacts) CHECK(fs::exists(dir / "identities" / a));
    CHECK(rep.pass());
    // The identities suite has no figures.
    CHECK(emit_plots((dir / "identities" / "report.json").string()).empty());
}

TEST_CASE("plot emission") {
    const fs::path dir = fs::temp_directory_path() / "hkdv_plot_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "report.json");
        os << R"({"suite":"decay","artifacts":["decay.csv","decay_fit.csv"]})";
    }
    CHECK_THROWS_AS(emit_plots((dir / "report.json").string()), io_error);
    {
        std::ofstream os(dir / "report.json");
        os << R"({"suite":"decay","artifacts":[]})";
    }
    CHECK(emit_plots((dir / "report.json").string()).empty());
    CHECK_THROWS_AS(emit_plots((dir / "missing.json").string()), io_error);
}

}

#include <hkdv/errors.hpp>
#include <hkdv/experiments.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hkdv {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const char* schema = "https://vega.github.io/schema/vega-lite/v5.json";

void require(const fs::path& dir, const std::string& csv) {
    if (!fs::exists(dir / csv)) throw io_error("missing CSV artifact " + (dir / csv).string());
}

std::string write(const fs::path& dir, const std::string& name, const json& spec) {
    const fs::path p = dir / name;
    std::ofstream os(p);
    if (!os) throw io_error("cannot write " + p.string());
    os << spec.dump(2) << "\n";
    return p.string();
}

json log_axis(const std::string& field, const std::string& title) {
    return {{"field", field}, {"type", "quantitative"}, {"scale", {{"type", "log"}}}, {"title", title}};
}

/// Reads "j,xi_env,slope,..." rows for the slope annotation.
std::string slope_caption(const fs::path& csv) {
    std::ifstream is(csv);
    std::string line;
    std::getline(is, line);
    std::ostringstream os;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string j, xi, slope;
        std::getline(ss, j, ',');
        std::getline(ss, xi, ',');
        std::getline(ss, slope, ',');
        os << (os.tellp() > 0 ? "; " : "") << "j=" << j << " Xi=" << xi << " slope=" << slope.substr(0, 8);
    }
    return os.str();
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& report_path) {
    std::ifstream is(report_path);
    if (!is) throw io_error("cannot read report " + report_path);
    const auto rep = nlohmann::json::parse(is, nullptr, false);
    if (rep.is_discarded() || !rep.is_object()) throw io_error("malformed report " + report_path);
    const fs::path dir = fs::path(report_path).parent_path();
    std::vector<std::string> out;
    if (!rep.contains("suite") || !rep.contains("artifacts") || rep["artifacts"].empty()) return out;
    const std::string suite = rep["suite"];

    if (suite == "decay") {
        require(dir, "decay.csv");
        require(dir, "decay_fit.csv");
        json spec = {{"$schema", schema},
                     {"title", {{"text", "sup |I_t| against t"}, {"subtitle", slope_caption(dir / "decay_fit.csv")}}},
                     {"data", {{"url", "decay.csv"}}},
                     {"transform", json::array({{{"calculate", "'j=' + datum.j + ' Xi=' + datum.xi_env"}, {"as", "series"}}})},
                     {"mark", {{"type", "line"}, {"point", true}}},
                     {"encoding",
                      {{"x", log_axis("t", "t")}, {"y", log_axis("sup", "sup_x |I_t(x)|")},
                       {"color", {{"field", "series"}, {"type", "nominal"}}}}}};
        out.push_back(write(dir, "decay_loglog.vl.json", spec));
    } else if (suite == "propagation") {
        require(dir, "propagation_energy.csv");
        json spec = {{"$schema", schema},
                     {"title", "Window energies, rightward against mirrored leftward windows"},
                     {"data", {{"url", "propagation_energy.csv"}}},
                     {"facet", {{"field", "l"}, {"type", "ordinal"}, {"title", "derivative order"}}},
                     {"spec",
                      {{"mark", "line"},
                       {"encoding",
                        {{"x", {{"field", "t"}, {"type", "quantitative"}}},
                         {"y", log_axis("energy", "window energy")},
                         {"color", {{"field", "side"}, {"type", "nominal"}}}}}}},
                     {"resolve", {{"scale", {{"y", "independent"}}}}}};
        out.push_back(write(dir, "window_energy.vl.json", spec));
    } else if (suite == "smoothing") {
        require(dir, "smoothing.csv");
        for (const auto& a : rep["artifacts"]) {
            const std::string f = a;
            if (f.rfind("smoothing_spectrum_", 0) != 0) continue;
            require(dir, f);
            json spec = {{"$schema", schema},
                         {"title", "Spectral tails of W(T) u0 and z(T) (" + f + ")"},
                         {"data", {{"url", f}}},
                         {"transform", json::array({{{"fold", {"abs_w", "abs_z"}}, {"as", {"part", "amplitude"}}},
                                                    {{"filter", "datum.amplitude > 0"}}})},
                         {"mark", "line"},
                         {"encoding",
                          {{"x", log_axis("xi", "xi")}, {"y", log_axis("amplitude", "|F|")},
                           {"color", {{"field", "part"}, {"type", "nominal"}}}}}};
            out.push_back(write(dir, fs::path(f).stem().string() + ".vl.json", spec));
        }
    } else if (suite == "blowup") {
        require(dir, "blowup_contrast.csv");
        json spec = {{"$schema", schema},
                     {"title", "Holder-quotient contrast against the irrational probe"},
                     {"data", {{"url", "blowup_contrast.csv"}}},
                     {"transform", json::array({{{"calculate", "'t=' + datum.t + ' x=' + datum.x_star"}, {"as", "point"}}})},
                     {"mark", "bar"},
                     {"encoding",
                      {{"x", {{"field", "point"}, {"type", "nominal"}, {"sort", nullptr}}},
                       {"y", log_axis("contrast", "contrast")},
                       {"color", {{"field", "kind"}, {"type", "nominal"}}}}}};
        out.push_back(write(dir, "contrast_bar.vl.json", spec));
    }
    return out;
}

}  // namespace hkdv

#include <hkdv/propagators.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace hkdv {

namespace fs = std::filesystem;

namespace {

std::string slice_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "slice_%05zu.bin", i);
    return buf;
}

}  // namespace

void save_trajectory(const std::string& dir, const trajectory& tr) {
    validate(tr);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir + ": " + ec.message());
    nlohmann::json meta;
    meta["n"] = tr.g.n;
    meta["L"] = tr.g.L;
    meta["j"] = tr.params.j;
    meta["k"] = tr.params.k;
    meta["dt"] = tr.dt;
    meta["stride"] = tr.stride;
    meta["T"] = tr.final_time();
    meta["times"] = tr.times;
    std::ofstream os(fs::path(dir) / "meta.json");
    if (!os) throw io_error("cannot write metadata in " + dir);
    os << meta.dump(2) << '\n';
    for (std::size_t i = 0; i < tr.slices.size(); ++i) save_field((fs::path(dir) / slice_name(i)).string(), tr.slices[i]);
}

trajectory load_trajectory(const std::string& dir) {
    std::ifstream is(fs::path(dir) / "meta.json");
    if (!is) throw io_error("missing meta.json in " + dir);
    trajectory tr;
    try {
        const auto meta = nlohmann::json::parse(is);
        tr.g = make_grid(meta.at("n").get<int>(), meta.at("L").get<double>());
        tr.params.j = meta.at("j").get<int>();
        tr.params.k = meta.at("k").get<int>();
        tr.dt = meta.at("dt").get<double>();
        tr.stride = meta.at("stride").get<int>();
        tr.times = meta.at("times").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("malformed metadata: ") + e.what());
    } catch (const invalid_argument& e) {
        throw io_error(std::string("invalid grid in metadata: ") + e.what());
    }
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        auto f = load_field((fs::path(dir) / slice_name(i)).string());
        if (!(f.g == tr.g)) throw io_error("slice grid differs from metadata");
        tr.slices.push_back(std::move(f));
    }
    try {
        validate(tr);
    } catch (const error& e) {
        throw io_error(e.what());
    }
    return tr;
}

}  // namespace hkdv

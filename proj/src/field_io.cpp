#include <hkdv/errors.hpp>
#include <hkdv/grid.hpp>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hkdv {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

grid read_header(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw io_error("missing header line");
    int n = 0;
    double L = 0.0;
    char comma = 0;
    std::istringstream ss(line);
    if (!(ss >> n >> comma >> L) || comma != ',') throw io_error("malformed header: " + line);
    try {
        return make_grid(n, L);
    } catch (const invalid_argument& e) {
        throw io_error(std::string("invalid grid in header: ") + e.what());
    }
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_field_csv(std::ostream& os, const real_field& f) {
    os << f.g.n << ',' << fmt(f.g.L) << '\n';
    for (double v : f.v) os << fmt(v) << '\n';
}

real_field read_field_csv(std::istream& is) {
    const grid g = read_header(is);
    std::vector<double> v;
    v.reserve(g.n);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(line, &pos));
        } catch (const std::exception&) {
            throw io_error("malformed sample: " + line);
        }
    }
    if (static_cast<int>(v.size()) != g.n) throw io_error("sample count does not match header");
    try {
        return make_field(g, std::move(v));
    } catch (const error& e) {
        throw io_error(e.what());
    }
}

void write_spectral_csv(std::ostream& os, const spectral_field& F) {
    os << F.g.n << ',' << fmt(F.g.L) << '\n';
    for (int i = 0; i < F.g.n; ++i)
        os << F.g.q(i) << ',' << fmt(F.c[i].real()) << ',' << fmt(F.c[i].imag()) << '\n';
}

spectral_field read_spectral_csv(std::istream& is) {
    const grid g = read_header(is);
    std::vector<cplx> c(g.n);
    std::vector<bool> seen(g.n, false);
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int q = 0;
        double re = 0, im = 0;
        char c1 = 0, c2 = 0;
        if (!(ss >> q >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') throw io_error("malformed row: " + line);
        if (q < -g.n / 2 || q >= g.n / 2) throw io_error("frequency index out of range: " + line);
        const int i = q >= 0 ? q : q + g.n;
        if (seen[i]) throw io_error("duplicate frequency index: " + line);
        seen[i] = true;
        c[i] = {re, im};
        ++count;
    }
    if (count != g.n) throw io_error("row count does not match header");
    return spectral_field{g, std::move(c)};
}

void write_field_bin(std::ostream& os, const real_field& f) {
    os.write("HKDVFLD1", 8);
    const std::int64_t n = f.g.n;
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&f.g.L), sizeof(double));
    os.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(sizeof(double) * f.v.size()));
}

real_field read_field_bin(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, "HKDVFLD1", 8) != 0) throw io_error("bad magic");
    std::int64_t n = 0;
    double L = 0;
    if (!is.read(reinterpret_cast<char*>(&n), sizeof n) || !is.read(reinterpret_cast<char*>(&L), sizeof L))
        throw io_error("truncated header");
    if (n <= 0 || n > (std::int64_t(1) << 30)) throw io_error("implausible grid size");
    grid g;
    try {
        g = make_grid(static_cast<int>(n), L);
    } catch (const invalid_argument& e) {
        throw io_error(e.what());
    }
    std::vector<double> v(g.n);
    if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(sizeof(double) * v.size())))
        throw io_error("truncated samples");
    try {
        return make_field(g, std::move(v));
    } catch (const error& e) {
        throw io_error(e.what());
    }
}

void save_field(const std::string& path, const real_field& f) {
    const bool bin = ends_with(path, ".bin");
    std::ofstream os(path, bin ? std::ios::binary : std::ios::out);
    if (!os) throw io_error("cannot open " + path);
    if (bin)
        write_field_bin(os, f);
    else
        write_field_csv(os, f);
    if (!os) throw io_error("write failed: " + path);
}

real_field load_field(const std::string& path) {
    const bool bin = ends_with(path, ".bin");
    std::ifstream is(path, bin ? std::ios::binary : std::ios::in);
    if (!is) throw io_error("cannot open " + path);
    return bin ? read_field_bin(is) : read_field_csv(is);
}

}  // namespace hkdv

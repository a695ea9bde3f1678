#pragma once

#include <hkdv/errors.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace hkdv::detail {

/// Round-trip decimal text for a double.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Comma-separated writer with a fixed header; numbers at %.17g.
class csv_writer {
public:
    csv_writer(const std::string& path, const std::vector<std::string>& header) : os_(path), width_(header.size()) {
        if (!os_) throw io_error("cannot write " + path);
        row_strings(header);
    }

    template <class... T>
    void row(const T&... cells) {
        std::vector<std::string> out;
        (out.push_back(cell(cells)), ...);
        row_strings(out);
    }

private:
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(double v) { return fmt(v); }

    void row_strings(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw invalid_argument("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << '\n';
        if (!os_) throw io_error("csv write failed");
    }

    std::ofstream os_;
    std::size_t width_;
};

}  // namespace hkdv::detail

#include <hkdv/errors.hpp>
#include <hkdv/norms.hpp>

#include "fft.hpp"

#include <algorithm>
#include <cmath>

namespace hkdv {

double sobolev_norm(const real_field& f, double s) {
    const int n = f.g.n;
    const auto h = detail::r2c(f.v);
    double acc = 0.0;
    for (int q = 0; q <= n / 2; ++q) {
        const double xi = 2.0 * std::numbers::pi * q / f.g.L;
        const double w = (q == 0 || q == n / 2) ? 1.0 : 2.0;
        acc += w * std::pow(1.0 + xi * xi, s) * std::norm(h[q]);
    }
    // dx * sum f^2 = (dx / n) * sum |DFT|^2
    return std::sqrt(acc * f.g.dx() / n);
}

double weighted_norm(const real_field& f, double r, weight_kind kind, double decay_threshold) {
    if (!(r > 0.0)) throw invalid_argument("weight exponent must be positive");
    check_decay(f, decay_threshold, "weighted_norm");
    double acc = 0.0;
    for (int m = 0; m < f.g.n; ++m) {
        const double x = f.g.x(m);
        const double w = kind == weight_kind::homogeneous ? std::pow(std::abs(x), r) : std::pow(1.0 + x * x, 0.5 * r);
        acc += w * w * f.v[m] * f.v[m];
    }
    return std::sqrt(acc * f.g.dx());
}

double z_norm(const real_field& f, double s, double r, double decay_threshold) {
    return sobolev_norm(f, s) + weighted_norm(f, r, weight_kind::homogeneous, decay_threshold);
}

double lp_norm(const real_field& f, double p) {
    if (!(p >= 1.0)) throw invalid_argument("norm exponent must be at least 1");
    if (std::isinf(p)) return max_abs(f);
    double acc = 0.0;
    for (double v : f.v) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.g.dx(), 1.0 / p);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

real_field mixed_norm_operand(const real_field& f, const mixed_norm_spec& spec) {
    real_field g = f;
    if (spec.deriv > 0) g = deriv(g, spec.deriv);
    if (spec.a > 0.0) g = frac_deriv(g, spec.a, deriv_kind::homogeneous);
    if (spec.s > 0.0) g = frac_deriv(g, spec.s, deriv_kind::inhomogeneous);
    if (spec.weight_r > 0.0)
        for (int m = 0; m < g.g.n; ++m) g.v[m] *= std::pow(std::abs(g.g.x(m)), spec.weight_r);
    return g;
}

namespace {

/// L^q norm in t of samples y(t_i).
double time_norm(const std::vector<double>& t, const std::vector<double>& y, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : y) m = std::max(m, std::abs(v));
        return m;
    }
    if (t.size() == 1) throw invalid_argument("finite-q time norm needs at least two slices");
    std::vector<double> yq(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) yq[i] = std::pow(std::abs(y[i]), q);
    return std::pow(trapezoid(t, yq), 1.0 / q);
}

}  // namespace

double mixed_norm(const trajectory& tr, const mixed_norm_spec& spec) {
    validate(tr);
    if (tr.slices.empty()) throw invalid_argument("empty trajectory");
    if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) throw invalid_argument("norm exponents must be at least 1");
    std::vector<real_field> ops;
    ops.reserve(tr.slices.size());
    for (const auto& s : tr.slices) ops.push_back(mixed_norm_operand(s, spec));
    const int n = tr.g.n;
    if (spec.order == mixed_norm_spec::ordering::t_outer_x_inner) {
        std::vector<double> inner(ops.size());
        for (std::size_t i = 0; i < ops.size(); ++i) inner[i] = lp_norm(ops[i], spec.p);
        return time_norm(tr.times, inner, spec.q);
    }
    std::vector<double> col(ops.size());
    std::vector<double> inner(n);
    for (int m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < ops.size(); ++i) col[i] = ops[i].v[m];
        inner[m] = time_norm(tr.times, col, spec.q);
    }
    return lp_norm(real_field{tr.g, std::move(inner)}, spec.p);
}

std::vector<mixed_norm_spec> work_space_components(int j, double s, double r, double eps) {
    using o = mixed_norm_spec::ordering;
    const double d = 2.0 * j - 1.0;
    std::vector<mixed_norm_spec> out;
    out.push_back({2.0, inf, o::t_outer_x_inner, s, 0.0, 0, 0.0, "Linf_T H^s"});
    out.push_back({2.0, inf, o::t_outer_x_inner, 0.0, 0.0, 0, r, "Linf_T L2 |x|^r"});
    out.push_back({2.0, inf, o::x_outer_t_inner, s - (2.0 * j + 1.0) / 4.0 - eps, 0.0, 0, 0.0, "L2_x Linf_T J^(s-(2j+1)/4-)"});
    out.push_back({inf, 2.0, o::x_outer_t_inner, s, 0.0, j, 0.0, "Linf_x L2_T J^s d^j"});
    out.push_back({inf, 2.0, o::t_outer_x_inner, j + 0.5, d / 4.0, 0, 0.0, "L2_T Linf_x J^(j+1/2) D^((2j-1)/4)"});
    out.push_back({4.0, 8.0, o::t_outer_x_inner, s, d / 8.0, 0, 0.0, "L8_T L4_x J^s D^((2j-1)/8)"});
    out.push_back({6.0, 6.0, o::t_outer_x_inner, s, d / 6.0, 0, 0.0, "L6_xT J^s D^((2j-1)/6)"});
    return out;
}

}  // namespace hkdv

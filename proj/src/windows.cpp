#include <hkdv/errors.hpp>
#include <hkdv/norms.hpp>

#include <algorithm>
#include <cmath>

namespace hkdv {

void validate(const window_spec& w) {
    if (!(w.eps > 0.0)) throw invalid_argument("window eps must be positive");
    if (!(w.R > w.eps)) throw invalid_argument("window requires R > eps");
    if (!(w.v >= 0.0)) throw invalid_argument("window speed must be nonnegative");
    if (w.l < 0 || w.m < w.l) throw invalid_argument("window requires 0 <= l <= m");
}

double window_integral(const grid& g, const std::vector<double>& y, double a, double b) {
    const double lo = -0.5 * g.L;
    const double hi = 0.5 * g.L;
    if (a < lo - 1e-12 || b > hi + 1e-12) throw invalid_argument("window exits the grid");
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b <= a) return 0.0;
    const int n = g.n;
    const double dx = g.dx();
    auto val = [&](int m) { return y[m % n]; };
    // Cell c spans [x_c, x_{c+1}]; cell n-1 closes the box periodically.
    const int ca = std::min(n - 1, static_cast<int>(std::floor((a - lo) / dx)));
    const int cb = std::min(n - 1, static_cast<int>(std::floor((b - lo) / dx)));
    double acc = 0.0;
    for (int c = ca; c <= cb; ++c) {
        const double x0 = lo + c * dx;
        const double s0 = std::max(a, x0);
        const double s1 = std::min(b, x0 + dx);
        if (s1 <= s0) continue;
        const double y0 = val(c), y1 = val(c + 1);
        const double u0 = (s0 - x0) / dx, u1 = (s1 - x0) / dx;
        const double f0 = y0 + (y1 - y0) * u0;
        const double f1 = y0 + (y1 - y0) * u1;
        acc += 0.5 * (f0 + f1) * (s1 - s0);
    }
    return acc;
}

window_result window_energy(const trajectory& tr, const window_spec& w, int j) {
    validate(w);
    validate(tr);
    if (tr.slices.empty()) throw invalid_argument("empty trajectory");
    if (j < 1) throw invalid_argument("dispersion order j must be at least 1");
    const grid& g = tr.g;
    const double half = 0.5 * g.L;
    const bool right = w.side == window_side::right;
    window_result res;
    res.times = tr.times;
    res.energy.assign(w.l + 1, std::vector<double>(tr.times.size(), 0.0));
    std::vector<double> st(tr.times.size(), 0.0);
    for (std::size_t i = 0; i < tr.slices.size(); ++i) {
        const double t = tr.times[i];
        const double e_lo = right ? w.x0 + w.eps - w.v * t : -half;
        const double e_hi = right ? half : w.x0 - w.eps + w.v * t;
        for (int l = 0; l <= w.l; ++l) {
            auto d = deriv(tr.slices[i], l);
            for (double& v : d.v) v *= v;
            res.energy[l][i] = window_integral(g, d.v, e_lo, e_hi);
        }
        const double s_lo = right ? w.x0 + w.eps - w.v * t : w.x0 - w.R + w.v * t;
        const double s_hi = right ? w.x0 + w.R - w.v * t : w.x0 - w.eps + w.v * t;
        auto d = deriv(tr.slices[i], w.m + j);
        for (double& v : d.v) v *= v;
        st[i] = window_integral(g, d.v, s_lo, s_hi);
    }
    for (const auto& e : res.energy) res.sup_energy.push_back(*std::max_element(e.begin(), e.end()));
    res.spacetime_energy = tr.times.size() > 1 ? trapezoid(tr.times, st) : 0.0;
    return res;
}

}  // namespace hkdv

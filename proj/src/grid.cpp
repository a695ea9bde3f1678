#include <hkdv/errors.hpp>
#include <hkdv/grid.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>

namespace hkdv {

namespace {

void require_same(const grid& a, const grid& b) {
    if (!(a == b)) throw grid_mismatch("fields live on different grids");
}

}  // namespace

std::vector<double> grid::nodes() const {
    std::vector<double> out(n);
    for (int m = 0; m < n; ++m) out[m] = x(m);
    return out;
}

grid make_grid(int n, double L) {
    if (n % 2 != 0) throw invalid_argument("grid size must be even");
    if (n < 16) throw invalid_argument("grid size must be at least 16");
    if (!(L > 0.0) || !std::isfinite(L)) throw invalid_argument("domain length must be positive");
    return grid{n, L};
}

real_field make_field(const grid& g, std::vector<double> v) {
    if (static_cast<int>(v.size()) != g.n) throw grid_mismatch("sample count differs from grid size");
    for (double s : v)
        if (!std::isfinite(s)) throw invalid_argument("non-finite sample");
    return real_field{g, std::move(v)};
}

real_field sample(const grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n);
    for (int m = 0; m < g.n; ++m) v[m] = f(g.x(m));
    return make_field(g, std::move(v));
}

real_field zeros(const grid& g) { return real_field{g, std::vector<double>(g.n, 0.0)}; }

spectral_field forward(const real_field& f) {
    const int n = f.g.n;
    auto half = detail::r2c(f.v);
    std::vector<cplx> c(n);
    const double dx = f.g.dx();
    for (int q = 0; q <= n / 2; ++q) {
        const double s = (q % 2 == 0) ? dx : -dx;
        c[q] = s * half[q];
    }
    c[0].imag(0.0);
    c[n / 2].imag(0.0);
    for (int q = 1; q < n / 2; ++q) c[n - q] = std::conj(c[q]);
    return spectral_field{f.g, std::move(c)};
}

real_field inverse(const spectral_field& F) {
    const int n = F.g.n;
    if (static_cast<int>(F.c.size()) != n) throw grid_mismatch("coefficient count differs from grid size");
    std::vector<cplx> half(n / 2 + 1);
    const double s = n / F.g.L;
    for (int q = 0; q <= n / 2; ++q) half[q] = ((q % 2 == 0) ? s : -s) * F.c[q];
    return make_field(F.g, detail::c2r(n, half));
}

double l2_norm(const real_field& f) {
    double s = 0.0;
    for (double v : f.v) s += v * v;
    return std::sqrt(s * f.g.dx());
}

double max_abs(const real_field& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

namespace detail {

cplx i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

std::vector<cplx> half_symbol(const grid& g, const std::function<cplx(double)>& symbol) {
    const int n = g.n;
    std::vector<cplx> out(n / 2 + 1);
    for (int q = 0; q <= n / 2; ++q) {
        const double xi = 2.0 * std::numbers::pi * q / g.L;
        const cplx mp = symbol(xi);
        const cplx mm = symbol(-xi);
        if (!std::isfinite(mp.real()) || !std::isfinite(mp.imag()) || !std::isfinite(mm.real()) ||
            !std::isfinite(mm.imag()))
            throw invalid_argument("multiplier symbol is not finite on the grid");
        const double scale = std::max({std::abs(mp), std::abs(mm), 1e-300});
        if (q < n / 2) {
            if (std::abs(mm - std::conj(mp)) > 1e-12 * scale)
                throw invalid_argument("multiplier symbol is not Hermitian");
            out[q] = mp;
        } else {
            const bool even_real = std::abs(mp - mm) <= 1e-14 * scale && std::abs(mm.imag()) <= 1e-14 * scale;
            out[q] = even_real ? cplx(mm.real(), 0.0) : cplx(0.0, 0.0);
        }
    }
    out[0].imag(0.0);
    return out;
}

std::vector<cplx> deriv_symbol(const grid& g, int k) {
    const int n = g.n;
    std::vector<cplx> out(n / 2 + 1);
    const cplx ik = i_pow(k);
    for (int q = 0; q <= n / 2; ++q) out[q] = ik * std::pow(2.0 * std::numbers::pi * q / g.L, k);
    if (k == 0) out[0] = 1.0;
    if (k % 2 == 1) out[n / 2] = 0.0;
    return out;
}

std::vector<double> apply_half(const std::vector<double>& v, const std::vector<cplx>& sym) {
    const int n = static_cast<int>(v.size());
    auto h = r2c(v);
    for (int q = 0; q <= n / 2; ++q) h[q] *= sym[q];
    return c2r(n, h);
}

}  // namespace detail

real_field apply_multiplier(const multiplier_spec& spec, const real_field& f) {
    if (!spec.symbol) throw invalid_argument("empty multiplier symbol");
    return make_field(f.g, detail::apply_half(f.v, detail::half_symbol(f.g, spec.symbol)));
}

real_field deriv(const real_field& f, int k) {
    if (k < 0) throw invalid_argument("derivative order must be nonnegative");
    if (k == 0) return f;
    return make_field(f.g, detail::apply_half(f.v, detail::deriv_symbol(f.g, k)));
}

real_field frac_deriv(const real_field& f, double s, deriv_kind kind) {
    if (!(s >= 0.0)) throw invalid_argument("fractional order must be nonnegative");
    if (s == 0.0) return f;
    std::vector<cplx> sym(f.g.n / 2 + 1);
    for (int q = 0; q <= f.g.n / 2; ++q) {
        const double xi = 2.0 * std::numbers::pi * q / f.g.L;
        sym[q] = kind == deriv_kind::homogeneous ? (q == 0 ? 0.0 : std::pow(xi, s))
                                                 : std::pow(1.0 + xi * xi, 0.5 * s);
    }
    return make_field(f.g, detail::apply_half(f.v, sym));
}

int dealias_cutoff(int n, int k) {
    if (k < 1) throw invalid_argument("nonlinearity power must be positive");
    return (n - 1) / (k + 2);
}

spectral_field dealias(const spectral_field& F, int k) {
    const int kc = dealias_cutoff(F.g.n, k);
    spectral_field out = F;
    for (int i = 0; i < F.g.n; ++i)
        if (std::abs(F.g.q(i)) > kc) out.c[i] = 0.0;
    return out;
}

real_field multiply(const real_field& a, const real_field& b) {
    require_same(a.g, b.g);
    real_field out = a;
    for (int m = 0; m < a.g.n; ++m) out.v[m] *= b.v[m];
    return out;
}

real_field add(const real_field& a, const real_field& b, double scale_b) {
    require_same(a.g, b.g);
    real_field out = a;
    for (int m = 0; m < a.g.n; ++m) out.v[m] += scale_b * b.v[m];
    return out;
}

real_field scale(const real_field& a, double s) {
    real_field out = a;
    for (double& v : out.v) v *= s;
    return out;
}

double boundary_amplitude(const real_field& f) {
    const double peak = max_abs(f);
    if (peak == 0.0) return 0.0;
    const int n = f.g.n;
    const int w = std::max(1, n / 50);
    double edge = 0.0;
    for (int m = 0; m < w; ++m) edge = std::max({edge, std::abs(f.v[m]), std::abs(f.v[n - 1 - m])});
    return edge / peak;
}

void check_decay(const real_field& f, double threshold, const std::string& what) {
    const double b = boundary_amplitude(f);
    if (b > threshold)
        throw decay_violation(what + ": boundary amplitude " + std::to_string(b) + " exceeds " +
                              std::to_string(threshold));
}

double rel_l2(const real_field& a, const real_field& b) {
    require_same(a.g, b.g);
    double num = 0.0, den = 0.0;
    for (int m = 0; m < a.g.n; ++m) {
        const double d = a.v[m] - b.v[m];
        num += d * d;
        den += b.v[m] * b.v[m];
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace hkdv

#include <hkdv/propagators.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <cmath>

namespace hkdv {

namespace {

double ipow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

cplx cpow_int(cplx z, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

/// Half-spectrum exp(lambda t) with the Nyquist entry set to `nyquist`.
std::vector<cplx> linear_factor(const grid& g, int j, double t, cplx nyquist) {
    const int h = g.n / 2;
    std::vector<cplx> out(h + 1);
    for (int q = 0; q < h; ++q) {
        const double ph = t * dispersion_phase(j, 2.0 * std::numbers::pi * q / g.L);
        out[q] = {std::cos(ph), std::sin(ph)};
    }
    out[h] = nyquist;
    return out;
}

struct nonlinear_op {
    int n;
    int k;
    std::vector<cplx> dsym;
    std::vector<double> mask;

    nonlinear_op(const grid& g, const dispersion_params& p)
        : n(g.n), k(p.k), dsym(detail::deriv_symbol(g, p.j)), mask(g.n / 2 + 1, 0.0) {
        const int kc = dealias_cutoff(g.n, p.k);
        for (int q = 0; q <= g.n / 2; ++q) mask[q] = q <= kc ? 1.0 : 0.0;
    }

    /// -dealias(u^k d^j u) in raw half-spectrum form.
    std::vector<cplx> operator()(const std::vector<cplx>& uh) const {
        std::vector<double> u(n), du(n);
        detail::c2r(n, uh.data(), u.data());
        std::vector<cplx> tmp(uh.size());
        for (std::size_t q = 0; q < uh.size(); ++q) tmp[q] = dsym[q] * uh[q];
        detail::c2r(n, tmp.data(), du.data());
        for (int m = 0; m < n; ++m) u[m] = ipow(u[m], k) * du[m];
        detail::r2c(n, u.data(), tmp.data());
        for (std::size_t q = 0; q < tmp.size(); ++q) tmp[q] *= -mask[q];
        return tmp;
    }
};

bool all_finite(const std::vector<cplx>& v) {
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

}  // namespace

void validate(const dispersion_params& p) {
    if (p.j < 1) throw invalid_argument("dispersion order j must be at least 1");
    if (p.k < 1) throw invalid_argument("nonlinearity power k must be at least 1");
}

void validate(const trajectory& tr) {
    if (tr.times.size() != tr.slices.size()) throw invalid_argument("times and slices differ in length");
    for (std::size_t i = 0; i < tr.slices.size(); ++i) {
        if (!(tr.slices[i].g == tr.g)) throw grid_mismatch("slice on a different grid");
        if (i > 0 && !(tr.times[i] > tr.times[i - 1])) throw invalid_argument("times not strictly increasing");
    }
}

double dispersion_phase(int j, double xi) {
    const double v = ipow(xi, 2 * j + 1);
    return (j % 2 == 1) ? v : -v;
}

real_field linear_flow(const dispersion_params& p, double t, const real_field& u0) {
    validate(p);
    if (t == 0.0) return u0;
    auto sym = linear_factor(u0.g, p.j, t, 0.0);
    return make_field(u0.g, detail::apply_half(u0.v, sym));
}

int conjugation_weight(const dispersion_params& p, const conjugation_spec& spec) {
    if (spec.sigma != 1 && spec.sigma != -1) throw invalid_argument("sigma must be +1 or -1");
    return (p.j % 2 == 1) ? spec.sigma : -spec.sigma;
}

double conjugation_top_log_gain(const dispersion_params& p, const conjugation_spec& spec, double t, const grid& g) {
    const double a = conjugation_weight(p, spec);
    const double xi = 2.0 * std::numbers::pi * (g.n / 2 - 1) / g.L;
    return -t * cpow_int(cplx(-a, xi), 2 * p.j + 1).real();
}

real_field conjugated_flow(const dispersion_params& p, const conjugation_spec& spec, double t, const real_field& w0) {
    validate(p);
    if (spec.time_sign != 1 && spec.time_sign != -1) throw invalid_argument("time_sign must be +1 or -1");
    if (t == 0.0) return w0;
    if ((t > 0) != (spec.time_sign > 0)) throw invalid_argument("sign of t contradicts time_sign");
    if (conjugation_top_log_gain(p, spec, t, w0.g) > 0.0)
        throw unstable_conjugation("conjugated symbol grows at high frequency for this weight and time direction");
    const double a = conjugation_weight(p, spec);
    const int e = 2 * p.j + 1;
    auto sym = detail::half_symbol(w0.g, [&](double xi) { return std::exp(-t * cpow_int(cplx(-a, xi), e)); });
    return make_field(w0.g, detail::apply_half(w0.v, sym));
}

real_field nonlinearity(const dispersion_params& p, const real_field& u) {
    validate(p);
    nonlinear_op op(u.g, p);
    auto h = op(detail::r2c(u.v));
    for (auto& c : h) c = -c;
    return make_field(u.g, detail::c2r(u.g.n, h));
}

trajectory evolve(const dispersion_params& p, const real_field& u0, double T, double dt, int stride) {
    validate(p);
    if (!(T > 0.0) || !std::isfinite(T)) throw invalid_argument("final time must be positive");
    if (!(dt > 0.0)) throw invalid_argument("time step must be positive");
    if (stride < 1) throw invalid_argument("stride must be at least 1");
    const grid& g = u0.g;
    const int n = g.n;
    const int steps = static_cast<int>(std::ceil(T / dt - 1e-9));
    const double h = T / steps;
    const auto E = linear_factor(g, p.j, h, 1.0);
    const auto E2 = linear_factor(g, p.j, 0.5 * h, 1.0);
    const nonlinear_op N(g, p);

    auto uh = detail::r2c(u0.v);
    uh[n / 2] = 0.0;

    trajectory tr;
    tr.g = g;
    tr.params = p;
    tr.dt = h;
    tr.stride = stride;
    tr.times.push_back(0.0);
    tr.slices.push_back(make_field(g, detail::c2r(n, uh)));

    const std::size_t H = uh.size();
    std::vector<cplx> A(H), B(H), C(H);
    for (int s = 1; s <= steps; ++s) {
        const auto Na = N(uh);
        for (std::size_t q = 0; q < H; ++q) A[q] = E2[q] * (uh[q] + 0.5 * h * Na[q]);
        const auto Nb = N(A);
        for (std::size_t q = 0; q < H; ++q) B[q] = E2[q] * uh[q] + 0.5 * h * Nb[q];
        const auto Nc = N(B);
        for (std::size_t q = 0; q < H; ++q) C[q] = E[q] * uh[q] + h * E2[q] * Nc[q];
        const auto Nd = N(C);
        for (std::size_t q = 0; q < H; ++q)
            uh[q] = E[q] * uh[q] + (h / 6.0) * (E[q] * Na[q] + 2.0 * E2[q] * (Nb[q] + Nc[q]) + Nd[q]);
        const double t = s * h;
        if (!all_finite(uh))
            throw diverged("solution became non-finite at t = " + std::to_string(t), std::move(tr), t);
        if (s % stride == 0 || s == steps) {
            tr.times.push_back(t);
            tr.slices.push_back(make_field(g, detail::c2r(n, uh)));
        }
    }
    return tr;
}

namespace {

void check_duhamel_inputs(const trajectory& tr, const real_field& u0) {
    validate(tr);
    if (tr.slices.empty()) throw invalid_argument("empty trajectory");
    if (!(u0.g == tr.g)) throw grid_mismatch("datum and trajectory grids differ");
    if (tr.times.front() != 0.0) throw invalid_argument("trajectory does not start at t = 0");
    auto uh = detail::r2c(u0.v);
    uh[u0.g.n / 2] = 0.0;
    const real_field projected = make_field(u0.g, detail::c2r(u0.g.n, uh));
    if (rel_l2(tr.slices.front(), projected) > 1e-12)
        throw invalid_argument("trajectory was not started from this datum");
}

}  // namespace

trajectory duhamel_split(const trajectory& tr, const real_field& u0, const dispersion_params& p) {
    check_duhamel_inputs(tr, u0);
    trajectory z = tr;
    for (std::size_t i = 0; i < tr.slices.size(); ++i)
        z.slices[i] = add(tr.slices[i], linear_flow(p, tr.times[i], u0), -1.0);
    z.slices[0] = zeros(tr.g);
    return z;
}

duhamel_check duhamel_crosscheck(const trajectory& tr, const real_field& u0, const dispersion_params& p) {
    check_duhamel_inputs(tr, u0);
    const std::size_t M = tr.slices.size() - 1;
    if (M < 2 || M % 2 != 0) throw invalid_argument("Simpson rule needs an even number of intervals");
    const double h = tr.times[1] - tr.times[0];
    for (std::size_t i = 1; i <= M; ++i)
        if (std::abs(tr.times[i] - tr.times[i - 1] - h) > 1e-9 * h)
            throw invalid_argument("Simpson rule needs uniformly spaced slices");
    const grid& g = tr.g;
    const double T = tr.times.back();
    const nonlinear_op N(g, p);
    std::vector<cplx> acc(g.n / 2 + 1, 0.0);
    for (std::size_t i = 0; i <= M; ++i) {
        const double w = (i == 0 || i == M) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const auto nh = N(detail::r2c(tr.slices[i].v));
        const auto fac = linear_factor(g, p.j, T - tr.times[i], 0.0);
        for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += (w * h / 3.0) * fac[q] * nh[q];
    }
    duhamel_check out;
    out.quadrature = make_field(g, detail::c2r(g.n, acc));
    out.subtraction = add(tr.slices.back(), linear_flow(p, T, u0), -1.0);
    out.rel_diff = rel_l2(out.quadrature, out.subtraction);
    return out;
}

}  // namespace hkdv

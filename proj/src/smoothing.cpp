#include <hkdv/blowup.hpp>
#include <hkdv/errors.hpp>
#include <hkdv/norms.hpp>
#include <hkdv/rng.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <cmath>

namespace hkdv {

real_field rough_datum(const grid& g, double s, int k, double amp, std::uint64_t seed) {
    if (!(amp > 0.0)) throw invalid_argument("amplitude must be positive");
    const int n = g.n;
    const int kc = dealias_cutoff(n, k);
    rng gen(seed);
    std::vector<cplx> h(n / 2 + 1, 0.0);
    for (int q = 1; q <= n / 2; ++q) {
        const double ph = 2.0 * std::numbers::pi * gen.uniform();
        if (q > kc) continue;
        const double xi = 2.0 * std::numbers::pi * q / g.L;
        h[q] = std::polar(std::pow(xi, -(s + 0.5)), ph);
    }
    h[n / 2] = 0.0;
    auto v = detail::c2r(n, h);
    real_field f = make_field(g, std::move(v));
    return scale(f, amp / max_abs(f));
}

double smoothing_dt(const real_field& u0, int k) {
    return 0.5 / (3.0 * std::pow(max_abs(u0), k) * u0.g.xi_max() + 1.0);
}

smoothing_result smoothing_gain(const trajectory& tr, const real_field& u0, const dispersion_params& p) {
    validate(p);
    validate(tr);
    if (tr.slices.size() < 2) throw invalid_argument("trajectory needs at least two slices");
    if (!(tr.g == u0.g)) throw grid_mismatch("datum and trajectory grids differ");
    const grid& g = tr.g;
    const double T = tr.final_time();
    smoothing_result res;
    res.xi_hi = 2.0 * std::numbers::pi / g.L * dealias_cutoff(g.n, p.k);
    res.xi_lo = res.xi_hi / 4.0;
    const real_field wu = linear_flow(p, T, u0);
    const real_field z = add(tr.slices.back(), wu, -1.0);
    res.z_ratio = l2_norm(z) / l2_norm(wu);
    if (!(res.z_ratio > 1e-10)) return res;
    res.defined = true;
    res.tail_w = tail_exponent(forward(wu), res.xi_lo, res.xi_hi);
    res.tail_z = tail_exponent(forward(z), res.xi_lo, res.xi_hi);
    res.gain_raw = res.tail_z - res.tail_w;
    // Transport by the spatial mean of u^k: d_t u + mean(u^k) d^j u.
    std::vector<double> means;
    for (const auto& s : tr.slices) {
        double acc = 0.0;
        for (double v : s.v) acc += std::pow(v, p.k);
        means.push_back(acc / g.n);
    }
    res.transport = trapezoid(tr.times, means);
    if (p.j % 2 == 0) {
        // Even j turns the mean term into a diffusion; no unitary renormalization exists.
        res.tail_z_renorm = res.tail_z;
        res.gain = res.gain_raw;
        return res;
    }
    const cplx ij = detail::i_pow(p.j);
    const double C = res.transport;
    const int j = p.j;
    const real_field moved = apply_multiplier(
        {[&](double xi) { return std::exp(-C * ij * std::pow(xi, j)); }, "mean transport"}, u0);
    const real_field zt = add(tr.slices.back(), linear_flow(p, T, moved), -1.0);
    res.tail_z_renorm = tail_exponent(forward(zt), res.xi_lo, res.xi_hi);
    res.gain = res.tail_z_renorm - res.tail_w;
    return res;
}

}  // namespace hkdv

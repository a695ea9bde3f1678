#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>
#include <hkdv/norms.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <cmath>

namespace hkdv {

namespace {

std::vector<double> drop_nyquist(const std::vector<double>& v) {
    auto h = detail::r2c(v);
    h.back() = 0.0;
    return detail::c2r(static_cast<int>(v.size()), h);
}

}  // namespace

double verify_reduction_identity(int j, const real_field& f) {
    if (j < 1) throw invalid_argument("j must be at least 1");
    const int n = f.g.n;
    const auto h = detail::r2c(f.v);
    double peak = 0.0;
    for (const auto& c : h) peak = std::max(peak, std::abs(c));
    for (int q = n / 4 + 1; q <= n / 2; ++q)
        if (std::abs(h[q]) > 1e-12 * peak) throw invalid_argument("field is not band-limited to |q| <= n/4");
    const auto cv = to_double(solve_coefficients(j));
    const real_field lhs = make_field(f.g, drop_nyquist(multiply(deriv(f, 2 * j + 1), f).v));
    real_field rhs = zeros(f.g);
    for (int l = 0; l <= j; ++l) {
        const real_field d = deriv(f, j - l);
        rhs = add(rhs, deriv(multiply(d, d), 2 * l + 1), 0.5 * cv[l]);
    }
    rhs = make_field(f.g, drop_nyquist(rhs.v));
    const double diff = l2_norm(add(lhs, rhs, -1.0));
    const double ref = l2_norm(lhs);
    return ref < 1e-14 ? diff : diff / ref;
}

commutator_result x_weight_commutator(const dispersion_params& p, double t, const real_field& u0,
                                      double decay_threshold) {
    validate(p);
    const real_field x = sample(u0.g, [](double s) { return s; });
    const real_field xu = multiply(x, u0);
    const real_field wu = linear_flow(p, t, u0);
    const real_field lhs = linear_flow(p, t, xu);
    commutator_result res;
    res.boundary = std::max({boundary_amplitude(wu), boundary_amplitude(xu), boundary_amplitude(lhs)});
    if (res.boundary > decay_threshold)
        throw decay_violation("commutator terms reach the box edge (amplitude " + std::to_string(res.boundary) + ")");
    const real_field xwu = multiply(x, wu);
    const real_field rhs = add(xwu, linear_flow(p, t, deriv(u0, 2 * p.j)), -(2.0 * p.j + 1.0) * t);
    const double ref = l2_norm(xwu);
    res.rel_error = ref == 0.0 ? l2_norm(add(lhs, rhs, -1.0)) : l2_norm(add(lhs, rhs, -1.0)) / ref;
    return res;
}

decomposition_result frac_weight_decomposition(const dispersion_params& p, double t, double r, double s,
                                               const real_field& u0, double decay_threshold) {
    validate(p);
    if (!(r > 0.0 && r < 1.0)) throw invalid_argument("weight exponent r must lie in (0,1)");
    if (s < 2.0 * p.j * r) throw invalid_argument("decomposition requires s >= 2 j r");
    const real_field wu = linear_flow(p, t, u0);
    check_decay(u0, decay_threshold, "weighted datum");
    check_decay(wu, decay_threshold, "propagated datum");
    const real_field weight = sample(u0.g, [r](double x) { return std::pow(std::abs(x), r); });
    decomposition_result res;
    res.remainder = add(linear_flow(p, -t, multiply(weight, wu)), multiply(weight, u0), -1.0);
    const double den = (1.0 + std::abs(t)) * sobolev_norm(u0, s);
    res.ratio = den == 0.0 ? 0.0 : l2_norm(res.remainder) / den;
    return res;
}

}  // namespace hkdv

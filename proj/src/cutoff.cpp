#include <hkdv/errors.hpp>
#include <hkdv/norms.hpp>

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>

namespace hkdv {

namespace {

/// Standard bump exp(-1/(1 - y^2)) on (-1, 1).
double bump(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - y * y));
}

double bump_prime(double y) {
    if (std::abs(y) >= 1.0) return 0.0;
    const double d = 1.0 - y * y;
    return bump(y) * (-2.0 * y / (d * d));
}

struct bump_tables {
    gsl_integration_glfixed_table* gl;
    double mass;

    bump_tables() : gl(gsl_integration_glfixed_table_alloc(96)), mass(0.0) { mass = raw(1.0, 0); }

    /// int_{-1}^{y} s^power bump(s) ds, split at 0 to keep the nodes dense near the flat ends.
    double raw(double y, int power) const {
        auto f = [power](double s) { return (power == 0 ? 1.0 : s) * bump(s); };
        auto integrate = [&](double a, double b) {
            if (b <= a) return 0.0;
            double acc = 0.0;
            for (std::size_t i = 0; i < gl->n; ++i) {
                double xi, wi;
                gsl_integration_glfixed_point(a, b, i, &xi, &wi, gl);
                acc += wi * f(xi);
            }
            return acc;
        };
        y = std::clamp(y, -1.0, 1.0);
        if (y <= 0.0) return integrate(-1.0, y);
        return integrate(-1.0, 0.0) + integrate(0.0, y);
    }
};

const bump_tables& tables() {
    static const bump_tables t;
    return t;
}

/// Normalized bump density on [-1, 1] and its integrals F (cdf) and G = int F.
double dens(double y) { return bump(y) / tables().mass; }
double dens_prime(double y) { return bump_prime(y) / tables().mass; }
double cdf(double y) {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return tables().raw(y, 0) / tables().mass;
}
double cdf_integral(double y) {
    if (y <= -1.0) return 0.0;
    if (y >= 1.0) return y;
    return y * cdf(y) - tables().raw(y, 1) / tables().mass;
}

}  // namespace

cutoff::cutoff(cutoff_spec spec) : spec_(spec) {
    if (!(spec.eps > 0.0)) throw invalid_argument("cutoff eps must be positive");
    if (!(spec.b >= 5.0 * spec.eps)) throw invalid_argument("cutoff requires b >= 5 eps");
    slope_ = 1.0 / (spec.b - 3.0 * spec.eps);
}

double cutoff::value(double x) const { return derivative(x, 0); }

double cutoff::derivative(double x, int order) const {
    const double e = spec_.eps;
    const double y1 = (x - 2.0 * e) / e;
    const double y2 = (x - spec_.b + e) / e;
    switch (order) {
        case 0:
            if (x <= e) return 0.0;
            if (x >= spec_.b) return 1.0;
            return slope_ * e * (cdf_integral(y1) - cdf_integral(y2));
        case 1: return slope_ * (cdf(y1) - cdf(y2));
        case 2: return slope_ * (dens(y1) - dens(y2)) / e;
        case 3: return slope_ * (dens_prime(y1) - dens_prime(y2)) / (e * e);
        default: throw invalid_argument("cutoff derivatives are available up to order 3");
    }
}

std::vector<double> cutoff::sample(const std::vector<double>& xs, int order) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = derivative(xs[i], order);
    return out;
}

cutoff make_cutoff(const cutoff_spec& spec) { return cutoff(spec); }

cutoff_report check_cutoff_properties(const cutoff_spec& spec, int samples) {
    const cutoff chi(spec);
    const cutoff wide({spec.eps / 3.0, spec.b + spec.eps});
    const cutoff narrow({spec.eps / 5.0, spec.eps});
    cutoff_report rep;
    rep.spec = spec;
    rep.samples = samples;
    const double lo = -spec.eps;
    const double hi = spec.b + 2.0 * spec.eps;
    rep.support_ok = true;
    rep.monotone_ok = true;
    rep.chi_at_3eps = chi.value(3.0 * spec.eps);
    rep.lower_bound = spec.eps / (2.0 * (spec.b - 3.0 * spec.eps));
    rep.lower_bound_ok = rep.chi_at_3eps >= rep.lower_bound;
    rep.derivative_constants.assign(3, 0.0);
    rep.wide_derivative_ok = true;
    bool constants_finite = true;
    double prev = -1.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double c0 = chi.value(x);
        const double c1 = chi.derivative(x, 1);
        if (x <= spec.eps && c0 != 0.0) rep.support_ok = false;
        if (x >= spec.b && c0 != 1.0) rep.support_ok = false;
        if ((x < spec.eps || x > spec.b) && c1 != 0.0) rep.support_ok = false;
        if (c0 < prev - 1e-13) rep.monotone_ok = false;
        if (x >= 3.0 * spec.eps && c0 < rep.chi_at_3eps - 1e-13) rep.monotone_ok = false;
        prev = c0;
        const double w1 = wide.derivative(x, 1);
        const double w0 = wide.value(x);
        rep.wide_derivative_max = std::max(rep.wide_derivative_max, w1);
        if (w1 > 1.0 / (spec.b - 3.0 * spec.eps) + 1e-15) rep.wide_derivative_ok = false;
        for (int l = 1; l <= 3; ++l) {
            const double d = std::abs(chi.derivative(x, l));
            if (d == 0.0) continue;
            if (w1 <= 0.0) {
                constants_finite = false;
                continue;
            }
            rep.derivative_constants[l - 1] = std::max(rep.derivative_constants[l - 1], d / w1);
        }
        if (c1 > 0.0) {
            if (w1 * w0 <= 0.0 || narrow.value(x) <= 0.0) {
                constants_finite = false;
                continue;
            }
            rep.product_constant = std::max(rep.product_constant, c1 / (w1 * w0));
            rep.narrow_constant = std::max(rep.narrow_constant, c1 / narrow.value(x));
        }
    }
    for (double c : rep.derivative_constants) constants_finite = constants_finite && std::isfinite(c);
    constants_finite = constants_finite && std::isfinite(rep.product_constant) && std::isfinite(rep.narrow_constant);
    rep.pass = rep.support_ok && rep.monotone_ok && rep.lower_bound_ok && rep.wide_derivative_ok && constants_finite;
    return rep;
}

}  // namespace hkdv

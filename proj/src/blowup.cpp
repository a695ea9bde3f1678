#include <hkdv/blowup.hpp>
#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hkdv {

namespace {

constexpr double pi = std::numbers::pi;

/// Values of g(x_m + a) for the requested node indices, from a raw half spectrum of g.
std::vector<double> shifted_values(const grid& g, const std::vector<cplx>& gh, double a, const std::vector<int>& idx) {
    const int n = g.n;
    std::vector<cplx> s(gh.size());
    for (int q = 0; q < n / 2; ++q) s[q] = gh[q] * std::polar(1.0, 2.0 * pi * q / g.L * a);
    s[n / 2] = 0.0;
    const auto v = detail::c2r(n, s);
    std::vector<double> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[((idx[i] % n) + n) % n];
    return out;
}

indicator_result witness(const grid& g, const std::vector<cplx>& gh, double x_star, const indicator_options& opt) {
    if (x_star < -0.5 * g.L || x_star >= 0.5 * g.L) throw invalid_argument("x* outside the grid");
    if (opt.h_set.empty()) throw invalid_argument("empty step set");
    if (!(opt.rho >= 0.0)) throw invalid_argument("neighbourhood radius must be nonnegative");
    const double dx = g.dx();
    const int ms = static_cast<int>(std::lround((x_star + 0.5 * g.L) / dx));
    const double delta = x_star - g.x(ms);
    const int r = static_cast<int>(std::floor(opt.rho / dx + 1e-9));
    std::vector<int> idx;
    for (int i = -r; i <= r; ++i) idx.push_back(ms + i);
    const auto g0 = shifted_values(g, gh, delta, idx);
    indicator_result res;
    for (double h : opt.h_set) {
        if (!(h > 0.0)) throw invalid_argument("steps must be positive");
        const auto gp = shifted_values(g, gh, delta + h, idx);
        const auto gm = shifted_values(g, gh, delta - h, idx);
        const auto gp2 = shifted_values(g, gh, delta + 2 * h, idx);
        const auto gm2 = shifted_values(g, gh, delta - 2 * h, idx);
        double best = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const double dp = (gp[i] - g0[i]) / h;
            const double dm = (g0[i] - gm[i]) / h;
            const double dp2 = (gp2[i] - g0[i]) / (2 * h);
            const double dm2 = (g0[i] - gm2[i]) / (2 * h);
            best = std::max(best, std::abs(dp - dm) + std::abs(dp - dp2) + std::abs(dm - dm2));
        }
        res.per_h.push_back(best);
        res.holder_quotient = std::max(res.holder_quotient, best);
    }
    return res;
}

/// Raw half spectrum of f times a half symbol.
std::vector<cplx> times(std::vector<cplx> a, const std::vector<cplx>& s) {
    for (std::size_t q = 0; q < a.size(); ++q) a[q] *= s[q];
    return a;
}

std::vector<cplx> flow_symbol(const grid& g, int j, double t) {
    std::vector<cplx> s(g.n / 2 + 1);
    for (int q = 0; q < g.n / 2; ++q) s[q] = std::polar(1.0, t * dispersion_phase(j, 2.0 * pi * q / g.L));
    s[g.n / 2] = 0.0;
    return s;
}

spectral_field from_raw(const grid& g, const std::vector<cplx>& h) {
    return forward(make_field(g, detail::c2r(g.n, h)));
}

}  // namespace

int profile_failure_order(double alpha) {
    if (!(alpha > 0.0)) throw invalid_argument("profile exponent must be positive");
    const double r = std::round(alpha);
    if (std::abs(alpha - r) < 1e-12 && static_cast<long>(r) % 2 == 0) return -1;
    return static_cast<int>(std::ceil(alpha - 1e-12));
}

double profile_value(const singular_profile_spec& spec, double x) {
    return std::exp(-2.0 * std::pow(std::abs(x - spec.center), spec.alpha));
}

real_field singular_profile(const singular_profile_spec& spec, const grid& g) {
    profile_failure_order(spec.alpha);
    return sample(g, [&](double x) { return profile_value(spec, x); });
}

std::string to_string(weight_scheme w) { return w == weight_scheme::double_exponential ? "double_exponential" : "normalized"; }

weight_scheme weight_scheme_from_string(const std::string& s) {
    if (s == "double_exponential") return weight_scheme::double_exponential;
    if (s == "normalized") return weight_scheme::normalized;
    throw invalid_argument("unknown weight scheme: " + s);
}

double double_exponential_weight(int p1, int q1, int p2, int q2) {
    return std::exp(-std::exp(static_cast<double>(q1 + q2))) * std::exp(-static_cast<double>(p1 * p1 + p2 * p2));
}

blowup_datum build_blowup_datum(const blowup_datum_spec& spec, const dispersion_params& p, const grid& g,
                                double decay_threshold) {
    validate(p);
    if (spec.qmax < 1 || spec.pmax < 1) throw invalid_argument("empty truncation");
    if (!(spec.delta > 0.0)) throw invalid_argument("normalized amplitude must be positive");
    std::vector<std::pair<int, int>> pairs;
    for (int q = 1; q <= spec.qmax; ++q)
        for (int pp = 1; pp <= spec.pmax; ++pp)
            if (std::gcd(pp, q) == 1) pairs.emplace_back(pp, q);
    blowup_datum out;
    out.u0 = zeros(g);
    for (const auto& [p1, q1] : pairs) {
        const real_field phi = singular_profile({spec.alpha, static_cast<double>(p1) / q1}, g);
        check_decay(phi, decay_threshold, "translated profile");
        for (const auto& [p2, q2] : pairs) {
            blowup_term t;
            t.p1 = p1;
            t.q1 = q1;
            t.p2 = p2;
            t.q2 = q2;
            t.weight = spec.scheme == weight_scheme::double_exponential ? double_exponential_weight(p1, q1, p2, q2) : spec.delta;
            t.singular_time = static_cast<double>(p2) / q2;
            t.singular_x = static_cast<double>(p1) / q1;
            const real_field term = linear_flow(p, -t.singular_time, phi);
            t.boundary = boundary_amplitude(term);
            if (t.boundary > decay_threshold)
                throw decay_violation("back-propagated term reaches the box edge (amplitude " +
                                      std::to_string(t.boundary) + ")");
            out.u0 = add(out.u0, term, t.weight);
            out.terms.push_back(t);
        }
    }
    if (out.terms.empty()) throw invalid_argument("empty truncation");
    return out;
}

std::vector<double> manifest_times(const std::vector<blowup_term>& terms) {
    std::vector<double> v;
    for (const auto& t : terms) v.push_back(t.singular_time);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> manifest_locations(const std::vector<blowup_term>& terms) {
    std::vector<double> v;
    for (const auto& t : terms) v.push_back(t.singular_x);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

gap_certificate irrationality_gap(double t, int kmax, double exponent) {
    if (kmax < 2) throw invalid_argument("kmax must be at least 2");
    gap_certificate c;
    c.t = t;
    c.kmax = kmax;
    c.gap = std::numeric_limits<double>::infinity();
    for (int q = 1; q <= kmax; ++q)
        for (int p = 1; p <= kmax; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const double d = std::abs(t - static_cast<double>(p) / q);
            const double v = d * std::pow(static_cast<double>(p + q), exponent);
            if (v < c.gap) {
                c.gap = v;
                c.p = p;
                c.q = q;
            }
        }
    c.rational_in_range = c.gap == 0.0;
    return c;
}

double tail_exponent(const spectral_field& F, double xi_lo, double xi_hi, int bins) {
    if (!(xi_lo > 0.0) || !(xi_hi > xi_lo)) throw invalid_argument("invalid fit band");
    if (bins < 3) throw invalid_argument("need at least three bins");
    std::vector<double> lx, ly;
    const double ratio = std::pow(xi_hi / xi_lo, 1.0 / bins);
    for (int b = 0; b < bins; ++b) {
        const double e0 = xi_lo * std::pow(ratio, b);
        const double e1 = e0 * ratio;
        double acc = 0.0;
        int cnt = 0;
        for (int q = 1; q <= F.g.n / 2; ++q) {
            const double xi = 2.0 * pi * q / F.g.L;
            if (xi >= e0 && (xi < e1 || (b == bins - 1 && xi <= e1))) {
                acc += std::norm(F.c[q]);
                ++cnt;
            }
        }
        if (cnt == 0 || acc == 0.0) continue;
        lx.push_back(std::log(std::sqrt(e0 * e1)));
        ly.push_back(0.5 * std::log(acc / cnt));
    }
    if (lx.size() < 3) throw invalid_argument("tail fit is ill-conditioned: too few populated bins");
    return -ls_slope(lx, ly);
}

double tail_exponent(const real_field& f) {
    const double top = f.g.xi_max();
    return tail_exponent(forward(f), top / 4.0, top);
}

double local_tail_exponent(const real_field& f, double center, double width, double xi_lo, double xi_hi) {
    real_field w = f;
    for (int m = 0; m < f.g.n; ++m) {
        const double y = (f.g.x(m) - center) / width;
        w.v[m] *= std::exp(-std::pow(y, 8));
    }
    return tail_exponent(forward(w), xi_lo, xi_hi);
}

indicator_result singularity_indicator(const real_field& f, int order, double x_star, const indicator_options& opt) {
    if (order < 0) throw invalid_argument("order must be nonnegative");
    auto gh = times(detail::r2c(f.v), detail::deriv_symbol(f.g, order));
    auto res = witness(f.g, gh, x_star, opt);
    res.tail_exponent = tail_exponent(f);
    return res;
}

indicator_result singularity_indicator_at(const spectral_field& F0, const dispersion_params& p, double t,
                                          double x_star, const indicator_options& opt) {
    validate(p);
    const real_field u0 = inverse(F0);
    auto uh = times(detail::r2c(u0.v), flow_symbol(u0.g, p.j, t));
    auto gh = times(uh, detail::deriv_symbol(u0.g, p.j));
    auto res = witness(u0.g, gh, x_star, opt);
    res.tail_exponent = tail_exponent(from_raw(u0.g, uh), u0.g.xi_max() / 4.0, u0.g.xi_max());
    return res;
}

contrast_entry blowup_contrast(const blowup_datum& datum, const dispersion_params& p, double t_rational,
                               double t_irrational, double x_star, const indicator_options& opt,
                               bool require_manifest) {
    if (require_manifest) {
        bool found = false;
        for (const auto& t : datum.terms) found = found || std::abs(t.singular_time - t_rational) < 1e-12;
        if (!found) throw invalid_argument("time is not a singular time of the manifest");
    }
    const spectral_field F = forward(datum.u0);
    contrast_entry e;
    e.t = t_rational;
    e.x_star = x_star;
    e.quotient = singularity_indicator_at(F, p, t_rational, x_star, opt).holder_quotient;
    e.reference = singularity_indicator_at(F, p, t_irrational, x_star, opt).holder_quotient;
    e.contrast = e.reference == 0.0 ? std::numeric_limits<double>::infinity() : e.quotient / e.reference;
    if (e.contrast >= 10.0)
        e.classification = "singular";
    else if (e.contrast >= 0.5 && e.contrast <= 2.0)
        e.classification = "smooth";
    else
        e.classification = "indeterminate";
    return e;
}

}  // namespace hkdv

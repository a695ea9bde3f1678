#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>
#include <hkdv/norms.hpp>
#include <hkdv/rng.hpp>

#include "fft.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cmath>

namespace hkdv {

namespace {

struct kind_name {
    probe_kind kind;
    const char* name;
};

constexpr kind_name kind_names[] = {
    {probe_kind::dispersive_decay, "dispersive_decay"},
    {probe_kind::strichartz, "strichartz"},
    {probe_kind::kato_smoothing, "kato_smoothing"},
    {probe_kind::maximal, "maximal"},
    {probe_kind::kato_ponce, "kato_ponce"},
    {probe_kind::frac_leibniz, "frac_leibniz"},
    {probe_kind::interpolation, "interpolation"},
    {probe_kind::weighted_decomposition, "weighted_decomposition"},
};

/// Evaluates value(nt) for nt = 32, 64, ... until the relative change drops below 0.5%.
template <class F>
double refine_in_time(F value) {
    double prev = value(32);
    for (int nt = 64; nt <= (1 << 14); nt *= 2) {
        const double cur = value(nt);
        if (std::abs(cur - prev) <= 0.005 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (pos - i) * (v[i + 1] - v[i]);
}

double japanese_weighted_l2(const real_field& f, double w) {
    double acc = 0.0;
    for (int m = 0; m < f.g.n; ++m) {
        const double x = f.g.x(m);
        acc += std::pow(1.0 + x * x, w) * f.v[m] * f.v[m];
    }
    return std::sqrt(acc * f.g.dx());
}

real_field japanese_weight(const real_field& f, double w) {
    real_field out = f;
    for (int m = 0; m < f.g.n; ++m) out.v[m] *= std::pow(1.0 + f.g.x(m) * f.g.x(m), 0.5 * w);
    return out;
}

double decay_ratio(const probe_spec& spec, int nodes) {
    const double beta = spec.param("beta", 0.0);
    const double t_max = spec.param("t_max", 64.0);
    const double xi = spec.param("xi_env", 16.0);
    const double x_max = spec.param("x_max", 40.0);
    const int n_x = static_cast<int>(spec.param("n_x", 161));
    double best = 0.0;
    for (double t = 1.0; t <= t_max; t *= 2.0) {
        double sup = 0.0;
        for (int i = 0; i < n_x; ++i) {
            const double x = -x_max + 2.0 * x_max * i / (n_x - 1);
            sup = std::max(sup, std::abs(oscillatory_integral(spec.j, t, x, xi, beta, nodes)));
        }
        best = std::max(best, sup * std::sqrt(t) / (1.0 + std::abs(beta)));
    }
    return best;
}

}  // namespace

std::string to_string(probe_kind k) {
    for (const auto& kn : kind_names)
        if (kn.kind == k) return kn.name;
    return "unknown";
}

probe_kind probe_kind_from_string(const std::string& s) {
    for (const auto& kn : kind_names)
        if (s == kn.name) return kn.kind;
    throw invalid_argument("unknown probe kind: " + s);
}

double probe_spec::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void validate(const probe_spec& spec) {
    if (spec.j < 1) throw invalid_argument("j must be at least 1");
    if (spec.ensemble_size < 1) throw invalid_argument("ensemble size must be positive");
    make_grid(spec.n, spec.L);
    const double T = spec.param("T", 0.25);
    switch (spec.kind) {
        case probe_kind::strichartz: {
            const double th = spec.param("theta", 0.5);
            if (!(th >= 0.0 && th <= 1.0)) throw invalid_argument("theta must lie in [0,1]");
            if (!(T > 0.0)) throw invalid_argument("T must be positive");
            break;
        }
        case probe_kind::maximal:
            if (!(spec.param("s", (2.0 * spec.j + 1.0) / 4.0 + 0.05) > (2.0 * spec.j + 1.0) / 4.0))
                throw invalid_argument("maximal estimate needs s > (2j+1)/4");
            if (!(T > 0.0)) throw invalid_argument("T must be positive");
            break;
        case probe_kind::kato_smoothing:
            if (!(spec.param("T", 20.0) > 0.0) || !(spec.param("dt", 0.01) > 0.0))
                throw invalid_argument("T and dt must be positive");
            break;
        case probe_kind::kato_ponce:
            if (!(spec.param("s", 1.5) > 0.0)) throw invalid_argument("Kato-Ponce needs s > 0");
            break;
        case probe_kind::frac_leibniz: {
            const double s = spec.param("s", 0.5);
            if (!(s > 0.0 && s < 1.0)) throw invalid_argument("fractional Leibniz needs s in (0,1)");
            break;
        }
        case probe_kind::interpolation: {
            const double th = spec.param("theta", 0.5);
            if (!(th > 0.0 && th < 1.0)) throw invalid_argument("theta must lie in (0,1)");
            if (!(spec.param("a", 1.0) > 0.0) || !(spec.param("b", 1.0) > 0.0))
                throw invalid_argument("interpolation needs a, b > 0");
            break;
        }
        case probe_kind::weighted_decomposition: {
            const double r = spec.param("r", 0.4);
            if (!(r > 0.0 && r < 1.0)) throw invalid_argument("r must lie in (0,1)");
            if (spec.param("s", 2.0) < 2.0 * spec.j * r) throw invalid_argument("needs s >= 2 j r");
            break;
        }
        case probe_kind::dispersive_decay:
            if (!(spec.param("t_max", 64.0) >= 2.0)) throw invalid_argument("t_max must be at least 2");
            break;
    }
}

real_field random_packet(const grid& g, std::uint64_t seed, int member) {
    rng gen(seed, static_cast<std::uint64_t>(member));
    struct packet {
        double a, c, w, k, ph;
    };
    std::vector<packet> ps;
    for (int i = 0; i < 3; ++i) {
        packet p;
        p.a = gen.uniform(0.5, 1.5);
        p.c = gen.uniform(-4.0, 4.0);
        p.w = gen.uniform(0.7, 2.0);
        p.k = gen.uniform(0.0, 2.0);
        p.ph = gen.uniform(0.0, 2.0 * std::numbers::pi);
        ps.push_back(p);
    }
    return sample(g, [&](double x) {
        double s = 0.0;
        for (const auto& p : ps) {
            const double y = (x - p.c) / p.w;
            s += p.a * std::exp(-y * y) * std::cos(p.k * x + p.ph);
        }
        return s;
    });
}

double probe_ratio(const probe_spec& spec, const grid& g, const real_field& f, const real_field& h) {
    const int j = spec.j;
    const dispersion_params dp{j, 1};
    switch (spec.kind) {
        case probe_kind::dispersive_decay: return decay_ratio(spec, 6000);
        case probe_kind::strichartz: {
            const double th = spec.param("theta", 0.5);
            const double T = spec.param("T", 0.25);
            const double q = th == 0.0 ? inf : 4.0 / th;
            const double p = th == 1.0 ? inf : 2.0 / (1.0 - th);
            const real_field df = frac_deriv(f, th * (2.0 * j - 1.0) / 4.0, deriv_kind::homogeneous);
            const double lhs = refine_in_time([&](int nt) {
                std::vector<double> ts, ys;
                for (int i = 0; i <= nt; ++i) {
                    const double t = T * i / nt;
                    ts.push_back(t);
                    ys.push_back(lp_norm(linear_flow(dp, t, df), p));
                }
                if (std::isinf(q)) return *std::max_element(ys.begin(), ys.end());
                for (double& y : ys) y = std::pow(y, q);
                return std::pow(trapezoid(ts, ys), 1.0 / q);
            });
            return lhs / l2_norm(f);
        }
        case probe_kind::kato_smoothing: {
            const auto r = kato_smoothing_integrals(j, f, {0.0}, spec.param("T", 20.0), spec.param("dt", 0.01));
            const double n2 = l2_norm(f) * l2_norm(f);
            return r.integrals[0] / n2;
        }
        case probe_kind::maximal: {
            const double s = spec.param("s", (2.0 * j + 1.0) / 4.0 + 0.05);
            const double T = spec.param("T", 0.25);
            const double lhs = refine_in_time([&](int nt) {
                std::vector<double> sup(g.n, 0.0);
                for (int i = 0; i <= nt; ++i) {
                    const auto w = linear_flow(dp, T * i / nt, f);
                    for (int m = 0; m < g.n; ++m) sup[m] = std::max(sup[m], std::abs(w.v[m]));
                }
                return l2_norm(real_field{g, sup});
            });
            return lhs / (std::pow(1.0 + T, 0.75) * sobolev_norm(f, s));
        }
        case probe_kind::kato_ponce: {
            const double s = spec.param("s", 1.5);
            const real_field comm = add(frac_deriv(multiply(f, h), s, deriv_kind::inhomogeneous),
                                        multiply(f, frac_deriv(h, s, deriv_kind::inhomogeneous)), -1.0);
            const double rhs = sobolev_norm(f, s) * max_abs(h) +
                               max_abs(deriv(f, 1)) * sobolev_norm(h, s - 1.0 >= 0.0 ? s - 1.0 : 0.0);
            return rhs == 0.0 ? 0.0 : l2_norm(comm) / rhs;
        }
        case probe_kind::frac_leibniz: {
            const double s = spec.param("s", 0.5);
            const auto D = [s](const real_field& u) { return frac_deriv(u, s, deriv_kind::homogeneous); };
            real_field lhs = add(D(multiply(f, h)), multiply(f, D(h)), -1.0);
            lhs = add(lhs, multiply(h, D(f)), -1.0);
            const double rhs = max_abs(h) * l2_norm(D(f));
            return rhs == 0.0 ? 0.0 : l2_norm(lhs) / rhs;
        }
        case probe_kind::interpolation: {
            const double th = spec.param("theta", 0.5);
            const double a = spec.param("a", 1.0);
            const double b = spec.param("b", 1.0);
            const double lhs =
                l2_norm(japanese_weight(frac_deriv(f, th * a, deriv_kind::inhomogeneous), (1.0 - th) * b));
            const double rhs =
                std::pow(japanese_weighted_l2(f, b), 1.0 - th) * std::pow(sobolev_norm(f, a), th);
            return lhs / rhs;
        }
        case probe_kind::weighted_decomposition:
            return frac_weight_decomposition(dp, spec.param("t", 0.5), spec.param("r", 0.4), spec.param("s", 2.0), f)
                .ratio;
    }
    return 0.0;
}

probe_report inequality_ratio_probe(const probe_spec& spec) {
    validate(spec);
    probe_report rep;
    rep.spec = spec;
    double refined_max = 0.0;
    if (spec.kind == probe_kind::dispersive_decay) {
        rep.ratios.push_back(decay_ratio(spec, 6000));
        refined_max = decay_ratio(spec, 12000);
    } else {
        const grid g = make_grid(spec.n, spec.L);
        const grid g2 = make_grid(2 * spec.n, spec.L);
        const int members = spec.ensemble_size;
        for (int i = 0; i < members; ++i) {
            const auto f = random_packet(g, spec.seed, 2 * i);
            const auto h = random_packet(g, spec.seed, 2 * i + 1);
            rep.ratios.push_back(probe_ratio(spec, g, f, h));
            const auto f2 = random_packet(g2, spec.seed, 2 * i);
            const auto h2 = random_packet(g2, spec.seed, 2 * i + 1);
            refined_max = std::max(refined_max, probe_ratio(spec, g2, f2, h2));
        }
    }
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.quantiles = {quantile(rep.ratios, 0.1), quantile(rep.ratios, 0.5), quantile(rep.ratios, 0.9)};
    rep.refinement_trend = rep.max_ratio == 0.0 ? 1.0 : refined_max / rep.max_ratio;
    bool finite = true;
    for (double r : rep.ratios) finite = finite && std::isfinite(r);
    rep.pass = finite && std::isfinite(rep.refinement_trend) && rep.refinement_trend >= 0.9 &&
               rep.refinement_trend <= 1.1;
    return rep;
}

kato_result kato_smoothing_integrals(int j, const real_field& u0, const std::vector<double>& xs, double T, double dt) {
    if (j < 1) throw invalid_argument("j must be at least 1");
    if (!(T > 0.0) || !(dt > 0.0)) throw invalid_argument("T and dt must be positive");
    const grid& g = u0.g;
    const spectral_field F = forward(u0);
    double peak = 0.0;
    for (int q = 1; q < g.n / 2; ++q) peak = std::max(peak, std::abs(F.c[q]));
    struct mode {
        double xi;
        cplx amp;
        cplx rot;
    };
    std::vector<mode> modes;
    const int nt = static_cast<int>(std::ceil(T / dt));
    const double h = T / nt;
    for (int q = 1; q < g.n / 2; ++q) {
        if (std::abs(F.c[q]) <= 1e-15 * peak) continue;
        const double xi = g.xi(q);
        const double ph = dispersion_phase(j, xi);
        modes.push_back({xi, F.c[q] * std::pow(xi, j), std::polar(1.0, h * ph)});
    }
    const cplx ij = detail::i_pow(j);
    kato_result res;
    res.xs = xs;
    res.exact = l2_norm(u0) * l2_norm(u0) / (2.0 * j + 1.0);
    for (double x : xs) {
        // Value at time t: (2/L) Re sum_q (i xi)^j exp(i t phase) exp(i xi x) F_q.
        std::vector<cplx> fwd(modes.size()), bwd(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) {
            fwd[i] = ij * modes[i].amp * std::polar(1.0, modes[i].xi * x);
            bwd[i] = fwd[i];
        }
        auto value = [&](const std::vector<cplx>& s) {
            cplx acc = 0.0;
            for (const auto& c : s) acc += c;
            return 2.0 * acc.real() / g.L;
        };
        double acc = 0.0;
        const double v0 = value(fwd);
        acc += 0.5 * h * v0 * v0 * 2.0;
        for (int k = 1; k <= nt; ++k) {
            for (std::size_t i = 0; i < modes.size(); ++i) {
                fwd[i] *= modes[i].rot;
                bwd[i] *= std::conj(modes[i].rot);
            }
            const double vf = value(fwd), vb = value(bwd);
            const double w = (k == nt) ? 0.5 * h : h;
            acc += w * (vf * vf + vb * vb);
        }
        res.integrals.push_back(acc);
    }
    const auto [lo, hi] = std::minmax_element(res.integrals.begin(), res.integrals.end());
    res.spread = (*hi - *lo) / (0.5 * (*hi + *lo));
    return res;
}

}  // namespace hkdv

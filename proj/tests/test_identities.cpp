#include <doctest.h>

#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>
#include <hkdv/norms.hpp>
#include <hkdv/rng.hpp>

#include "generators.hpp"

#include <cmath>
#include <numbers>

using namespace hkdv;
using hkdv::testing::band_limited;
constexpr double pi = std::numbers::pi;

namespace {

using poly = std::vector<rational>;

poly pderiv(const poly& p, int k = 1) {
    poly out = p;
    for (int step = 0; step < k; ++step) {
        if (out.size() <= 1) return {rational(0)};
        poly d(out.size() - 1);
        for (std::size_t i = 1; i < out.size(); ++i) d[i - 1] = out[i] * static_cast<int>(i);
        out = d;
    }
    return out;
}

poly pmul(const poly& a, const poly& b) {
    poly out(a.size() + b.size() - 1, rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
    return out;
}

poly padd(poly a, const poly& b, const rational& s) {
    if (a.size() < b.size()) a.resize(b.size(), rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
    return a;
}

bool is_zero(const poly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

/// Exact check of f^(2j+1) f = sum_l (c_l / 2) d^(2l+1) (f^(j-l))^2 on a polynomial.
bool identity_holds(const coefficient_vector& cv, const poly& f) {
    const int j = cv.j;
    poly diff = pmul(pderiv(f, 2 * j + 1), f);
    for (int l = 0; l <= j; ++l) {
        const poly d = pderiv(f, j - l);
        diff = padd(diff, pderiv(pmul(d, d), 2 * l + 1), -cv.c[l] / 2);
    }
    return is_zero(diff);
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("coefficient system in exact arithmetic") {
    CHECK(solve_coefficients(1).c == std::vector<rational>{-3, 1});
    CHECK(solve_coefficients(2).c == std::vector<rational>{5, -5, 1});
    for (int j = 1; j <= 32; ++j) {
        const auto cv = solve_coefficients(j);
        CHECK(cv.c.back() == 1);
        for (int m = 0; m < j; ++m) CHECK(system_row(cv, m) == 0);
    }
    CHECK_THROWS_AS(solve_coefficients(0), invalid_argument);
    CHECK_THROWS_AS(solve_coefficients(33), invalid_argument);
}

TEST_CASE("property: coefficients satisfy the identity on random integer polynomials") {
    rng gen(31);
    for (int j = 1; j <= 6; ++j) {
        const auto cv = solve_coefficients(j);
        for (int trial = 0; trial < 5; ++trial) {
            poly f(2 * j + 4 + trial);
            for (auto& c : f) c = static_cast<int>(gen.next() % 19) - 9;
            CHECK(identity_holds(cv, f));
        }
        // A perturbed coefficient must break it.
        auto bad = cv;
        bad.c[0] += 1;
        poly f(2 * j + 6);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<int>(i) + 1;
        CHECK_FALSE(identity_holds(bad, f));
    }
}

TEST_CASE("reduction identity on grids") {
    const grid g = make_grid(64, 2 * pi);
    CHECK(verify_reduction_identity(1, sample(g, [](double x) { return std::sin(x); })) < 1e-12);
    CHECK(verify_reduction_identity(3, sample(g, [](double) { return 2.5; })) == 0.0);
    rng gen(32);
    const grid h = make_grid(256, 30.0);
    for (int j = 1; j <= 5; ++j)
        for (int trial = 0; trial < 20; ++trial) CHECK(verify_reduction_identity(j, band_limited(h, gen, 32)) < 1e-8);
    CHECK_THROWS_AS(verify_reduction_identity(1, band_limited(h, gen, 100)), invalid_argument);
}

TEST_CASE("x-commutator") {
    const auto gauss = [](const grid& g) { return sample(g, [](double x) { return std::exp(-x * x / 8.0); }); };
    const grid g = make_grid(512, 64.0);
    CHECK(x_weight_commutator({1, 1}, 0.0, gauss(g)).rel_error < 1e-14);
    const auto r1 = x_weight_commutator({1, 1}, 0.1, gauss(g), 1e-10);
    CHECK(r1.boundary < 1e-10);
    CHECK(r1.rel_error < 1e-6);
    CHECK(x_weight_commutator({2, 1}, 0.05, gauss(make_grid(1024, 128.0))).rel_error < 1e-6);
    CHECK_THROWS_AS(x_weight_commutator({2, 1}, 0.5, gauss(make_grid(256, 32.0))), decay_violation);
}

TEST_CASE("weighted decomposition") {
    const auto gauss = [](const grid& g) { return sample(g, [](double x) { return std::exp(-x * x / 4.0); }); };
    const grid g = make_grid(2048, 128.0);
    const auto zero = frac_weight_decomposition({1, 1}, 0.0, 0.4, 2.0, gauss(g));
    CHECK(max_abs(zero.remainder) < 1e-14);
    std::vector<double> ratios;
    for (double t : {0.1, 0.5, 1.0}) {
        const double r = frac_weight_decomposition({1, 1}, t, 0.4, 2.0, gauss(g)).ratio;
        const double r2 = frac_weight_decomposition({1, 1}, t, 0.4, 2.0, gauss(make_grid(4096, 128.0))).ratio;
        CHECK(std::isfinite(r));
        CHECK(r2 == doctest::Approx(r).epsilon(0.1));
        ratios.push_back(r);
    }
    CHECK(*std::max_element(ratios.begin(), ratios.end()) < 1.0);
    CHECK_THROWS_AS(frac_weight_decomposition({1, 1}, 0.5, 0.4, 0.5, gauss(g)), invalid_argument);
}

TEST_CASE("probe kinds and specs") {
    for (auto k : {probe_kind::dispersive_decay, probe_kind::strichartz, probe_kind::kato_smoothing, probe_kind::maximal,
                   probe_kind::kato_ponce, probe_kind::frac_leibniz, probe_kind::interpolation,
                   probe_kind::weighted_decomposition})
        CHECK(probe_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(probe_kind_from_string("nope"), invalid_argument);
    probe_spec bad;
    bad.n = 15;
    CHECK_THROWS_AS(validate(bad), invalid_argument);
    probe_spec ens;
    ens.ensemble_size = 0;
    CHECK_THROWS_AS(validate(ens), invalid_argument);
}

TEST_CASE("Kato-Ponce commutator vanishes against a constant factor") {
    probe_spec spec;
    spec.kind = probe_kind::kato_ponce;
    const grid g = make_grid(512, 40.0);
    const auto ones = sample(g, [](double) { return 1.0; });
    const auto h = random_packet(g, 4, 0);
    CHECK(probe_ratio(spec, g, ones, h) < 1e-13);
}

TEST_CASE("interpolation probe ratio bounded and refinement stable") {
    probe_spec spec;
    spec.kind = probe_kind::interpolation;
    spec.n = 1024;
    spec.L = 64;
    spec.ensemble_size = 4;
    const auto rep = inequality_ratio_probe(spec);
    CHECK(rep.pass);
    CHECK(rep.max_ratio < 10.0);
    CHECK(rep.refinement_trend == doctest::Approx(1.0).epsilon(0.1));
    CHECK(rep.quantiles.size() == 3);
}

TEST_CASE("Kato smoothing integral is independent of x") {
    // Datum whose transform vanishes to fourth order at xi = 0, so slow modes carry no weight; T lets the
    // slow modes pass every x while the fast ones have not yet wrapped around the box.
    const grid g = make_grid(4096, 2048.0);
    const double w = 1.0;
    const auto u0 = sample(g, [&](double x) {
        const double y = x / w;
        return (y * y * y * y - 6 * y * y + 3) * std::exp(-y * y / 2);
    });
    std::vector<double> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(-3.5 + i);
    const auto res = kato_smoothing_integrals(1, u0, xs, 20.0, 0.01);
    CHECK(res.exact == doctest::Approx(l2_norm(u0) * l2_norm(u0) / 3));
    CHECK(res.spread < 0.02);
    for (double v : res.integrals) CHECK(v == doctest::Approx(res.exact).epsilon(0.05));
}

TEST_CASE("oscillatory integral against brute-force quadrature") {
    // Direct trapezoid on the real line; the envelope makes the integrand negligible beyond |eta| = 6 Xi.
    for (int j : {1, 2}) {
        for (double x : {-3.0, 0.0, 2.0}) {
            const double t = 1.0, xi = j == 1 ? 4.0 : 2.0;
            const int p = 2 * j + 1;
            const double sigma = j % 2 == 1 ? 1.0 : -1.0;
            const double a = (2.0 * j - 1.0) / 2.0;
            const double lim = 6 * xi;
            const int n = 6000000;
            const double h = 2 * lim / n;
            cplx acc = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double eta = -lim + i * h;
                const double w = (i == 0 || i == n) ? 0.5 : 1.0;
                const double ph = sigma * t * std::pow(eta, p) + x * eta;
                acc += w * std::pow(std::abs(eta), a) * std::exp(-(eta / xi) * (eta / xi)) * std::polar(1.0, ph);
            }
            acc *= h;
            const cplx v = oscillatory_integral(j, t, x, xi);
            CHECK(std::abs(v - acc) < 1e-6 * std::max(1.0, std::abs(acc)));
        }
    }
}

TEST_CASE("least-squares slope") {
    CHECK(ls_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ls_slope({1.0}, {2.0}), invalid_argument);
}

}

#include <doctest.h>

#include <hkdv/errors.hpp>
#include <hkdv/propagators.hpp>
#include <hkdv/rng.hpp>

#include "generators.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace hkdv;
using hkdv::testing::band_limited;
using hkdv::testing::random_gaussian;
constexpr double pi = std::numbers::pi;

namespace {

double soliton(double c, double x, double t) {
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(c) * (x - c * t));
    return 3.0 * c * s * s;
}

}  // namespace

TEST_SUITE("propagators") {

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(dispersion_params{0, 1}), invalid_argument);
    CHECK_THROWS_AS(validate(dispersion_params{1, 0}), invalid_argument);
    CHECK_NOTHROW(validate(dispersion_params{3, 2}));
    CHECK(dispersion_phase(1, 2.0) == 8.0);
    CHECK(dispersion_phase(2, 2.0) == -32.0);
}

TEST_CASE("linear flow: identity, single mode and unitarity") {
    const grid g = make_grid(128, 2 * pi);
    rng gen(21);
    const auto f = band_limited(g, gen, 50);
    CHECK(rel_l2(linear_flow({1, 1}, 0.0, f), f) < 1e-15);
    const double k = 3.0, t = 0.1;
    const auto c = sample(g, [&](double x) { return std::cos(k * x); });
    CHECK(rel_l2(linear_flow({1, 1}, t, c), sample(g, [&](double x) { return std::cos(k * x + k * k * k * t); })) <
          1e-13);
    for (int j : {1, 2, 3})
        for (double tt : {0.1, 1.0, 10.0})
            CHECK(l2_norm(linear_flow({j, 1}, tt, f)) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("property: group law W(t)W(s) = W(t+s)") {
    rng gen(22);
    const grid g = make_grid(1024, 50.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int j = 1 + trial % 3;
        const double t = gen.uniform(-1, 1), s = gen.uniform(-1, 1);
        const auto f = random_gaussian(g, gen);
        CHECK(rel_l2(linear_flow({j, 1}, t, linear_flow({j, 1}, s, f)), linear_flow({j, 1}, t + s, f)) < 1e-12);
    }
}

TEST_CASE("conjugated flow intertwines with the exponential weight") {
    // The wrapped left tail of W(t) f must stay far below exp(-L/2), so the spectrum is kept narrow and t short.
    const grid g = make_grid(512, 30.0);
    const dispersion_params p{1, 1};
    const conjugation_spec spec{1, 1};
    CHECK(conjugation_weight(p, spec) == 1);
    const auto f = sample(g, [](double x) { return std::exp(-x * x / 4); });
    const auto ex = sample(g, [](double x) { return std::exp(x); });
    const auto w0 = multiply(ex, f);
    CHECK(rel_l2(conjugated_flow(p, spec, 0.0, w0), w0) < 1e-15);
    for (double t : {0.02, 0.05, 0.1}) {
        const auto lhs = multiply(ex, linear_flow(p, t, f));
        CHECK(rel_l2(conjugated_flow(p, spec, t, w0), lhs) < 1e-8);
    }
    CHECK(conjugation_top_log_gain(p, spec, 0.1, g) < 0.0);
    CHECK(conjugation_top_log_gain(p, {1, -1}, -0.1, g) > 0.0);
    CHECK_THROWS_AS(conjugated_flow(p, {1, -1}, -0.1, w0), unstable_conjugation);
    CHECK_THROWS_AS(conjugated_flow(p, spec, -0.1, w0), invalid_argument);
}

TEST_CASE("solver: zero datum and linear limit") {
    const grid g = make_grid(256, 50.0);
    const auto z = evolve({1, 1}, zeros(g), 0.5, 0.01);
    for (const auto& s : z.slices) CHECK(max_abs(s) == 0.0);
    const auto u0 = sample(g, [](double x) { return 1e-8 * std::exp(-x * x / 4); });
    const auto tr = evolve({1, 1}, u0, 1.0, 0.01, 10);
    CHECK(rel_l2(tr.slices.back(), linear_flow({1, 1}, 1.0, u0)) < 1e-8);
    CHECK(tr.times.back() == doctest::Approx(1.0));
    CHECK(tr.times.size() == 11);
}

TEST_CASE("solver reproduces the KdV soliton") {
    const grid g = make_grid(256, 50.0);
    const double c = 1.0;
    const auto u0 = sample(g, [&](double x) { return soliton(c, x, 0.0); });
    const auto tr = evolve({1, 1}, u0, 2.0, 0.005, 100);
    const auto exact = sample(g, [&](double x) { return soliton(c, x, 2.0); });
    CHECK(rel_l2(tr.slices.back(), exact) < 1e-6);
}

TEST_CASE("property: mass and L2 norm conserved for gKdV") {
    rng gen(23);
    for (int trial = 0; trial < 6; ++trial) {
        const grid g = make_grid(256, 60.0);
        const int k = 1 + trial % 2;
        const auto u0 = random_gaussian(g, gen);
        const auto tr = evolve({1, k}, u0, 0.5, 0.002, 250);
        double m0 = 0, m1 = 0;
        for (int i = 0; i < g.n; ++i) {
            m0 += tr.slices.front().v[i];
            m1 += tr.slices.back().v[i];
        }
        CHECK(std::abs(m1 - m0) * g.dx() < 1e-10);
        CHECK(l2_norm(tr.slices.back()) == doctest::Approx(l2_norm(tr.slices.front())).epsilon(1e-6));
    }
}

TEST_CASE("solver reports divergence with the partial trajectory") {
    const grid g = make_grid(256, 20.0);
    const auto u0 = sample(g, [](double x) { return 50.0 * std::exp(-x * x); });
    bool caught = false;
    try {
        evolve({1, 2}, u0, 50.0, 0.5);
    } catch (const diverged& d) {
        caught = true;
        CHECK(!d.partial.slices.empty());
        CHECK(d.t_fail > 0.0);
        for (const auto& s : d.partial.slices)
            for (double v : s.v) CHECK(std::isfinite(v));
    }
    CHECK(caught);
    CHECK_THROWS_AS(evolve({1, 1}, u0, -1.0, 0.1), invalid_argument);
    CHECK_THROWS_AS(evolve({1, 1}, u0, 1.0, 0.0), invalid_argument);
}

TEST_CASE("Duhamel term: split and quadrature agree") {
    const grid g = make_grid(256, 50.0);
    const auto u0 = sample(g, [](double x) { return soliton(1.0, x, 0.0); });
    const dispersion_params p{1, 1};
    const auto tr = evolve(p, u0, 0.5, 0.0025);
    const auto z = duhamel_split(tr, u0, p);
    CHECK(max_abs(z.slices.front()) < 1e-14);
    const auto chk = duhamel_crosscheck(tr, u0, p);
    CHECK(chk.rel_diff < 1e-5);

    const auto tiny = scale(u0, 1e-8);
    const auto trl = evolve(p, tiny, 0.5, 0.0025, 50);
    CHECK(max_abs(duhamel_split(trl, tiny, p).slices.back()) < 1e-14);
    CHECK_THROWS_AS(duhamel_split(trl, u0, p), invalid_argument);
}

TEST_CASE("trajectory serialization round trips") {
    const grid g = make_grid(64, 20.0);
    const auto u0 = sample(g, [](double x) { return std::exp(-x * x); });
    const auto tr = evolve({2, 1}, u0, 0.1, 0.01, 5);
    const auto dir = (std::filesystem::temp_directory_path() / "hkdv_traj_test").string();
    std::filesystem::remove_all(dir);
    save_trajectory(dir, tr);
    const auto back = load_trajectory(dir);
    CHECK(back.g == tr.g);
    CHECK(back.times == tr.times);
    CHECK(back.params.j == 2);
    CHECK(back.stride == 5);
    for (std::size_t i = 0; i < tr.slices.size(); ++i) CHECK(back.slices[i].v == tr.slices[i].v);
    CHECK_THROWS_AS(load_trajectory(dir + "_missing"), io_error);
}

}

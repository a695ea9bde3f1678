#include <doctest.h>

#include <hkdv/errors.hpp>
#include <hkdv/grid.hpp>
#include <hkdv/rng.hpp>

#include "generators.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

using namespace hkdv;
using hkdv::testing::band_limited;
constexpr double pi = std::numbers::pi;

TEST_SUITE("grid_spectral") {

TEST_CASE("grid construction") {
    const grid g = make_grid(64, 2 * pi);
    CHECK(g.dx() == doctest::Approx(2 * pi / 64));
    CHECK(g.xi(1) == doctest::Approx(1.0));
    CHECK(g.xi(31) == doctest::Approx(31.0));
    CHECK(g.xi(32) == doctest::Approx(-32.0));
    CHECK(g.xi(0) == 0.0);
    CHECK(make_grid(256, 100).xi(1) == doctest::Approx(2 * pi / 100));
    CHECK_THROWS_AS(make_grid(15, 10), invalid_argument);
    CHECK_THROWS_AS(make_grid(64, -1), invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 1), invalid_argument);
}

TEST_CASE("field construction rejects bad input") {
    const grid g = make_grid(16, 1);
    CHECK_THROWS_AS(make_field(g, std::vector<double>(15, 0.0)), grid_mismatch);
    std::vector<double> v(16, 0.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(make_field(g, v), invalid_argument);
}

TEST_CASE("single cosine has two coefficients") {
    const grid g = make_grid(64, 10);
    const auto F = forward(sample(g, [&](double x) { return std::cos(2 * pi * x / g.L); }));
    for (int i = 0; i < g.n; ++i) {
        const int q = g.q(i);
        if (q == 1 || q == -1)
            CHECK(std::abs(F.c[i]) == doctest::Approx(g.L / 2));
        else
            CHECK(std::abs(F.c[i]) < 1e-12);
    }
    const auto Z = forward(zeros(g));
    for (const auto& c : Z.c) CHECK(c == cplx{0.0, 0.0});
}

TEST_CASE("property: round trip, Hermitian symmetry and Plancherel") {
    rng gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 16 << (trial % 6);
        const grid g = make_grid(n, gen.uniform(1.0, 100.0));
        const auto f = band_limited(g, gen, n / 2 - 1);
        const auto F = forward(f);
        CHECK(rel_l2(inverse(F), f) < 1e-13);
        CHECK(std::abs(F.c[0].imag()) < 1e-12 * g.L);
        CHECK(std::abs(F.c[n / 2].imag()) < 1e-12 * g.L);
        for (int q = 1; q < n / 2; ++q) CHECK(std::abs(F.at_q(-q) - std::conj(F.at_q(q))) < 1e-10 * g.L);
        double s = 0.0;
        for (const auto& c : F.c) s += std::norm(c);
        CHECK(std::sqrt(s / g.L) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
    }
}

TEST_CASE("multipliers") {
    const grid g = make_grid(128, 2 * pi);
    const auto s3 = sample(g, [](double x) { return std::sin(3 * x); });
    const auto id = apply_multiplier({[](double) { return cplx{1.0, 0.0}; }, "one"}, s3);
    CHECK(rel_l2(id, s3) < 1e-15);
    const auto d = apply_multiplier({[](double xi) { return cplx{0.0, xi}; }, "ik"}, s3);
    CHECK(rel_l2(d, sample(g, [](double x) { return 3 * std::cos(3 * x); })) < 1e-13);
    CHECK(rel_l2(deriv(s3, 1), d) < 1e-13);
    CHECK_THROWS_AS(apply_multiplier({[](double xi) { return cplx{xi, 0.0}; }, "odd real"}, s3), invalid_argument);

    rng gen(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = band_limited(g, gen, 40);
        const multiplier_spec a{[](double xi) { return cplx{1.0 / (1.0 + xi * xi), 0.0}; }, "a"};
        const multiplier_spec b{[](double xi) { return std::polar(1.0, xi * xi * xi); }, "b"};
        const multiplier_spec ab{[](double xi) { return std::polar(1.0, xi * xi * xi) / (1.0 + xi * xi); }, "ab"};
        CHECK(rel_l2(apply_multiplier(a, apply_multiplier(b, f)), apply_multiplier(ab, f)) < 1e-13);
    }
}

TEST_CASE("fractional derivatives") {
    const grid g = make_grid(256, 2 * pi);
    const auto s5 = sample(g, [](double x) { return std::sin(5 * x); });
    CHECK(rel_l2(frac_deriv(s5, 0.7, deriv_kind::homogeneous), scale(s5, std::pow(5.0, 0.7))) < 1e-13);
    rng gen(9);
    const auto f = band_limited(g, gen, 60);
    CHECK(rel_l2(frac_deriv(f, 0.0, deriv_kind::inhomogeneous), f) < 1e-15);
    const auto half = frac_deriv(frac_deriv(f, 0.5, deriv_kind::homogeneous), 0.5, deriv_kind::homogeneous);
    const auto hilbert_abs = apply_multiplier({[](double xi) { return cplx{std::abs(xi), 0.0}; }, "|xi|"}, f);
    CHECK(rel_l2(half, hilbert_abs) < 1e-12);
}

TEST_CASE("odd derivative drops the Nyquist mode") {
    const grid g = make_grid(32, 2 * pi);
    const auto nyq = sample(g, [](double x) { return std::cos(16 * x); });
    CHECK(max_abs(deriv(nyq, 1)) < 1e-12);
    CHECK(rel_l2(deriv(nyq, 2), scale(nyq, -256.0)) < 1e-12);
}

TEST_CASE("Stein form matches the Fourier multiplier on a Gaussian") {
    const grid g = make_grid(16384, 16.0);
    const auto f = sample(g, [](double x) { return std::exp(-x * x); });
    for (double alpha : {0.3, 0.5, 1.5}) {
        const auto res = stein_deriv(f, alpha, {0.25, 0.125, 0.0625, 0.03125});
        const auto ref = frac_deriv(f, alpha, deriv_kind::homogeneous);
        CHECK(rel_l2(res.value, ref) < 1e-3);
        double prev = 1e300;
        for (const auto& t : res.truncated) {
            const double e = rel_l2(t, ref);
            CHECK(e < prev);
            prev = e;
        }
    }
    const auto z = stein_deriv(zeros(g), 0.5, {0.25, 0.125});
    CHECK(max_abs(z.value) == 0.0);
}

TEST_CASE("Stein form at alpha = 1 on a windowed sine") {
    const grid g = make_grid(65536, 64.0);
    const auto f = sample(g, [](double x) { return std::sin(3 * x) * std::exp(-x * x / 50); });
    const auto res = stein_deriv(f, 1.0, {0.25, 0.125, 0.0625, 0.03125}, 1e-6);
    CHECK(rel_l2(res.value, frac_deriv(f, 1.0, deriv_kind::homogeneous)) < 1e-2);
}

namespace {

double cos_kernel(double y, void* p) {
    const double a = *static_cast<double*>(p);
    return (std::cos(y) - 1.0) * std::pow(y, -1.0 - a);
}

double tail_kernel(double y, void* p) {
    const double a = *static_cast<double*>(p);
    return std::pow(y, -1.0 - a);
}

/// 2 int_0^inf (cos y - 1) y^(-1-a) dy by adaptive quadrature (oscillatory tail by QAWF).
double stein_constant_oracle(double a) {
    gsl_set_error_handler_off();
    gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
    gsl_integration_workspace* cw = gsl_integration_workspace_alloc(2000);
    gsl_integration_qawo_table* tab = gsl_integration_qawo_table_alloc(1.0, 1.0, GSL_INTEG_COSINE, 100);
    double head, tail_cos, err;
    gsl_function f{&cos_kernel, &a};
    gsl_integration_qags(&f, 0.0, 1.0, 0.0, 1e-13, 2000, w, &head, &err);
    gsl_function t{&tail_kernel, &a};
    gsl_integration_qawf(&t, 1.0, 1e-11, 2000, w, cw, tab, &tail_cos, &err);
    gsl_integration_qawo_table_free(tab);
    gsl_integration_workspace_free(cw);
    gsl_integration_workspace_free(w);
    // int_1^inf y^(-1-a) dy = 1/a.
    return 2.0 * (head + tail_cos - 1.0 / a);
}

}  // namespace

TEST_CASE("Stein constant against a quadrature oracle") {
    CHECK(stein_constant(1.0) == doctest::Approx(-pi).epsilon(1e-12));
    for (double a : {0.3, 0.5, 1.0, 1.5})
        CHECK(stein_constant(a) == doctest::Approx(stein_constant_oracle(a)).epsilon(1e-8));
    CHECK_THROWS_AS(stein_constant(2.0), invalid_argument);
}

TEST_CASE("dealiasing") {
    const grid g = make_grid(96, 2 * pi);
    CHECK(dealias_cutoff(96, 1) == 31);
    CHECK(dealias_cutoff(1024, 2) == 255);
    const auto top = sample(g, [](double x) { return std::cos(47 * x); });
    CHECK(max_abs(inverse(dealias(forward(top), 1))) < 1e-12);
    rng gen(2);
    const auto a = band_limited(g, gen, 31);
    CHECK(rel_l2(inverse(dealias(forward(a), 1)), a) < 1e-13);

    // Pointwise product then truncation equals the direct spectral convolution.
    const grid s = make_grid(24, 2 * pi);
    const auto u = band_limited(s, gen, 7), v = band_limited(s, gen, 7);
    const auto U = forward(u), V = forward(v);
    const auto P = dealias(forward(multiply(u, v)), 1);
    for (int q = -7; q <= 7; ++q) {
        cplx acc = 0.0;
        for (int p = -7; p <= 7; ++p)
            if (std::abs(q - p) <= 7) acc += U.at_q(p) * V.at_q(q - p);
        CHECK(std::abs(P.at_q(q) - acc / s.L) < 1e-12 * s.L);
    }
}

TEST_CASE("decay gate") {
    const grid g = make_grid(256, 40);
    const auto narrow = sample(g, [](double x) { return std::exp(-x * x); });
    const auto wide = sample(g, [](double x) { return std::exp(-x * x / 100); });
    CHECK(boundary_amplitude(narrow) < 1e-12);
    CHECK(boundary_amplitude(zeros(g)) == 0.0);
    CHECK_NOTHROW(check_decay(narrow, 1e-8, "narrow"));
    CHECK_THROWS_AS(check_decay(wide, 1e-8, "wide"), decay_violation);
}

TEST_CASE("field IO round trips") {
    rng gen(3);
    const grid g = make_grid(64, 7.5);
    const auto f = band_limited(g, gen, 20);
    std::stringstream csv;
    write_field_csv(csv, f);
    const auto back = read_field_csv(csv);
    CHECK(back.g == g);
    CHECK(back.v == f.v);
    std::stringstream spec;
    write_spectral_csv(spec, forward(f));
    CHECK(read_spectral_csv(spec).c == forward(f).c);
    std::stringstream bin;
    write_field_bin(bin, f);
    CHECK(read_field_bin(bin).v == f.v);
    const auto dir = std::filesystem::temp_directory_path() / "hkdv_io_test";
    std::filesystem::create_directories(dir);
    save_field((dir / "f.bin").string(), f);
    save_field((dir / "f.csv").string(), f);
    CHECK(load_field((dir / "f.bin").string()).v == f.v);
    CHECK(load_field((dir / "f.csv").string()).v == f.v);
    std::stringstream bad("n,L\n4,1\n1\n2\n");
    CHECK_THROWS_AS(read_field_csv(bad), io_error);
}

}

#pragma once

#include <hkdv/grid.hpp>
#include <hkdv/rng.hpp>

#include <cmath>

namespace hkdv::testing {

/// Random real field with Fourier support |q| <= qmax and unit-order amplitudes.
inline real_field band_limited(const grid& g, rng& gen, int qmax) {
    spectral_field F{g, std::vector<cplx>(g.n, cplx{0.0, 0.0})};
    for (int q = 1; q <= qmax; ++q) {
        F.c[q] = cplx{gen.normal(), gen.normal()} * g.L / std::sqrt(double(qmax));
        F.c[g.n - q] = std::conj(F.c[q]);
    }
    F.c[0] = gen.normal() * g.L / std::sqrt(double(qmax));
    return inverse(F);
}

/// Gaussian packet with random centre, width and carrier, well inside the box.
inline real_field random_gaussian(const grid& g, rng& gen) {
    const double c = gen.uniform(-0.05, 0.05) * g.L;
    const double w = gen.uniform(1.0, 2.0);
    const double k = gen.uniform(0.0, 1.5);
    return sample(g, [=](double x) { return std::exp(-std::pow((x - c) / w, 2)) * std::cos(k * x); });
}

}  // namespace hkdv::testing

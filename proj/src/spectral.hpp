#pragma once

#include <hkdv/grid.hpp>

#include <complex>
#include <functional>
#include <vector>

namespace hkdv::detail {

/// Symbol sampled at q = 0..n/2 with the Nyquist rule applied; validates finiteness and Hermitian symmetry.
std::vector<cplx> half_symbol(const grid& g, const std::function<cplx(double)>& symbol);

/// (i xi)^k on q = 0..n/2, Nyquist zeroed for odd k.
std::vector<cplx> deriv_symbol(const grid& g, int k);

/// Applies a half-spectrum symbol to real samples.
std::vector<double> apply_half(const std::vector<double>& v, const std::vector<cplx>& sym);

/// (i)^k exactly.
cplx i_pow(int k);

}  // namespace hkdv::detail

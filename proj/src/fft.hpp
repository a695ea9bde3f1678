#pragma once

#include <complex>
#include <vector>

namespace hkdv::detail {

using cplx = std::complex<double>;

/// Unnormalized real-to-half-complex DFT: out[q] = sum_m in[m] exp(-2 pi i q m / n), q = 0..n/2.
void r2c(int n, const double* in, cplx* out);
/// Inverse of r2c including the 1/n factor; reads in[0..n/2], imaginary parts of q = 0 and n/2 ignored.
void c2r(int n, const cplx* in, double* out);

std::vector<cplx> r2c(const std::vector<double>& in);
std::vector<double> c2r(int n, const std::vector<cplx>& in);

}  // namespace hkdv::detail

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace hkdv::detail {

namespace {

struct plan_pair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

/// Plans are created with unaligned, out-of-place buffers and reused via the new-array interface.
const plan_pair& plans_for(int n) {
    static std::map<int, plan_pair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> r(n);
    std::vector<cplx> c(n / 2 + 1);
    auto* cp = reinterpret_cast<fftw_complex*>(c.data());
    plan_pair p;
    p.fwd = fftw_plan_dft_r2c_1d(n, r.data(), cp, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_1d(n, cp, r.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    return cache.emplace(n, p).first->second;
}

}  // namespace

void r2c(int n, const double* in, cplx* out) {
    const auto& p = plans_for(n);
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void c2r(int n, const cplx* in, double* out) {
    const auto& p = plans_for(n);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)), out);
    const double s = 1.0 / n;
    for (int m = 0; m < n; ++m) out[m] *= s;
}

std::vector<cplx> r2c(const std::vector<double>& in) {
    std::vector<cplx> out(in.size() / 2 + 1);
    r2c(static_cast<int>(in.size()), in.data(), out.data());
    return out;
}

std::vector<double> c2r(int n, const std::vector<cplx>& in) {
    std::vector<double> out(n);
    c2r(n, in.data(), out.data());
    return out;
}

}  // namespace hkdv::detail

#include <hkdv/errors.hpp>
#include <hkdv/grid.hpp>

#include "fft.hpp"

#include <gsl/gsl_sf_zeta.h>

#include <cmath>

namespace hkdv {

namespace {

/// Sum over nonzero images k of |y + kL|^{-1-a}, for |y| <= L/2.
double image_kernel(double y, double L, double alpha) {
    const double s = 1.0 + alpha;
    return std::pow(L, -s) * (gsl_sf_hzeta(s, 1.0 + y / L) + gsl_sf_hzeta(s, 1.0 - y / L));
}

/// Truncated integral at cut-off m*dx, before division by c_a.
std::vector<double> truncated_integral(const real_field& f, double alpha, int m,
                                       const std::vector<cplx>& f_hat, const std::vector<double>& far) {
    const int n = f.g.n;
    const int half = n / 2;
    const double dx = f.g.dx();
    std::vector<double> kern = far;
    const int count = half - m + 1;
    static const double gregory[4] = {17.0 / 48, 59.0 / 48, 43.0 / 48, 49.0 / 48};
    for (int i = 0; i < count; ++i) {
        const int k = m + i;
        double w = 1.0;
        if (i < 4) w = gregory[i];
        if (count - 1 - i < 4) w = gregory[count - 1 - i];
        const double v = w * dx * std::pow(k * dx, -1.0 - alpha);
        kern[k] += v;
        kern[(n - k) % n] += v;
    }
    auto k_hat = detail::r2c(kern);
    std::vector<cplx> prod(half + 1);
    for (int q = 0; q <= half; ++q) prod[q] = f_hat[q] * std::conj(k_hat[q]);
    auto out = detail::c2r(n, prod);
    const double eps = m * dx;
    const double local = 2.0 * std::pow(eps, -alpha) / alpha;
    for (int i = 0; i < n; ++i) out[i] -= f.v[i] * local;
    return out;
}

}  // namespace

double stein_constant(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw invalid_argument("alpha must lie in (0,2)");
    return std::sqrt(std::numbers::pi) * std::tgamma(-0.5 * alpha) /
           (std::pow(2.0, alpha) * std::tgamma(0.5 * (1.0 + alpha)));
}

stein_result stein_deriv(const real_field& f, double alpha, const std::vector<double>& eps_seq,
                         double decay_threshold) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw invalid_argument("alpha must lie in (0,2)");
    if (eps_seq.size() < 2) throw invalid_argument("at least two cut-offs are needed");
    check_decay(f, decay_threshold, "stein_deriv input");
    const int n = f.g.n;
    const double dx = f.g.dx();
    std::vector<int> ms;
    for (std::size_t i = 0; i < eps_seq.size(); ++i) {
        if (!(eps_seq[i] > 0.0)) throw invalid_argument("cut-offs must be positive");
        if (i > 0 && !(eps_seq[i] < eps_seq[i - 1])) throw invalid_argument("cut-offs must decrease");
        const int m = static_cast<int>(std::lround(eps_seq[i] / dx));
        if (m < 4) throw invalid_argument("cut-off below four grid steps");
        if (m > n / 4) throw invalid_argument("cut-off above a quarter of the domain");
        if (!ms.empty() && m == ms.back()) throw invalid_argument("cut-offs collapse to the same node");
        ms.push_back(m);
    }
    std::vector<double> far(n);
    for (int k = 0; k < n; ++k) {
        const int kk = k <= n / 2 ? k : k - n;
        far[k] = image_kernel(kk * dx, f.g.L, alpha) * dx;
    }
    const auto f_hat = detail::r2c(f.v);
    const double c = stein_constant(alpha);
    stein_result res;
    for (int m : ms) {
        auto t = truncated_integral(f, alpha, m, f_hat, far);
        for (double& v : t) v /= c;
        res.eps.push_back(m * dx);
        res.truncated.push_back(make_field(f.g, std::move(t)));
    }
    const double p = 2.0 - alpha;
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
        const double e1 = std::pow(res.eps[i], p);
        const double e2 = std::pow(res.eps[i + 1], p);
        std::vector<double> r(n);
        for (int k = 0; k < n; ++k)
            r[k] = (res.truncated[i + 1].v[k] * e1 - res.truncated[i].v[k] * e2) / (e1 - e2);
        res.extrapolated.push_back(make_field(f.g, std::move(r)));
    }
    res.value = res.extrapolated.back();
    return res;
}

}  // namespace hkdv

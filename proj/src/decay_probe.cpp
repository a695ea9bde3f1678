#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>

#include <algorithm>
#include <cmath>

namespace hkdv {

namespace {

constexpr double pi = std::numbers::pi;

/// Largest exponent growth max_r (|x| r sin th - t r^p sin(p th)) along the ray at angle th.
double ray_growth(double x, double t, int p, double th) {
    const double a = std::abs(x) * std::sin(th);
    const double b = t * std::sin(p * th);
    if (a <= 0.0) return 0.0;
    const double r = std::pow(a / (p * b), 1.0 / (p - 1));
    return a * r * (1.0 - 1.0 / p);
}

/// One half-line term int_0^inf eta^a exp(i sg (sigma t eta^p + x eta) - (eta/Xi)^2) d eta on a rotated ray.
cplx half_line(int j, double t, double x, double xi_env, double beta, int nodes, int sg) {
    const int p = 2 * j + 1;
    const double sigma = (j % 2 == 1) ? 1.0 : -1.0;
    const cplx a((2.0 * j - 1.0) / 2.0, beta);
    const double th0 = pi / (2.0 * p);
    const double dir = sg * sigma;
    double th = th0;
    // The linear phase grows along the ray when sg * x * sin(dir th) < 0.
    if (sg * x * dir < 0.0) {
        double lo = 0.0, hi = th0;
        if (ray_growth(x, t, p, th0) > 8.0) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (ray_growth(x, t, p, mid) > 8.0)
                    hi = mid;
                else
                    lo = mid;
            }
            th = lo;
        }
    }
    const double ang = dir * th;
    const double R = std::max(std::pow(60.0 / (t * std::sin(p * th)), 1.0 / p),
                              3.0 * std::pow(std::abs(x) / t, 1.0 / (p - 1)) + 1.0);
    const double S = std::sqrt(R);
    const double h = S / nodes;
    const cplx e = std::polar(1.0, ang);
    cplx acc = 0.0;
    for (int i = 1; i <= nodes; ++i) {
        const double s = i * h;
        const double r = s * s;
        const cplx eta = r * e;
        const cplx pw = std::exp(a * cplx(std::log(r), ang));
        cplx etap = 1.0;
        for (int k = 0; k < p; ++k) etap *= eta;
        const cplx z = cplx(0.0, sg) * (sigma * t * etap + x * eta) - (eta / xi_env) * (eta / xi_env);
        const double w = (i == nodes) ? 0.5 * h : h;
        acc += w * pw * std::exp(z) * e * (2.0 * s);
    }
    return acc;
}

}  // namespace

cplx oscillatory_integral(int j, double t, double x, double xi_env, double beta, int nodes) {
    if (j < 1) throw invalid_argument("j must be at least 1");
    if (!(t > 0.0)) throw invalid_argument("time must be positive");
    if (!(xi_env > 0.0)) throw invalid_argument("envelope width must be positive");
    return half_line(j, t, x, xi_env, beta, nodes, 1) + half_line(j, t, x, xi_env, beta, nodes, -1);
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw invalid_argument("slope fit needs matching sample counts");
    if (x.size() < 2) throw invalid_argument("slope fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (!(std::abs(den) > 0.0)) throw invalid_argument("slope fit needs distinct abscissae");
    return (n * sxy - sx * sy) / den;
}

decay_probe_result dispersive_decay_probe(int j, const std::vector<double>& t_list,
                                          const std::vector<double>& xi_list, double beta, double x_max, int n_x) {
    if (j < 1) throw invalid_argument("j must be at least 1");
    if (t_list.size() < 2) throw invalid_argument("need at least two times");
    if (xi_list.empty()) throw invalid_argument("need at least one envelope");
    if (n_x < 2 || !(x_max > 0.0)) throw invalid_argument("invalid x range");
    const double t_min = *std::min_element(t_list.begin(), t_list.end());
    if (!(t_min >= 1.0)) throw invalid_argument("decay probe requires t >= 1");
    const double scale = std::pow(x_max / ((2.0 * j + 1.0) * t_min), 1.0 / (2.0 * j));
    for (double xi : xi_list)
        if (xi < 4.0 * scale) throw invalid_argument("envelope too narrow for the probed x range");
    decay_probe_result res;
    res.j = j;
    res.beta = beta;
    res.times = t_list;
    std::vector<double> lt;
    for (double t : t_list) lt.push_back(std::log(t));
    for (double xi : xi_list) {
        decay_fit fit;
        fit.xi_env = xi;
        std::vector<double> ls;
        for (double t : t_list) {
            double sup = 0.0;
            for (int i = 0; i < n_x; ++i) {
                const double x = -x_max + 2.0 * x_max * i / (n_x - 1);
                sup = std::max(sup, std::abs(oscillatory_integral(j, t, x, xi, beta)));
            }
            fit.sups.push_back(sup);
            ls.push_back(std::log(sup));
        }
        fit.slope = ls_slope(lt, ls);
        res.fits.push_back(fit);
    }
    for (std::size_t i = 1; i < res.fits.size(); ++i)
        res.slope_shift = std::max(res.slope_shift, std::abs(res.fits[i].slope - res.fits[0].slope));
    return res;
}

}  // namespace hkdv

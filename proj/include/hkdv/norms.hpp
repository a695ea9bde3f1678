#pragma once

#include <hkdv/grid.hpp>
#include <hkdv/propagators.hpp>

#include <limits>
#include <string>
#include <vector>

namespace hkdv {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// ||J^s f||_2 from the Plancherel sum.
double sobolev_norm(const real_field& f, double s);

enum class weight_kind { homogeneous, japanese };

/// ||w f||_2 with w = |x|^r or <x>^r = (1 + x^2)^(r/2), node quadrature.
double weighted_norm(const real_field& f, double r, weight_kind kind, double decay_threshold = 1e-6);

/// Z_{s,r} norm ||f||_{H^s} + |||x|^r f||_2.
double z_norm(const real_field& f, double s, double r, double decay_threshold = 1e-6);

/// Discrete L^p norm over the grid (Riemann sum); p = inf gives the max.
double lp_norm(const real_field& f, double p);

/// Norm exponent p for x and q for t, and the operator applied to every slice first.
struct mixed_norm_spec {
    enum class ordering { x_outer_t_inner, t_outer_x_inner };
    double p = 2.0;
    double q = 2.0;
    ordering order = ordering::t_outer_x_inner;
    /// Exponent of J^s.
    double s = 0.0;
    /// Exponent of D^a.
    double a = 0.0;
    /// Integer derivative order.
    int deriv = 0;
    /// Exponent of the |x|^r weight applied last.
    double weight_r = 0.0;
    std::string label;
};

/// Slice after J^s D^a d^deriv and the weight.
real_field mixed_norm_operand(const real_field& f, const mixed_norm_spec& spec);

/// L^p_x L^q_T or L^q_T L^p_x over the stored slices, trapezoid in t, Riemann sum in x.
double mixed_norm(const trajectory& tr, const mixed_norm_spec& spec);

/// Trapezoid integral of samples over possibly non-uniform times.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

/// The seven work-space components for (j, s, r), with the endpoint loss eps in the maximal term.
std::vector<mixed_norm_spec> work_space_components(int j, double s, double r, double eps = 0.05);

// ---------------------------------------------------------------- cutoffs

/// Cutoff parameters; b >= 5 eps.
struct cutoff_spec {
    double eps = 0.1;
    double b = 0.5;
};

/// Smooth cutoff equal to 0 for x <= eps and 1 for x >= b.
///
/// chi is the ramp of slope 1/(b - 3 eps) on [2 eps, b - eps] convolved with the normalized
/// bump supported in [-eps, eps]; all derivatives are closed-form in the bump and its integrals.
class cutoff {
public:
    explicit cutoff(cutoff_spec spec);

    const cutoff_spec& spec() const { return spec_; }
    double value(double x) const;
    /// Derivative of order 0..3.
    double derivative(double x, int order) const;
    std::vector<double> sample(const std::vector<double>& xs, int order) const;

private:
    cutoff_spec spec_;
    double slope_;
};

cutoff make_cutoff(const cutoff_spec& spec);

/// Measured pointwise properties of one cutoff on a dense sample.
struct cutoff_report {
    cutoff_spec spec;
    int samples = 0;
    bool support_ok = false;
    bool monotone_ok = false;
    double chi_at_3eps = 0.0;
    double lower_bound = 0.0;
    bool lower_bound_ok = false;
    /// sup |chi^(l)| / chi'_{eps/3, b+eps} for l = 1, 2, 3.
    std::vector<double> derivative_constants;
    double wide_derivative_max = 0.0;
    bool wide_derivative_ok = false;
    /// sup chi' / (chi'_{eps/3,b+eps} chi_{eps/3,b+eps}) and sup chi' / chi_{eps/5,eps}.
    double product_constant = 0.0;
    double narrow_constant = 0.0;
    bool pass = false;
};

cutoff_report check_cutoff_properties(const cutoff_spec& spec, int samples = 10000);

// ---------------------------------------------------------------- windows

enum class window_side { right, left };

/// Moving window of the propagation statements.
///
/// Right side: the energy window is [x0 + eps - v t, inf) and the space-time window
/// [x0 + eps - v t, x0 + R - v t]. Left side mirrors both about x0.
struct window_spec {
    double x0 = 0.0;
    double eps = 0.5;
    double R = 5.0;
    double v = 1.0;
    int l = 0;
    int m = 1;
    window_side side = window_side::right;
};

void validate(const window_spec& w);

struct window_result {
    std::vector<double> times;
    /// energy[l][i] for derivative order l = 0..w.l at times[i].
    std::vector<std::vector<double>> energy;
    std::vector<double> sup_energy;
    /// int_0^T int |d^(m+j) u|^2 over the space-time window.
    double spacetime_energy = 0.0;
};

/// Integral of the piecewise-linear interpolant of g over [a, b] on the periodic grid; throws if [a, b] leaves the box.
double window_integral(const grid& g, const std::vector<double>& y, double a, double b);

window_result window_energy(const trajectory& tr, const window_spec& w, int j);

}  // namespace hkdv

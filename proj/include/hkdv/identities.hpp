#pragma once

#include <hkdv/grid.hpp>
#include <hkdv/propagators.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hkdv {

using rational = boost::multiprecision::cpp_rational;

/// Coefficients (c_0, ..., c_j) of the reduction identity, exact.
struct coefficient_vector {
    int j = 0;
    std::vector<rational> c;
};

/// Back-substitution in the triangular system sum_{l >= m} c_l binom(2l+1, l-m) = 0, m < j, c_j = 1. Supports 1 <= j <= 32.
coefficient_vector solve_coefficients(int j);

/// Residual of row m of the system, exact.
rational system_row(const coefficient_vector& cv, int m);

std::vector<double> to_double(const coefficient_vector& cv);

/// Relative L^2 residual of (d^(2j+1) u) u against (1/2) sum_l c_l d^(2l+1)((d^(j-l) u)^2).
///
/// Requires the spectrum of f to vanish for |q| > n/4. The Nyquist mode is removed from
/// both sides. When the left side has norm below 1e-14 the absolute residual is returned.
double verify_reduction_identity(int j, const real_field& f);

struct commutator_result {
    double rel_error = 0.0;
    /// Boundary amplitudes of W(t)u0, x u0 and W(t)(x u0).
    double boundary = 0.0;
};

/// Compares W(t)(x u0) with x W(t) u0 - (2j+1) t W(t) d^(2j) u0 using node coordinates as the weight.
commutator_result x_weight_commutator(const dispersion_params& p, double t, const real_field& u0,
                                      double decay_threshold = 1e-6);

struct decomposition_result {
    real_field remainder;
    double ratio = 0.0;
};

/// Remainder W(-t)[|x|^r W(t) u0] - |x|^r u0 and its size relative to (1 + |t|) ||u0||_{H^s}; needs s >= 2 j r.
decomposition_result frac_weight_decomposition(const dispersion_params& p, double t, double r, double s,
                                               const real_field& u0, double decay_threshold = 1e-6);

// ---------------------------------------------------------------- ratio probes

enum class probe_kind {
    dispersive_decay,
    strichartz,
    kato_smoothing,
    maximal,
    kato_ponce,
    frac_leibniz,
    interpolation,
    weighted_decomposition
};

std::string to_string(probe_kind k);
probe_kind probe_kind_from_string(const std::string& s);

/// Probe settings; `params` keys used per kind are listed in the README.
struct probe_spec {
    probe_kind kind = probe_kind::kato_ponce;
    int j = 1;
    int n = 2048;
    double L = 64.0;
    std::map<std::string, double> params;
    int ensemble_size = 8;
    std::uint64_t seed = 1;

    double param(const std::string& key, double fallback) const;
};

struct probe_report {
    probe_spec spec;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    /// Quantiles at 0.1, 0.5, 0.9.
    std::vector<double> quantiles;
    /// max_ratio on the refined grid (2n, same L) divided by max_ratio on the base grid.
    double refinement_trend = 0.0;
    bool pass = false;
};

void validate(const probe_spec& spec);

/// Evaluates LHS/RHS of one inequality on a random ensemble; passes when all ratios are finite
/// and the maximum moves by at most 10% under grid refinement.
probe_report inequality_ratio_probe(const probe_spec& spec);

/// Ratio of one inequality for one datum on one grid (used by the probe and by tests).
double probe_ratio(const probe_spec& spec, const grid& g, const real_field& f, const real_field& h);

/// Deterministic Schwartz-like ensemble member: a sum of three modulated Gaussians.
real_field random_packet(const grid& g, std::uint64_t seed, int member);

/// Kato smoothing time integrals int_{-T}^{T} |d^j W(t) u0(x)|^2 dt at each x, by direct mode sums.
struct kato_result {
    std::vector<double> xs;
    std::vector<double> integrals;
    /// ||u0||^2 / (2j+1).
    double exact = 0.0;
    double spread = 0.0;
};

kato_result kato_smoothing_integrals(int j, const real_field& u0, const std::vector<double>& xs, double T, double dt);

// ---------------------------------------------------------------- dispersive decay

struct decay_fit {
    double xi_env = 0.0;
    std::vector<double> sups;
    double slope = 0.0;
};

struct decay_probe_result {
    int j = 1;
    double beta = 0.0;
    std::vector<double> times;
    std::vector<decay_fit> fits;
    /// max |slope - slope of first envelope| over the other envelopes.
    double slope_shift = 0.0;
};

/// I_t(x) = int |xi|^((2j-1)/2 + i beta) exp(i t (-1)^(j+1) xi^(2j+1) + i x xi - (xi/Xi)^2) d xi by rotated-contour quadrature.
cplx oscillatory_integral(int j, double t, double x, double xi_env, double beta = 0.0, int nodes = 6000);

/// Fits log sup_x |I_t| against log t for each envelope; x runs over n_x points in [-x_max, x_max].
///
/// Rejects envelopes below 4 (x_max / ((2j+1) t_min))^(1/(2j)).
decay_probe_result dispersive_decay_probe(int j, const std::vector<double>& t_list,
                                          const std::vector<double>& xi_list, double beta = 0.0,
                                          double x_max = 40.0, int n_x = 641);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hkdv

#pragma once

#include <hkdv/grid.hpp>
#include <hkdv/propagators.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hkdv {

/// exp(-2 |x - center|^alpha).
struct singular_profile_spec {
    double alpha = 3.0;
    double center = 0.0;
};

/// Order of the first derivative that fails to exist classically at the center (ceil(alpha)),
/// or -1 when alpha is an even integer and the profile is smooth.
int profile_failure_order(double alpha);

real_field singular_profile(const singular_profile_spec& spec, const grid& g);

/// Closed-form profile value (used as a quadrature oracle).
double profile_value(const singular_profile_spec& spec, double x);

enum class weight_scheme { double_exponential, normalized };

std::string to_string(weight_scheme w);
weight_scheme weight_scheme_from_string(const std::string& s);

struct blowup_datum_spec {
    int qmax = 2;
    int pmax = 2;
    weight_scheme scheme = weight_scheme::normalized;
    /// Per-term amplitude in the normalized scheme.
    double delta = 1.0;
    /// Exponent of the profile; the center is set per term.
    double alpha = 3.0;
};

/// One retained term weight * W(-p2/q2) phi(x - p1/q1).
struct blowup_term {
    int p1 = 1, q1 = 1, p2 = 1, q2 = 1;
    double weight = 0.0;
    double singular_time = 0.0;
    double singular_x = 0.0;
    double boundary = 0.0;
};

struct blowup_datum {
    real_field u0;
    std::vector<blowup_term> terms;
};

/// Weight exp(-e^(q1+q2)) exp(-(p1^2 + p2^2)).
double double_exponential_weight(int p1, int q1, int p2, int q2);

/// Sums every term over coprime pairs 1 <= p <= pmax, 1 <= q <= qmax. Each back-propagated term
/// must pass the boundary-decay gate at `decay_threshold`.
blowup_datum build_blowup_datum(const blowup_datum_spec& spec, const dispersion_params& p, const grid& g,
                                double decay_threshold);

/// Distinct singular times (ascending) and locations listed in a manifest.
std::vector<double> manifest_times(const std::vector<blowup_term>& terms);
std::vector<double> manifest_locations(const std::vector<blowup_term>& terms);

struct gap_certificate {
    double t = 0.0;
    int kmax = 0;
    /// min over coprime p, q <= kmax of |t - p/q| (p + q)^exponent.
    double gap = 0.0;
    int p = 0, q = 0;
    bool rational_in_range = false;
};

gap_certificate irrationality_gap(double t, int kmax, double exponent = 3.0);

/// Least-squares decay rate of the log-binned RMS of |f^| over [xi_lo, xi_hi] (positive for decaying spectra).
double tail_exponent(const spectral_field& F, double xi_lo, double xi_hi, int bins = 8);
/// Same fit over the top two octaves of the grid band.
double tail_exponent(const real_field& f);

/// Tail exponent of f multiplied by exp(-((x - center)/width)^8).
double local_tail_exponent(const real_field& f, double center, double width, double xi_lo, double xi_hi);

struct indicator_options {
    std::vector<double> h_set{1.0 / 64, 1.0 / 128, 1.0 / 256};
    /// Half-width of the neighbourhood of x* over which the quotient is maximized.
    double rho = 0.25;
};

struct indicator_result {
    /// max over h and the neighbourhood of the one-sided quotient mismatch.
    double holder_quotient = 0.0;
    /// Neighbourhood maximum for each h, in h_set order.
    std::vector<double> per_h;
    double tail_exponent = 0.0;
};

/// Discrete C^(order+1) failure witness for g = d^order f at x*.
///
/// With D+(h) = (g(x+h) - g(x))/h and D-(h) = (g(x) - g(x-h))/h the quotient is
/// |D+(h) - D-(h)| + |D+(h) - D+(2h)| + |D-(h) - D-(2h)|, maximized over |x - x*| <= rho.
/// Off-node values come from band-limited interpolation.
indicator_result singularity_indicator(const real_field& f, int order, double x_star,
                                       const indicator_options& opt = {});

/// Same witness evaluated on W(t) applied to a spectrum (used for time sweeps).
indicator_result singularity_indicator_at(const spectral_field& F0, const dispersion_params& p, double t,
                                          double x_star, const indicator_options& opt = {});

struct contrast_entry {
    double t = 0.0;
    double x_star = 0.0;
    double quotient = 0.0;
    double reference = 0.0;
    double contrast = 0.0;
    std::string classification;
};

/// Quotient at (t_rational, x*) divided by the quotient at (t_irrational, x*), linear evolution.
contrast_entry blowup_contrast(const blowup_datum& datum, const dispersion_params& p, double t_rational,
                               double t_irrational, double x_star, const indicator_options& opt = {},
                               bool require_manifest = true);

// ---------------------------------------------------------------- smoothing

/// Random-phase periodic datum with |u^(xi)| ~ |xi|^-(s+1/2) on 0 < |q| <= dealias_cutoff(n, k), zero mean, max |u| = amp.
real_field rough_datum(const grid& g, double s, int k, double amp, std::uint64_t seed);

struct smoothing_result {
    bool defined = false;
    double tail_z = 0.0;
    double tail_w = 0.0;
    /// tail(z) - tail(W(T) u0).
    double gain_raw = 0.0;
    /// Same after removing the transport by the spatial mean of u^k.
    double gain = 0.0;
    double tail_z_renorm = 0.0;
    double transport = 0.0;
    double z_ratio = 0.0;
    double xi_lo = 0.0, xi_hi = 0.0;
};

/// Tail-exponent gain of the Duhamel term at the final time over [kc/4, kc], kc = 2 pi dealias_cutoff(n, k) / L.
smoothing_result smoothing_gain(const trajectory& tr, const real_field& u0, const dispersion_params& p);

/// Default step for the smoothing runs: 0.5 / (3 max|u0|^k pi n / L + 1).
double smoothing_dt(const real_field& u0, int k);

}  // namespace hkdv

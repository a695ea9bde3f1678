#pragma once

#include <hkdv/errors.hpp>
#include <hkdv/grid.hpp>

#include <string>
#include <vector>

namespace hkdv {

/// Selects the equation: dispersion order 2j+1, nonlinearity u^k d_x^j u.
struct dispersion_params {
    int j = 1;
    int k = 1;
};

void validate(const dispersion_params& p);

/// Orientation of the exponential weight exp(sigma (-1)^(j+1) x) and the intended time direction.
struct conjugation_spec {
    int sigma = 1;
    int time_sign = 1;
};

/// Time-indexed slices on one grid.
struct trajectory {
    grid g;
    std::vector<double> times;
    std::vector<real_field> slices;
    /// Solver settings echoed into serialized metadata; zero when not produced by evolve.
    dispersion_params params;
    double dt = 0.0;
    int stride = 0;

    double final_time() const { return times.empty() ? 0.0 : times.back(); }
};

/// Checks the trajectory invariants (shared grid, increasing times, matching sizes).
void validate(const trajectory& tr);

/// Raised when the solver produces non-finite values; carries every finite slice computed so far.
struct diverged : error {
    diverged(const std::string& what, trajectory partial, double t_fail)
        : error(what), partial(std::move(partial)), t_fail(t_fail) {}
    trajectory partial;
    double t_fail;
};

/// (-1)^(j+1) xi^(2j+1), the phase rate of the linear group.
double dispersion_phase(int j, double xi);

/// W(t): multiplier exp(i t (-1)^(j+1) xi^(2j+1)); the Nyquist mode is dropped.
real_field linear_flow(const dispersion_params& p, double t, const real_field& u0);

/// Exponent a = sigma (-1)^(j+1) of the weight exp(a x).
int conjugation_weight(const dispersion_params& p, const conjugation_spec& spec);

/// log of the symbol magnitude exp(-t (i xi - a)^(2j+1)) at the highest non-Nyquist grid frequency.
double conjugation_top_log_gain(const dispersion_params& p, const conjugation_spec& spec, double t, const grid& g);

/// Flow of d_t w + (d_x - a)^(2j+1) w = 0, so that exp(a x) W(t) f = conjugated_flow(t, exp(a x) f).
///
/// Throws unstable_conjugation when t != 0 and the symbol grows at the top of the grid band,
/// and invalid_argument when the sign of t contradicts spec.time_sign.
real_field conjugated_flow(const dispersion_params& p, const conjugation_spec& spec, double t, const real_field& w0);

/// Integrating-factor RK4 for d_t u + d_x^(2j+1) u + u^k d_x^j u = 0 on [0, T].
///
/// The step is T / ceil(T / dt). Slices are stored every `stride` steps and at T.
/// The Nyquist mode of the datum is dropped, so slice 0 is the projected datum.
trajectory evolve(const dispersion_params& p, const real_field& u0, double T, double dt, int stride = 1);

/// Dealiased nonlinearity u^k d_x^j u.
real_field nonlinearity(const dispersion_params& p, const real_field& u);

/// z(t_m) = u(t_m) - W(t_m) u0 for every stored slice.
trajectory duhamel_split(const trajectory& tr, const real_field& u0, const dispersion_params& p);

/// Two evaluations of the Duhamel term at the final time.
struct duhamel_check {
    real_field subtraction;
    real_field quadrature;
    double rel_diff = 0.0;
};

/// Composite Simpson evaluation of -int_0^T W(T - s) N(u(s)) ds over the stored slices.
///
/// Needs uniformly spaced slices and an even number of intervals.
duhamel_check duhamel_crosscheck(const trajectory& tr, const real_field& u0, const dispersion_params& p);

/// Directory layout: meta.json plus slice_NNNNN.bin per stored time.
void save_trajectory(const std::string& dir, const trajectory& tr);
trajectory load_trajectory(const std::string& dir);

}  // namespace hkdv

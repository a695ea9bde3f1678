#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

namespace hkdv {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L/2, L/2).
///
/// Arrays indexed by frequency use FFT order: index i holds q = i for
/// i < n/2 and q = i - n otherwise, so index n/2 is the Nyquist mode q = -n/2.
struct grid {
    int n = 0;
    double L = 0.0;

    double dx() const { return L / n; }
    double x(int m) const { return -0.5 * L + m * dx(); }
    /// Signed frequency index stored at FFT-order position i.
    int q(int i) const { return i < n / 2 ? i : i - n; }
    double xi(int i) const { return 2.0 * std::numbers::pi * q(i) / L; }
    /// Largest resolved |xi|, attained by the Nyquist mode.
    double xi_max() const { return std::numbers::pi * n / L; }
    std::vector<double> nodes() const;

    bool operator==(const grid&) const = default;
};

/// Validated grid: n even, n >= 16, L > 0.
grid make_grid(int n, double L);

/// Real samples at the grid nodes.
struct real_field {
    grid g;
    std::vector<double> v;

    double operator[](int m) const { return v[m]; }
};

/// Fourier coefficients F_q = dx * sum_m f_m exp(-i xi_q x_m), FFT order.
///
/// With this normalization F_q approximates the continuous transform at xi_q,
/// the inverse is f_m = (1/L) sum_q F_q exp(i xi_q x_m), and
/// dx * sum |f_m|^2 = (1/L) * sum |F_q|^2.
struct spectral_field {
    grid g;
    std::vector<cplx> c;

    cplx at_q(int q) const { return c[q >= 0 ? q : q + g.n]; }
};

/// Builds a field, rejecting size mismatch and non-finite samples.
real_field make_field(const grid& g, std::vector<double> v);
real_field sample(const grid& g, const std::function<double(double)>& f);
real_field zeros(const grid& g);

spectral_field forward(const real_field& f);
/// Inverse transform; uses the q >= 0 half and the Nyquist real part.
real_field inverse(const spectral_field& F);

/// Discrete L^2 norm (dx * sum f^2)^(1/2).
double l2_norm(const real_field& f);
double max_abs(const real_field& f);

/// Symbol evaluated on grid frequencies.
struct multiplier_spec {
    std::function<cplx(double)> symbol;
    std::string label;
};

/// Multiplies every coefficient by the symbol.
///
/// The symbol must satisfy m(-xi) = conj(m(xi)). The Nyquist mode keeps the
/// symbol value only when the symbol is real and even there; otherwise it is zeroed.
real_field apply_multiplier(const multiplier_spec& spec, const real_field& f);

/// Spectral derivative of integer order k >= 0.
real_field deriv(const real_field& f, int k);

enum class deriv_kind { homogeneous, inhomogeneous };

/// D^s (symbol |xi|^s, zero at xi = 0 for s > 0) or J^s (symbol (1 + xi^2)^(s/2)).
real_field frac_deriv(const real_field& f, double s, deriv_kind kind);

/// Truncated principal-value evaluation of the fractional derivative.
struct stein_result {
    /// Last Richardson-extrapolated value.
    real_field value;
    /// Values actually used for the cut-offs (snapped to multiples of dx).
    std::vector<double> eps;
    /// Normalized truncated integral per eps.
    std::vector<real_field> truncated;
    /// Two-point Richardson value from each consecutive pair of eps.
    std::vector<real_field> extrapolated;
};

/// Stein form (1/c_a) lim_{eps->0} int_{|y|>=eps} (f(x+y) - f(x)) / |y|^(1+a) dy on the periodic extension.
stein_result stein_deriv(const real_field& f, double alpha, const std::vector<double>& eps_seq,
                         double decay_threshold = 1e-8);

/// Normalizing constant c_a of the Stein form in one dimension.
double stein_constant(double alpha);

/// Zeroes |q| > dealias_cutoff(n, k).
spectral_field dealias(const spectral_field& F, int k);
/// Largest retained |q| for power k: the largest K with (k+2) K < n, so (k+1)-fold products do not alias into |q| <= K.
int dealias_cutoff(int n, int k);

/// Pointwise product.
real_field multiply(const real_field& a, const real_field& b);
real_field add(const real_field& a, const real_field& b, double scale_b = 1.0);
real_field scale(const real_field& a, double s);

/// max |f| over the outer 2% of nodes at each end, divided by max |f| (0 for f = 0).
double boundary_amplitude(const real_field& f);
/// Throws decay_violation when boundary_amplitude(f) exceeds threshold.
void check_decay(const real_field& f, double threshold, const std::string& what);

/// Relative discrete L^2 distance ||a - b|| / ||b||.
double rel_l2(const real_field& a, const real_field& b);

void write_field_csv(std::ostream& os, const real_field& f);
real_field read_field_csv(std::istream& is);
void write_spectral_csv(std::ostream& os, const spectral_field& F);
spectral_field read_spectral_csv(std::istream& is);
/// Binary layout: 8-byte magic "HKDVFLD1", int64 n, double L, n doubles (native little-endian).
void write_field_bin(std::ostream& os, const real_field& f);
real_field read_field_bin(std::istream& is);

void save_field(const std::string& path, const real_field& f);
real_field load_field(const std::string& path);

}  // namespace hkdv

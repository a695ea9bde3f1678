#include <hkdv/errors.hpp>
#include <hkdv/identities.hpp>

namespace hkdv {

namespace {

boost::multiprecision::cpp_int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    boost::multiprecision::cpp_int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

coefficient_vector solve_coefficients(int j) {
    if (j < 1 || j > 32) throw invalid_argument("coefficient system supports 1 <= j <= 32");
    coefficient_vector cv;
    cv.j = j;
    cv.c.assign(j + 1, rational(0));
    cv.c[j] = 1;
    // Row m has diagonal entry binom(2m+1, 0) = 1 on c_m.
    for (int m = j - 1; m >= 0; --m) {
        rational s = 0;
        for (int l = m + 1; l <= j; ++l) s += cv.c[l] * rational(binom(2 * l + 1, l - m));
        cv.c[m] = -s;
    }
    if (cv.c[0] == 0) throw error("c_0 vanished");
    return cv;
}

rational system_row(const coefficient_vector& cv, int m) {
    rational s = 0;
    for (int l = m; l <= cv.j; ++l) s += cv.c[l] * rational(binom(2 * l + 1, l - m));
    return s;
}

std::vector<double> to_double(const coefficient_vector& cv) {
    std::vector<double> out;
    for (const auto& c : cv.c) out.push_back(static_cast<double>(c));
    return out;
}

}  // namespace hkdv

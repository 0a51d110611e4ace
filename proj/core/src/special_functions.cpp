#include "casimir/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

// sinh/cosh with the exponential range carried by XReal. The exp-difference
// form cancels for small x, so defer to libm there.
XReal xsinh(double x) {
    if (x < 350.0) return XReal(std::sinh(x));
    return (XReal::from_ln(x) - XReal::from_ln(-x)) * XReal(0.5);
}
XReal xcosh(double x) {
    if (x < 350.0) return XReal(std::cosh(x));
    return (XReal::from_ln(x) + XReal::from_ln(-x)) * XReal(0.5);
}

}  // namespace

BesselHalfArrayX bessel_half_array_x(int l_max, double x) {
    if (l_max < 0) throw std::domain_error("bessel_half_array_x: l_max must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_half_array_x: x must be > 0");

    const int n = l_max + 1;
    BesselHalfArrayX out;
    out.i.resize(n);
    out.k.resize(n);
    out.i_combo.resize(n);
    out.k_combo.resize(n);

    const XReal pref_i = XReal(std::sqrt(2.0 / (pi * x)));  // sqrt(2/(pi x))
    const XReal i_half = pref_i * xsinh(x);                 // I_{1/2}
    const XReal i_mhalf = pref_i * xcosh(x);                // I_{-1/2}

    // I by Miller downward recurrence: f_{j-1} = f_{j+1} + ((2j+1)/x) f_j,
    // started well above l_max and normalized by the closed-form I_{1/2}.
    const int start = l_max + std::max(20, static_cast<int>(std::ceil(std::sqrt(40.0 * x))));
    XReal fp;            // f_{j+1}
    XReal fc = XReal(1.0);  // f_j at j = start
    for (int j = start; j >= 1; --j) {
        XReal fm = fp + XReal((2.0 * j + 1.0) / x) * fc;
        fp = fc;
        fc = fm;
        if (j - 1 <= l_max) out.i[j - 1] = fc;
        if (j <= l_max) out.i[j] = fp;
    }
    const XReal norm = i_half / out.i[0];
    for (int j = 0; j <= l_max; ++j) out.i[j] *= norm;

    // K upward from the closed forms; upward is the stable direction for K.
    const XReal k_half = XReal(std::sqrt(pi / (2.0 * x)) ) * XReal::from_ln(-x);
    out.k[0] = k_half;
    if (l_max >= 1) out.k[1] = k_half * XReal(1.0 + 1.0 / x);
    for (int j = 1; j + 1 <= l_max; ++j)
        out.k[j + 1] = out.k[j - 1] + XReal((2.0 * j + 1.0) / x) * out.k[j];

    // Combos via the recurrence identities; order j has nu = j + 1/2 so the
    // (nu - 1/2) factor is just j. For j = 0 the closed forms are used.
    out.i_combo[0] = XReal(x) * i_mhalf;
    out.k_combo[0] = -(XReal(x) * k_half);
    for (int j = 1; j <= l_max; ++j) {
        out.i_combo[j] = XReal(x) * out.i[j - 1] - XReal(static_cast<double>(j)) * out.i[j];
        out.k_combo[j] = -(XReal(x) * out.k[j - 1]) - XReal(static_cast<double>(j)) * out.k[j];
    }
    return out;
}

BesselHalf bessel_half(int l, double x, bool scaled) {
    if (l < 0) throw std::domain_error("bessel_half: l must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_half: x must be > 0");
    if (!scaled && x > 700.0)
        throw std::domain_error("bessel_half: x > 700 overflows, request scaled values");
    BesselHalfArrayX arr = bessel_half_array_x(l, x);
    const XReal si = scaled ? XReal::from_ln(-x) : XReal(1.0);
    const XReal sk = scaled ? XReal::from_ln(x) : XReal(1.0);
    BesselHalf out;
    out.i = (arr.i[l] * si).to_double();
    out.i_combo = (arr.i_combo[l] * si).to_double();
    out.k = (arr.k[l] * sk).to_double();
    out.k_combo = (arr.k_combo[l] * sk).to_double();
    out.scaled = scaled;
    return out;
}

DebyeFactors debye_factors(double z, double nu) {
    if (!(z > 0.0)) throw std::domain_error("debye_factors: z must be > 0");
    DebyeFactors f;
    const double r = std::sqrt(1.0 + z * z);
    f.eta = r + std::log(z / (1.0 + r));
    f.tau_z = 1.0 / r;
    const double t = f.tau_z;
    f.u1 = t / 8.0 - 5.0 * t * t * t / 24.0;
    f.m1 = t / 8.0 + 7.0 * t * t * t / 24.0;
    const double q = std::pow(1.0 + z * z, 0.25);
    f.i_amp = std::exp(nu * f.eta) / (std::sqrt(2.0 * pi * nu) * q) * (1.0 + f.u1 / nu);
    f.i_combo_amp = std::sqrt(nu / (2.0 * pi)) * std::exp(nu * f.eta) * q * (1.0 + f.m1 / nu);
    f.k_amp = std::sqrt(pi / (2.0 * nu)) * std::exp(-nu * f.eta) / q * (1.0 - f.u1 / nu);
    f.k_combo_amp = -std::sqrt(pi * nu / 2.0) * std::exp(-nu * f.eta) * q * (1.0 - f.m1 / nu);
    return f;
}

void assoc_legendre_columns_x(int l_max, int m, double x, std::vector<XReal>& p,
                              std::vector<XReal>& dp) {
    if (m < 0) throw std::domain_error("assoc_legendre: m must be >= 0");
    if (!(x > 1.0)) throw std::domain_error("assoc_legendre: x must be > 1");
    p.assign(l_max + 1, XReal());
    dp.assign(l_max + 1, XReal());
    if (m > l_max) return;

    const double x2m1 = (x - 1.0) * (x + 1.0);
    const XReal s = XReal(std::sqrt(x2m1));

    // P^_m^m = (2m-1)!! (x^2-1)^{m/2}; derivative m x (x^2-1)^{m/2 - 1} (2m-1)!!
    XReal pmm(1.0);
    for (int k = 1; k <= m; ++k) pmm *= XReal(2.0 * k - 1.0) * s;
    p[m] = pmm;
    dp[m] = m > 0 ? XReal(static_cast<double>(m) * x / x2m1) * pmm : XReal();

    if (m + 1 <= l_max) {
        p[m + 1] = XReal((2.0 * m + 1.0) * x) * p[m];
        dp[m + 1] = XReal(2.0 * m + 1.0) * (p[m] + XReal(x) * dp[m]);
    }
    for (int l = m + 2; l <= l_max; ++l) {
        const XReal a(2.0 * l - 1.0);
        const XReal b(static_cast<double>(l + m - 1));
        const XReal inv(1.0 / static_cast<double>(l - m));
        p[l] = (a * XReal(x) * p[l - 1] - b * p[l - 2]) * inv;
        dp[l] = (a * (p[l - 1] + XReal(x) * dp[l - 1]) - b * dp[l - 2]) * inv;
    }
}

LegendreValue assoc_legendre_real(int l, int m, double x) {
    if (l < 0 || m > l) throw std::domain_error("assoc_legendre: require 0 <= m <= l");
    std::vector<XReal> p, dp;
    assoc_legendre_columns_x(l, m, x, p, dp);
    const double s = std::sqrt((x - 1.0) * (x + 1.0));
    return {p[l].to_double(), s * dp[l].to_double()};
}

}  // namespace casimir

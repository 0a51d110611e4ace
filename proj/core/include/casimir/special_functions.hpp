#pragma once

#include <vector>

#include "casimir/xreal.hpp"

namespace casimir {

/// Modified Bessel functions of half-integer order nu = l + 1/2 and the
/// combinations (1/2) B_nu(x) + x B_nu'(x) that the Mie coefficients are
/// built from. Combos come from the recurrence identities
///   I/2 + x I' =  x I_{nu-1} - (nu - 1/2) I_nu
///   K/2 + x K' = -x K_{nu-1} - (nu - 1/2) K_nu
/// not from numeric differentiation.
struct BesselHalf {
    double i = 0.0;
    double k = 0.0;
    double i_combo = 0.0;
    double k_combo = 0.0;
    bool scaled = false;  // I-quantities carry e^{-x}, K-quantities e^{+x}
};

/// Single order. Unscaled access overflows for x > 700 and throws; pass
/// scaled = true there (the scattering code always does).
BesselHalf bessel_half(int l, double x, bool scaled = false);

/// All orders 0..l_max in one Miller pass (I downward, K upward), extended
/// range. Vectors are indexed by l.
struct BesselHalfArrayX {
    std::vector<XReal> i, k, i_combo, k_combo;
};
BesselHalfArrayX bessel_half_array_x(int l_max, double x);

/// Debye uniform asymptotics: eta(z), tau(z) = 1/sqrt(1+z^2), and the first
/// correction polynomials u1, m1. Amplitudes are the leading approximations
/// of I_nu(nu z), K_nu(nu z) and their combos.
struct DebyeFactors {
    double eta;
    double tau_z;
    double u1;
    double m1;
    double i_amp;
    double i_combo_amp;
    double k_amp;
    double k_combo_amp;
};
DebyeFactors debye_factors(double z, double nu);

/// Real-normalized associated Legendre function on x > 1:
///   P^_l^m(x) = (x^2-1)^{m/2} d^{l+m}/dx^{l+m} (x^2-1)^l / (2^l l!),
/// i.e. the printed P_l^m with the (-1)^m (1-x^2)^{m/2} phase replaced by its
/// real magnitude. dp = sqrt(x^2-1) * dP^/dx (the sinh(theta) P' combination).
struct LegendreValue {
    double p;
    double dp;
};
LegendreValue assoc_legendre_real(int l, int m, double x);

/// Columns P^_l^m(x) and dP^/dx for l = 0..l_max at fixed (m, x), extended
/// range. Entries with l < m are zero.
void assoc_legendre_columns_x(int l_max, int m, double x, std::vector<XReal>& p,
                              std::vector<XReal>& dp);

}  // namespace casimir

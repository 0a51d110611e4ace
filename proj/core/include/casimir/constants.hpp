#pragma once

#include <array>

namespace casimir {

/// CODATA 2018 values, pinned for reproducibility. Everything downstream is
/// formulated in dimensionless groups, so these only touch final SI output.
struct PhysicalConstants {
    double hbar;         // J s
    double c;            // m/s
    double hbar_c;       // J m
    double ev_to_joule;  // J/eV
};

inline constexpr PhysicalConstants codata2018{
    1.054571817e-34,
    299792458.0,
    1.054571817e-34 * 299792458.0,
    1.602176634e-19,
};

namespace constants {
inline constexpr double hbar = codata2018.hbar;
inline constexpr double c = codata2018.c;
inline constexpr double hbar_c = codata2018.hbar_c;
inline constexpr double ev = codata2018.ev_to_joule;
}  // namespace constants

/// E [eV] -> angular frequency [rad/s]. Throws std::domain_error for E < 0.
double ev_to_angular_frequency(double energy_ev);

/// The dimensionless groups the reduced formulas run on. Index 0 is the
/// sphere medium, index 1 the plate medium.
struct DimensionlessGroups {
    double e;                         // d/R
    std::array<double, 2> omega_d;    // omega_p d / c
    std::array<double, 2> gamma_d;    // gamma d / c
    std::array<double, 2> a;          // 1/omega_d (0 when omega_d == 0)
    double xi_scale;                  // c/d [rad/s]; xi = xi_scale * t * sqrt(1-tau^2)
};

DimensionlessGroups dimensionless_groups(double radius, double gap,
                                         std::array<double, 2> omega_p,
                                         std::array<double, 2> gamma);

}  // namespace casimir

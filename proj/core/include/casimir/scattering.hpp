#pragma once

#include <array>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/geometry.hpp"
#include "casimir/types.hpp"

namespace casimir {

/// Truncation and quadrature budget for the exact determinant evaluation.
/// l_max = 0 picks the heuristic ceil(8 R/d) capped at 120.
struct TruncationSpec {
    int l_max = 0;
    int xi_nodes = 48;
    int theta_nodes = 40;
    double tolerance = 1e-6;
    int max_xi_refinements = 3;
    int jobs = 0;  // 0 -> hardware concurrency
};

/// Mie coefficients T_l^TE/TM at imaginary frequency, omega = kappa R.
/// eps1 = +inf selects the perfect-conductor limiting ratios.
PolarizationPair mie_coefficients(int l, double omega, double eps1);

/// One 2x2 block of the round-trip matrix, rows/cols = (TE, TM).
using Block2x2 = std::array<std::array<double, 2>, 2>;

/// M_{lm,l'm} evaluated by the theta quadrature, all-real formulation (the
/// (-1)^m i^m phases of the two Legendre factors cancel against the printed
/// (-1)^m prefactor; see the module notes in scattering.cpp).
Block2x2 matrix_element(int l, int lp, int m, double kappa_L, double eps1, double eps2,
                        double omega, int theta_nodes = 40);

/// Exact Casimir interaction energy [J] via xi-integrated log-determinants of
/// the truncated multipole matrix. Practical for d/R > ~0.05.
double exact_energy(const DielectricModel& sphere, const DielectricModel& plate,
                    const Geometry& geom, const TruncationSpec& trunc = {});

namespace detail {
/// log det(1 - M) for a dense row-major matrix; throws AssemblyError when the
/// determinant is non-positive or an entry is non-finite.
double logdet_one_minus(std::vector<double> m, int dim);
}  // namespace detail

}  // namespace casimir

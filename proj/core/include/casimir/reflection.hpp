#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/types.hpp"

namespace casimir {

/// Plate-side closed forms: the reflection value at the saddle and its two
/// Taylor coefficients in the shifted rapidity.
struct PlateFactors {
    PolarizationPair t0;  // T~0
    PolarizationPair k1;  // K1
    PolarizationPair k2;  // K2
};

/// Sphere-side closed forms from the Debye-expanded Mie coefficients.
struct SphereFactors {
    PolarizationPair t0;  // T0
    PolarizationPair w1;  // W1
    PolarizationPair w2;  // W2
    PolarizationPair y2;  // Y2
};

/// eps2 >= 1 (or +inf for a perfect conductor), tau strictly inside (0, 1).
PlateFactors plate_factors(double eps2, double tau);
SphereFactors sphere_factors(double eps1, double tau);

/// Engine-facing overloads with the fused p = eps(1-tau^2)+tau^2 and the
/// exact 1-tau^2 precomputed (consistent with the value eps was built from,
/// which matters at quadrature nodes clustered hard against tau = 1).
PlateFactors plate_factors(const ReducedPermittivity& rp, double tau, double omt2, bool perfect);
SphereFactors sphere_factors(const ReducedPermittivity& rp, double tau, double omt2, bool perfect);

/// Lifshitz Fresnel coefficients in physical variables (q >= kappa >= 0).
PolarizationPair fresnel(double eps, double kappa, double q);

/// Fresnel coefficients in the reduced tau variable. Identical closed form to
/// plate_factors().t0 and sphere_factors().t0; this equality is what makes the
/// leading term reproduce the proximity force approximation.
PolarizationPair fresnel_reduced(double eps, double tau);

}  // namespace casimir

#pragma once

#include <stdexcept>

namespace casimir {

/// Sphere of radius R at gap d from a plate; L = d + R.
struct Geometry {
    double R;
    double d;
    double e;  // d/R
    double L;  // d + R

    Geometry(double radius, double gap) : R(radius), d(gap), e(gap / radius), L(gap + radius) {
        if (!(radius > 0.0) || !(gap > 0.0))
            throw std::domain_error("Geometry: radius and gap must be positive");
    }
};

}  // namespace casimir

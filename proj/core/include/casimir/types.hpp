#pragma once

namespace casimir {

/// Which derivative of the interaction energy is being expanded.
enum class Kind { Energy, Force, Gradient };

/// One value per polarization. * = TE or TM throughout.
struct PolarizationPair {
    double te = 0.0;
    double tm = 0.0;
};

}  // namespace casimir

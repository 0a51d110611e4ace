#include "casimir/constants.hpp"

#include <stdexcept>

namespace casimir {

double ev_to_angular_frequency(double energy_ev) {
    if (energy_ev < 0.0) throw std::domain_error("ev_to_angular_frequency: negative energy");
    return energy_ev * constants::ev / constants::hbar;
}

DimensionlessGroups dimensionless_groups(double radius, double gap,
                                         std::array<double, 2> omega_p,
                                         std::array<double, 2> gamma) {
    if (!(radius > 0.0) || !(gap > 0.0))
        throw std::domain_error("dimensionless_groups: radius and gap must be positive");
    for (int i = 0; i < 2; ++i) {
        if (omega_p[i] < 0.0 || gamma[i] < 0.0)
            throw std::domain_error("dimensionless_groups: negative frequency parameter");
    }
    DimensionlessGroups g;
    g.e = gap / radius;
    for (int i = 0; i < 2; ++i) {
        g.omega_d[i] = omega_p[i] * gap / constants::c;
        g.gamma_d[i] = gamma[i] * gap / constants::c;
        g.a[i] = g.omega_d[i] > 0.0 ? 1.0 / g.omega_d[i] : 0.0;
    }
    g.xi_scale = constants::c / gap;
    return g;
}

}  // namespace casimir

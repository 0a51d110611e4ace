#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/geometry.hpp"

namespace casimir {

struct LifshitzSettings {
    int w_nodes = 64;   // kappa/q ratio integral
    int q_nodes = 48;   // Gauss-Laguerre under e^{-2q(s+1)u}
    int u_nodes = 64;   // PFA route A outer integral
    int s_max = 2000;
    double rel_tol = 1e-9;
    int max_depth = 12;  // adaptive bisection for route A
};

enum class PfaRoute { LifshitzIntegral, ReducedDoubleIntegral };

/// Parallel-plate Casimir energy density at separation d [J/m^2], negative.
double lifshitz_density(const DielectricModel& m1, const DielectricModel& m2, double d,
                        const LifshitzSettings& settings = {});

/// Sphere-plate PFA energy [J]. Route LifshitzIntegral evaluates
/// 2 pi R Int_d^inf E_par(u) du; route ReducedDoubleIntegral evaluates the
/// (tau, l) double-integral form. The two are related by an exact change of
/// variables and must agree to quadrature accuracy.
double pfa_energy(const DielectricModel& m1, const DielectricModel& m2, const Geometry& geom,
                  PfaRoute route = PfaRoute::ReducedDoubleIntegral,
                  const LifshitzSettings& settings = {});

}  // namespace casimir

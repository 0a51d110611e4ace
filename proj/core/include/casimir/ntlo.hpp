#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/geometry.hpp"
#include "casimir/types.hpp"

namespace casimir {

/// Quadrature policy for the (tau, t) double integrals. tau = sin(phi) with
/// Gauss-Legendre in an endpoint-refined phi variable; t under the explicit
/// weight e^{-2t(s+1)} with Gauss-Laguerre nodes rescaled per series index
/// through t = y^2/(2(s+1)). The s-sum is closed with a verified integral
/// tail (the NTLO terms only decay like 1/(s+1)^2, so bare truncation at any
/// affordable cap would dominate the error budget).
struct EngineSettings {
    int phi_nodes = 48;
    int t_nodes = 80;
    int s_max = 2000;
    double rel_tol_leading = 1e-7;
    double rel_tol_ntlo = 1e-6;
    bool richardson = true;    // verify with 1.5x nodes, escalate on failure
    int max_refinements = 3;
    bool tail = true;          // s-series tail extrapolation
};

struct EngineDiagnostics {
    int s_reached = 0;
    int phi_nodes = 0;
    int t_nodes = 0;
    double err_leading = 0.0;  // relative estimates
    double err_ntlo = 0.0;
};

/// Leading and next-to-leading terms in SI units plus the figure-axis ratios.
/// theta = (R/d) ntlo/leading; normalized_* divide by the PC-PFA reference.
struct ExpansionResult {
    Kind kind = Kind::Energy;
    double leading = 0.0;
    double ntlo = 0.0;
    double theta = 0.0;
    double normalized_leading = 0.0;
    double normalized_sum = 0.0;
    EngineDiagnostics diag;
};

struct ExpansionSet {
    ExpansionResult energy;
    ExpansionResult force;
    ExpansionResult gradient;

    const ExpansionResult& of(Kind k) const {
        switch (k) {
            case Kind::Force: return force;
            case Kind::Gradient: return gradient;
            default: return energy;
        }
    }
};

struct ThetaRatios {
    double theta_e = 0.0;
    double theta_f = 0.0;
    double theta_g = 0.0;
};

/// The polynomial coefficient bundle of the NTLO integrand at one evaluation
/// point. kind selects the a/c family (script A, C_V, C_J vs their tilde/hat
/// variants); the D family and script B are shared across kinds.
struct ScriptCoefficients {
    double a_term = 0.0;
    double b_term = 0.0;
    double c_v = 0.0;
    double c_j = 0.0;
    double d_vv = 0.0;
    double d_jj = 0.0;
    double d_vj = 0.0;
    double d_v = 0.0;
    double d_j = 0.0;
};

ScriptCoefficients script_coefficients(Kind kind, int s, double tau, double l, double e);

/// (a^n - b^n)/(a - b) for a, b >= 0, evaluated without cancellation for any
/// separation (continuously reduces to the derivative limit n a^{n-1}).
double pow_diff_quotient(double a, double b, int n);

/// The polarization-mixing cross term X of the NTLO integrand.
double x_factor(const PolarizationPair& t0_sphere, const PolarizationPair& t0_plate, int s);

/// Reduced leading-order integrand:
///   (tau/sqrt(1-tau^2)) t e^{-2t(s+1)} sum_* [T0* T~0*]^{s+1}
double leading_integrand(int s, double tau, double t, double eps1, double eps2);

/// PC-PFA reference value for the requested kind (energy J, force N,
/// gradient N/m).
double pfa_pc_reference(Kind kind, const Geometry& geom);

ExpansionResult compute(Kind kind, const DielectricModel& sphere, const DielectricModel& plate,
                        const Geometry& geom, const EngineSettings& settings = {});

/// All three kinds in one pass over the quadrature grid (the factor
/// evaluations dominate and are shared).
ExpansionSet compute_all(const DielectricModel& sphere, const DielectricModel& plate,
                         const Geometry& geom, const EngineSettings& settings = {});

ThetaRatios theta_ratios(const DielectricModel& sphere, const DielectricModel& plate,
                         const Geometry& geom, const EngineSettings& settings = {});

}  // namespace casimir

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "casimir/constants.hpp"

namespace casimir {

enum class MaterialKind { Vacuum, PerfectConductor, Plasma, Drude, Tabulated };

/// Permittivity eps(i xi) on the imaginary frequency axis. Immutable;
/// evaluations are pure and freely parallelizable.
///
/// The perfect conductor is a symbolic marker: permittivity() reports +inf
/// and downstream coefficient code switches to the analytic eps->inf limits
/// instead of pushing a huge float through the closed forms.
class DielectricModel {
public:
    static DielectricModel vacuum();
    static DielectricModel perfect_conductor();
    static DielectricModel plasma(double omega_p);
    static DielectricModel drude(double omega_p, double gamma);
    /// Samples (xi [rad/s], eps), strictly increasing in xi, eps >= 1.
    /// Interpolation is log-log linear; extrapolation throws.
    static DielectricModel tabulated(std::vector<std::pair<double, double>> samples);
    /// Two-column text file (xi, eps), '#' comments.
    static DielectricModel from_file(const std::string& path);

    MaterialKind kind() const { return kind_; }
    bool perfect() const { return kind_ == MaterialKind::PerfectConductor; }
    double omega_p() const { return omega_p_; }
    double relaxation() const { return gamma_; }

    /// eps(i xi), xi > 0 in rad/s. Plasma/Drude throw for xi <= 0 (pole);
    /// use permittivity_zero_limit() for the documented xi -> 0+ limit.
    double permittivity(double xi) const;
    double permittivity_zero_limit() const;

    std::string label() const;

private:
    DielectricModel(MaterialKind k, double wp, double g) : kind_(k), omega_p_(wp), gamma_(g) {}

    MaterialKind kind_;
    double omega_p_ = 0.0;
    double gamma_ = 0.0;
    std::vector<double> log_xi_;
    std::vector<double> log_eps_;
};

/// eps and the fused combination p = eps (1 - tau^2) + tau^2 that all the
/// closed-form coefficients actually consume. For plasma/Drude p is assembled
/// from (eps - 1)(1 - tau^2) directly, which stays exact as tau -> 1 where
/// eps itself diverges.
struct ReducedPermittivity {
    double eps;
    double p;
};

/// Per-medium evaluator in the reduced coordinates (t, tau), where
/// xi = (c/d) t sqrt(1 - tau^2).
class ReducedDielectric {
public:
    ReducedDielectric(const DielectricModel& model, double gap);

    bool perfect() const { return model_->perfect(); }
    double omega_d() const { return omega_d_; }
    double gamma_d() const { return gamma_d_; }

    ReducedPermittivity eval(double t, double tau) const;
    /// Overload with 1 - tau^2 supplied by the caller: quadrature grids that
    /// cluster hard at tau -> 1 carry cos^2(phi) to full precision even where
    /// tau itself rounds to 1.
    ReducedPermittivity eval(double t, double tau, double one_m_tau2) const;

private:
    const DielectricModel* model_;
    double omega_d_;
    double gamma_d_;
    double xi_scale_;  // c/d
};

/// Reduced-coordinate permittivity; the groups supply the gap scale. Agrees
/// with permittivity() at the mapped xi = (c/d) t sqrt(1-tau^2).
double permittivity_reduced(const DielectricModel& model, double t, double tau,
                            const DimensionlessGroups& groups);

}  // namespace casimir

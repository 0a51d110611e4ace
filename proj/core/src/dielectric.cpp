#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "casimir/errors.hpp"

namespace casimir {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DielectricModel DielectricModel::vacuum() {
    return DielectricModel(MaterialKind::Vacuum, 0.0, 0.0);
}

DielectricModel DielectricModel::perfect_conductor() {
    return DielectricModel(MaterialKind::PerfectConductor, 0.0, 0.0);
}

DielectricModel DielectricModel::plasma(double omega_p) {
    if (!(omega_p > 0.0)) throw std::domain_error("plasma: omega_p must be positive");
    return DielectricModel(MaterialKind::Plasma, omega_p, 0.0);
}

DielectricModel DielectricModel::drude(double omega_p, double gamma) {
    if (!(omega_p > 0.0)) throw std::domain_error("drude: omega_p must be positive");
    if (gamma < 0.0) throw std::domain_error("drude: gamma must be >= 0");
    return DielectricModel(MaterialKind::Drude, omega_p, gamma);
}

DielectricModel DielectricModel::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw DataError("tabulated: need at least two samples");
    DielectricModel m(MaterialKind::Tabulated, 0.0, 0.0);
    m.log_xi_.reserve(samples.size());
    m.log_eps_.reserve(samples.size());
    double prev = 0.0;
    for (size_t n = 0; n < samples.size(); ++n) {
        auto [xi, eps] = samples[n];
        if (!(xi > 0.0)) throw DataError("tabulated: xi values must be positive");
        if (n > 0 && !(xi > prev)) throw DataError("tabulated: xi column must be strictly increasing");
        if (!(eps >= 1.0)) throw DataError("tabulated: eps must be >= 1 on the imaginary axis");
        m.log_xi_.push_back(std::log(xi));
        m.log_eps_.push_back(std::log(eps));
        prev = xi;
    }
    return m;
}

DielectricModel DielectricModel::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open permittivity table: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double xi, eps;
        if (!(ss >> xi)) continue;  // blank / comment-only line
        if (!(ss >> eps)) {
            throw DataError(path + ":" + std::to_string(lineno) + ": expected two columns");
        }
        samples.emplace_back(xi, eps);
    }
    try {
        return tabulated(std::move(samples));
    } catch (const DataError& err) {
        throw DataError(path + ": " + err.what());
    }
}

double DielectricModel::permittivity(double xi) const {
    switch (kind_) {
        case MaterialKind::Vacuum:
            return 1.0;
        case MaterialKind::PerfectConductor:
            return kInf;
        case MaterialKind::Plasma:
            if (!(xi > 0.0)) throw std::domain_error("plasma permittivity: xi must be > 0");
            return 1.0 + (omega_p_ / xi) * (omega_p_ / xi);
        case MaterialKind::Drude:
            if (!(xi > 0.0)) throw std::domain_error("drude permittivity: xi must be > 0");
            return 1.0 + omega_p_ * omega_p_ / (xi * (xi + gamma_));
        case MaterialKind::Tabulated: {
            if (!(xi > 0.0)) throw std::domain_error("tabulated permittivity: xi must be > 0");
            const double lx = std::log(xi);
            if (lx < log_xi_.front() || lx > log_xi_.back())
                throw std::domain_error("tabulated permittivity: xi outside table range");
            auto hi = std::upper_bound(log_xi_.begin(), log_xi_.end(), lx);
            if (hi == log_xi_.end()) --hi;
            const size_t i = static_cast<size_t>(hi - log_xi_.begin());
            const size_t lo = i > 0 ? i - 1 : 0;
            const double t = (lx - log_xi_[lo]) / (log_xi_[lo + 1] - log_xi_[lo]);
            return std::exp(log_eps_[lo] + t * (log_eps_[lo + 1] - log_eps_[lo]));
        }
    }
    return 1.0;
}

double DielectricModel::permittivity_zero_limit() const {
    switch (kind_) {
        case MaterialKind::Vacuum:
            return 1.0;
        case MaterialKind::Tabulated:
            throw std::domain_error("tabulated permittivity: no xi -> 0 limit (extrapolation)");
        default:
            // plasma and Drude both diverge; PC is infinite by definition
            return kInf;
    }
}

std::string DielectricModel::label() const {
    std::ostringstream ss;
    switch (kind_) {
        case MaterialKind::Vacuum: return "vacuum";
        case MaterialKind::PerfectConductor: return "pc";
        case MaterialKind::Plasma:
            ss << "plasma:" << omega_p_ << "rad";
            return ss.str();
        case MaterialKind::Drude:
            ss << "drude:" << omega_p_ << "rad," << gamma_ << "rad";
            return ss.str();
        case MaterialKind::Tabulated:
            ss << "table[" << log_xi_.size() << "]";
            return ss.str();
    }
    return "?";
}

ReducedDielectric::ReducedDielectric(const DielectricModel& model, double gap)
    : model_(&model),
      omega_d_(model.omega_p() * gap / constants::c),
      gamma_d_(model.relaxation() * gap / constants::c),
      xi_scale_(constants::c / gap) {
    if (!(gap > 0.0)) throw std::domain_error("ReducedDielectric: gap must be positive");
}

ReducedPermittivity ReducedDielectric::eval(double t, double tau) const {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::domain_error("permittivity_reduced: tau must be inside (0,1)");
    return eval(t, tau, (1.0 - tau) * (1.0 + tau));
}

ReducedPermittivity ReducedDielectric::eval(double t, double tau, double one_m_t2) const {
    if (!(t > 0.0)) throw std::domain_error("permittivity_reduced: t must be > 0");
    if (!(tau > 0.0) || !(one_m_t2 > 0.0))
        throw std::domain_error("permittivity_reduced: tau must be inside (0,1)");
    switch (model_->kind()) {
        case MaterialKind::Vacuum:
            return {1.0, 1.0};
        case MaterialKind::PerfectConductor:
            return {kInf, kInf};
        case MaterialKind::Plasma: {
            // chi = (eps - 1)(1 - tau^2) = omega_d^2 / t^2 exactly; no inf*0
            // at the tau -> 1 endpoint this way.
            const double chi = (omega_d_ / t) * (omega_d_ / t);
            return {1.0 + chi / one_m_t2, 1.0 + chi};
        }
        case MaterialKind::Drude: {
            const double tw = t * std::sqrt(one_m_t2);
            const double chi = omega_d_ * omega_d_ / (t * t * (1.0 + gamma_d_ / tw));
            return {1.0 + chi / one_m_t2, 1.0 + chi};
        }
        case MaterialKind::Tabulated: {
            const double eps = model_->permittivity(xi_scale_ * t * std::sqrt(one_m_t2));
            return {eps, 1.0 + (eps - 1.0) * one_m_t2};
        }
    }
    return {1.0, 1.0};
}

double permittivity_reduced(const DielectricModel& model, double t, double tau,
                            const DimensionlessGroups& groups) {
    ReducedDielectric red(model, constants::c / groups.xi_scale);
    return red.eval(t, tau).eps;
}

}  // namespace casimir

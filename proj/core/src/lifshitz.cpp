#include "casimir/lifshitz.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

struct Accum {
    double s = 0.0, comp = 0.0;
    void add(double v) {
        const double t = s + v;
        comp += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    double total() const { return s + comp; }
};

double zeta_tail(int p, int n) {
    const double N = n;
    return std::pow(N, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(N, -p) +
           p / 12.0 * std::pow(N, -p - 1.0) -
           p * (p + 1) * (p + 2) / 720.0 * std::pow(N, -p - 3.0);
}

double tail_estimate(const std::array<double, 3>& t, int u_last) {
    const double u0 = u_last - 2, u1 = u_last - 1, u2 = u_last;
    const double z0 = 1.0 / u0, z1 = 1.0 / u1, z2 = 1.0 / u2;
    const double g0 = t[0] * u0 * u0, g1 = t[1] * u1 * u1, g2 = t[2] * u2 * u2;
    const double d0 = (z0 - z1) * (z0 - z2);
    const double d1 = (z1 - z0) * (z1 - z2);
    const double d2 = (z2 - z0) * (z2 - z1);
    const double A = g0 * z1 * z2 / d0 + g1 * z0 * z2 / d1 + g2 * z0 * z1 / d2;
    const double B = -(g0 * (z1 + z2) / d0 + g1 * (z0 + z2) / d1 + g2 * (z0 + z1) / d2);
    const double C = g0 / d0 + g1 / d1 + g2 / d2;
    if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C)) return 0.0;
    return A * zeta_tail(2, u_last) + B * zeta_tail(3, u_last) + C * zeta_tail(4, u_last);
}

// Shared s-series driver: term_of(s) is summed with the printed stopping rule
// (three consecutive terms below rel_tol of the partial sum) plus a power-law
// tail estimate so tolerances below the bare-truncation floor stay reachable.
double s_series(const std::function<double(int)>& term_of, int s_max, double rel_tol,
                const char* what) {
    Accum sum;
    std::array<double, 3> last{};
    double tail = 0.0, tail_prev = 0.0;
    int streak = 0;
    for (int s = 0; s <= s_max; ++s) {
        const double raw = term_of(s);
        sum.add(raw);
        last[0] = last[1];
        last[1] = last[2];
        last[2] = raw;
        if (s >= 4) {
            tail_prev = tail;
            tail = tail_estimate(last, s + 1);
            const double total = sum.total() + tail;
            const double change = std::fabs(raw + tail - tail_prev);
            if (change <= 0.25 * rel_tol * std::max(std::fabs(total), 1e-305)) {
                if (++streak >= 3) return total;
            } else {
                streak = 0;
            }
        }
    }
    throw ConvergenceError(std::string(what) + ": s-series cap reached before tolerance",
                           sum.total() + tail, std::fabs(tail - tail_prev));
}

// Adaptive bisection on top of a fixed Gauss-Legendre panel rule.
double adaptive_gl(const std::function<double(double)>& f, double a, double b, int nodes,
                   double rel_tol, int depth, double scale) {
    const auto whole = quadrature::gauss_legendre_on(nodes, a, b);
    double i1 = 0.0;
    for (int k = 0; k < nodes; ++k) i1 += whole.w[k] * f(whole.x[k]);
    const double mid = 0.5 * (a + b);
    const auto left = quadrature::gauss_legendre_on(nodes, a, mid);
    const auto right = quadrature::gauss_legendre_on(nodes, mid, b);
    double i2 = 0.0;
    for (int k = 0; k < nodes; ++k) i2 += left.w[k] * f(left.x[k]) + right.w[k] * f(right.x[k]);
    const double ref = std::max({std::fabs(i2), scale, 1e-305});
    if (std::fabs(i1 - i2) <= rel_tol * ref) return i2;
    if (depth <= 0)
        throw ConvergenceError("pfa_energy: adaptive u-integral exceeded bisection depth", i2,
                               std::fabs(i1 - i2));
    const double sl = std::max(std::fabs(i2), scale);
    return adaptive_gl(f, a, mid, nodes, rel_tol * 0.7071, depth - 1, sl) +
           adaptive_gl(f, mid, b, nodes, rel_tol * 0.7071, depth - 1, sl);
}

}  // namespace

double lifshitz_density(const DielectricModel& m1, const DielectricModel& m2, double d,
                        const LifshitzSettings& set) {
    if (!(d > 0.0)) throw std::domain_error("lifshitz_density: d must be > 0");
    if (m1.kind() == MaterialKind::Vacuum || m2.kind() == MaterialKind::Vacuum) return 0.0;

    const auto wrule = quadrature::gauss_legendre_on(set.w_nodes, 0.0, 1.0);
    const auto& qrule = quadrature::gauss_laguerre(set.q_nodes);

    auto term_of = [&](int s) {
        const double u = s + 1.0;
        const double qscale = 1.0 / (2.0 * u * d);
        Accum t;
        for (int j = 0; j < set.w_nodes; ++j) {
            const double w = wrule.x[j];  // kappa/q
            for (int i = 0; i < set.q_nodes; ++i) {
                const double q = qrule.x[i] * qscale;
                const double kappa = w * q;
                const double xi = constants::c * kappa;
                const double e1 = m1.permittivity(xi);
                const double e2 = m2.permittivity(xi);
                const PolarizationPair r1 = fresnel(e1, kappa, q);
                const PolarizationPair r2 = fresnel(e2, kappa, q);
                const double f =
                    std::pow(r1.te * r2.te, u) + std::pow(r1.tm * r2.tm, u);
                t.add(wrule.w[j] * qrule.w[i] * qrule.x[i] * qrule.x[i] * f);
            }
        }
        return t.total() * qscale * qscale * qscale / u;
    };

    const double series = s_series(term_of, set.s_max, set.rel_tol, "lifshitz_density");
    return -constants::hbar_c / (4.0 * pi * pi) * series;
}

namespace {

double pfa_reduced_route(const DielectricModel& m1, const DielectricModel& m2,
                         const Geometry& geom, const LifshitzSettings& set) {
    if (m1.kind() == MaterialKind::Vacuum || m2.kind() == MaterialKind::Vacuum) return 0.0;
    const auto phirule = quadrature::gauss_legendre_on(set.w_nodes, 0.0, 0.5 * pi);
    const auto& lrule = quadrature::gauss_laguerre(set.q_nodes);

    auto term_of = [&](int s) {
        const double u = s + 1.0;
        Accum t;
        for (int j = 0; j < set.w_nodes; ++j) {
            const double tau = std::sin(phirule.x[j]);
            const double lscale = tau / (2.0 * geom.e * u);
            // dtau/(tau sqrt(1-tau^2)) -> dphi/sin(phi); the l-integral carries
            // lscale^2, so the combined tau weight is w_phi * tau / (2eu)^2.
            const double wj = phirule.w[j] * lscale * lscale / tau;
            for (int i = 0; i < set.q_nodes; ++i) {
                const double l = lrule.x[i] * lscale;
                const double xi =
                    constants::c / geom.R * l * std::sqrt((1.0 - tau) * (1.0 + tau)) / tau;
                const double e1 = m1.permittivity(xi);
                const double e2 = m2.permittivity(xi);
                const PolarizationPair r1 = fresnel_reduced(e1, tau);
                const PolarizationPair r2 = fresnel_reduced(e2, tau);
                const double f = std::pow(r1.te * r2.te, u) + std::pow(r1.tm * r2.tm, u);
                t.add(wj * lrule.w[i] * lrule.x[i] * f);
            }
        }
        return t.total() / (u * u);
    };

    const double series = s_series(term_of, set.s_max, set.rel_tol, "pfa_energy");
    return -constants::hbar_c / (4.0 * pi * geom.R) * series;
}

}  // namespace

double pfa_energy(const DielectricModel& m1, const DielectricModel& m2, const Geometry& geom,
                  PfaRoute route, const LifshitzSettings& set) {
    if (route == PfaRoute::ReducedDoubleIntegral) return pfa_reduced_route(m1, m2, geom, set);

    if (m1.kind() == MaterialKind::Vacuum || m2.kind() == MaterialKind::Vacuum) return 0.0;
    // u = d (1+x)/(1-x) maps (d, inf) onto (-1, 1); the integrand decays
    // algebraically, which the rational map turns into a smooth endpoint.
    auto f = [&](double x) {
        const double u = geom.d * (1.0 + x) / (1.0 - x);
        const double jac = 2.0 * geom.d / ((1.0 - x) * (1.0 - x));
        return lifshitz_density(m1, m2, u, set) * jac;
    };
    const double integral =
        adaptive_gl(f, -1.0, 1.0, set.u_nodes, 10.0 * set.rel_tol, set.max_depth, 0.0);
    return 2.0 * pi * geom.R * integral;
}

}  // namespace casimir

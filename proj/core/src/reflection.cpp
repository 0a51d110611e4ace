#include "casimir/reflection.hpp"

#include <cmath>
#include <stdexcept>

// The closed forms below are transcribed verbatim; every cosmetic-looking
// regrouping has a regression test against the printed expression. sq denotes
// sqrt(eps (1-tau^2) + tau^2), p its square. Perfect-conductor inputs take the
// analytic eps -> inf limits instead (T = 1, K1 = W1 = 0, K2 = W2 = 0,
// Y2^TE = (3 - 5 tau^2)/12, Y2^TM = (7 tau^2 + 3)/12), each unit-tested
// against eps = 1e8 numeric evaluation.

namespace casimir {

namespace {

void check_tau(double tau) {
    if (!(tau > 0.0 && tau < 1.0))
        throw std::domain_error("reflection coefficients: tau must be strictly inside (0,1)");
}

void check_eps(double eps) {
    if (!(eps >= 1.0))  // +inf passes and is handled by the PC branch upstream
        throw std::domain_error("reflection coefficients: eps must be >= 1");
}

PlateFactors plate_pc(double tau) {
    PlateFactors f;
    f.t0 = {1.0, 1.0};
    f.k1 = {0.0, 0.0};
    f.k2 = {0.0, 0.0};
    (void)tau;
    return f;
}

SphereFactors sphere_pc(double tau) {
    SphereFactors f;
    f.t0 = {1.0, 1.0};
    f.w1 = {0.0, 0.0};
    f.w2 = {0.0, 0.0};
    f.y2 = {(3.0 - 5.0 * tau * tau) / 12.0, (7.0 * tau * tau + 3.0) / 12.0};
    return f;
}

PlateFactors plate_finite(double eps, double p, double tau, double omt2) {
    const double t2 = 1.0 - omt2;
    const double sq = std::sqrt(p);
    PlateFactors f;
    f.t0.te = (sq - 1.0) / (sq + 1.0);
    f.t0.tm = (eps - sq) / (eps + sq);
    f.k1.te = -2.0 * tau / sq;
    f.k2.te = -eps * omt2 / (p * sq) + 2.0 * t2 / p;
    f.k1.tm = 2.0 * eps * tau * omt2 / (sq * (eps + t2));
    const double esq1 = eps * sq + 1.0;
    const double sqe = sq + eps;
    f.k2.tm = eps * eps * omt2 * omt2 / (p * sq * (eps + t2))
              - t2 * (-eps * eps * t2 + eps * eps + eps + 1.0) / (p * (eps + t2))
              + t2 * esq1 * esq1 / (p * sqe * sqe);
    return f;
}

SphereFactors sphere_finite(double eps, double p, double tau, double omt2) {
    const double t2 = 1.0 - omt2;
    const double t4 = t2 * t2;
    const double t6 = t4 * t2;
    const double sq = std::sqrt(p);
    SphereFactors f;
    f.t0.te = (sq - 1.0) / (sq + 1.0);
    f.t0.tm = (eps - sq) / (eps + sq);
    f.w1.te = -4.0 * tau / sq;
    const double n1 = 8.0 * t2 + 4.0 * t4 + 4.0 * eps - 4.0 * eps * t4;
    const double sq1 = sq + 1.0;
    const double sqe = sq + eps;
    f.w2.te = n1 / (p * sq) + 4.0 * omt2 * omt2 * sqe * sqe / (t2 * p * sq1 * sq1)
              - 4.0 * omt2 * (t2 + eps) / (t2 * p);
    f.y2.te = -tau / sq
              - (8.0 * eps * t2 - 3.0 * eps - 5.0 * eps * t4 + 9.0 * t2 + 5.0 * t4) / (12.0 * p);
    f.w1.tm = 4.0 * eps * tau * omt2 / (sq * (t2 + eps));
    f.w2.tm = -eps * omt2 * n1 / ((eps + t2) * p * sq)
              + 4.0 * omt2 * omt2 * eps * eps * sq1 * sq1 / (t2 * p * sqe * sqe)
              - 4.0 * eps * eps * omt2 * omt2 * omt2 / (t2 * (t2 + eps) * p);
    f.y2.tm = eps * omt2 * tau / ((eps + t2) * sq)
              - (7.0 * eps * eps * t4 - 4.0 * eps * eps * t2 - 3.0 * eps * eps - 5.0 * eps * t6
                 + 13.0 * eps * t4 - 18.0 * eps * t2 + 5.0 * t6 - 3.0 * t4)
                    / (12.0 * (eps + t2) * p);
    return f;
}

}  // namespace

PlateFactors plate_factors(double eps2, double tau) {
    check_tau(tau);
    if (std::isinf(eps2)) return plate_pc(tau);
    check_eps(eps2);
    const double omt2 = (1.0 - tau) * (1.0 + tau);
    return plate_finite(eps2, 1.0 + (eps2 - 1.0) * omt2, tau, omt2);
}

SphereFactors sphere_factors(double eps1, double tau) {
    check_tau(tau);
    if (std::isinf(eps1)) return sphere_pc(tau);
    check_eps(eps1);
    const double omt2 = (1.0 - tau) * (1.0 + tau);
    return sphere_finite(eps1, 1.0 + (eps1 - 1.0) * omt2, tau, omt2);
}

PlateFactors plate_factors(const ReducedPermittivity& rp, double tau, double omt2, bool perfect) {
    if (perfect) return plate_pc(tau);
    return plate_finite(rp.eps, rp.p, tau, omt2);
}

SphereFactors sphere_factors(const ReducedPermittivity& rp, double tau, double omt2,
                             bool perfect) {
    if (perfect) return sphere_pc(tau);
    return sphere_finite(rp.eps, rp.p, tau, omt2);
}

PolarizationPair fresnel(double eps, double kappa, double q) {
    if (!(q >= kappa) || !(kappa >= 0.0) || q == 0.0)
        throw std::domain_error("fresnel: require q >= kappa >= 0, q > 0");
    if (std::isinf(eps)) return {1.0, 1.0};
    check_eps(eps);
    const double root = std::sqrt((eps - 1.0) * kappa * kappa + q * q);
    return {(root - q) / (root + q), (eps * q - root) / (eps * q + root)};
}

PolarizationPair fresnel_reduced(double eps, double tau) {
    check_tau(tau);
    if (std::isinf(eps)) return {1.0, 1.0};
    check_eps(eps);
    const double sq = std::sqrt(1.0 + (eps - 1.0) * (1.0 - tau) * (1.0 + tau));
    return {(sq - 1.0) / (sq + 1.0), (eps - sq) / (eps + sq)};
}

}  // namespace casimir

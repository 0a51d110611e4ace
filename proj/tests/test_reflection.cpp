#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/reflection.hpp"
#include "test_helpers.hpp"

using namespace casimir;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("reflection") {

TEST_CASE("plate factors at eps = 2, tau = 0.5 (frozen 50-digit evaluation)") {
    const PlateFactors f = plate_factors(2.0, 0.5);
    CHECK_REL(f.t0.te, 0.13899825191387921, 1e-14);
    CHECK_REL(f.t0.tm, 0.20377661238703059, 1e-14);
    CHECK_REL(f.k1.te, -0.75592894601845445, 1e-14);
    CHECK_REL(f.k1.tm, 0.50395263067896964, 1e-14);
    CHECK_REL(f.k2.te, -0.36222481087296096, 1e-14);
    CHECK_REL(f.k2.tm, 0.22297510425631168, 1e-14);
}

TEST_CASE("sphere factors at eps = 2 and 3 (frozen 50-digit evaluation)") {
    const SphereFactors f = sphere_factors(2.0, 0.5);
    CHECK_REL(f.t0.te, 0.13899825191387921, 1e-14);
    CHECK_REL(f.t0.tm, 0.20377661238703059, 1e-14);
    CHECK_REL(f.w1.te, -1.5118578920369089, 1e-14);
    CHECK_REL(f.w1.tm, 1.0079052613579393, 1e-14);
    CHECK_REL(f.w2.te, -0.69297029747338939, 1e-14);
    CHECK_REL(f.w2.tm, 0.38794778634627707, 1e-14);
    CHECK_REL(f.y2.te, -0.37498828253303675, 1e-14);
    CHECK_REL(f.y2.tm, 0.71526996613313561, 1e-14);

    const SphereFactors g = sphere_factors(3.0, 0.7);
    CHECK_REL(g.w2.te, 1.1879536759142502, 1e-14);
    CHECK_REL(g.w2.tm, -0.68291525091777966, 1e-14);
    CHECK_REL(g.y2.te, -0.68925920540361354, 1e-14);
    CHECK_REL(g.y2.tm, 0.78929797065927279, 1e-14);
}

TEST_CASE("vacuum is transparent") {
    for (double tau : {0.1, 0.5, 0.9}) {
        CHECK(plate_factors(1.0, tau).t0.te == 0.0);
        CHECK(plate_factors(1.0, tau).t0.tm == 0.0);
        CHECK(sphere_factors(1.0, tau).t0.te == 0.0);
        CHECK(sphere_factors(1.0, tau).t0.tm == 0.0);
    }
}

TEST_CASE("perfect-conductor analytic limits vs eps = 1e8") {
    for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const SphereFactors pc = sphere_factors(kInf, tau);
        const SphereFactors big = sphere_factors(1e8, tau);
        const PlateFactors pcP = plate_factors(kInf, tau);
        const PlateFactors bigP = plate_factors(1e8, tau);

        CHECK(pc.t0.te == 1.0);
        CHECK(pc.t0.tm == 1.0);
        CHECK(pc.w1.te == 0.0);
        CHECK(pcP.k1.tm == 0.0);
        CHECK(pc.w2.te == 0.0);
        CHECK(pcP.k2.tm == 0.0);
        CHECK_REL(pc.y2.te, (3.0 - 5.0 * tau * tau) / 12.0, 1e-15);
        CHECK_REL(pc.y2.tm, (7.0 * tau * tau + 3.0) / 12.0, 1e-15);

        // eps -> inf at O(1/sqrt(eps)): 1e8 gives ~1e-4 agreement
        CHECK(std::fabs(big.t0.te - 1.0) < 3e-4);
        CHECK(std::fabs(big.t0.tm - 1.0) < 3e-4);
        CHECK(std::fabs(big.w1.te) < 1e-3);
        CHECK(std::fabs(big.w1.tm) < 1e-3);
        CHECK(std::fabs(big.w2.te) < 2e-3);
        CHECK(std::fabs(big.w2.tm) < 2e-3);
        CHECK(std::fabs(bigP.k1.te) < 1e-3);
        CHECK(std::fabs(bigP.k2.te) < 1e-3);
        CHECK(std::fabs(bigP.k2.tm) < 1e-3);
        CHECK(std::fabs(big.y2.te - pc.y2.te) < 1e-3);
        CHECK(std::fabs(big.y2.tm - pc.y2.tm) < 1e-3);
    }
}

TEST_CASE("PC limit approach is monotone in eps") {
    for (double tau : {0.25, 0.6}) {
        double dev_t0 = 1.0, dev_k1 = 1.0, dev_w1 = 1.0;
        for (double eps : {1e2, 1e4, 1e6, 1e8}) {
            const SphereFactors f = sphere_factors(eps, tau);
            const PlateFactors p = plate_factors(eps, tau);
            CHECK(std::fabs(f.t0.te - 1.0) < dev_t0);
            dev_t0 = std::fabs(f.t0.te - 1.0);
            CHECK(std::fabs(p.k1.te) < dev_k1);
            dev_k1 = std::fabs(p.k1.te);
            CHECK(std::fabs(f.w1.tm) < dev_w1);
            dev_w1 = std::fabs(f.w1.tm);
        }
    }
}

TEST_CASE("fresnel (physical variables)") {
    CHECK(fresnel(1.0, 0.3, 1.0).te == 0.0);
    CHECK(fresnel(1.0, 0.3, 1.0).tm == 0.0);
    SUBCASE("kappa = 0: TE vanishes, TM = (eps-1)/(eps+1)") {
        const PolarizationPair r = fresnel(4.0, 0.0, 2.2);
        CHECK(r.te == doctest::Approx(0.0));
        CHECK_REL(r.tm, 0.6, 1e-15);
    }
    SUBCASE("perfect mirror") {
        const PolarizationPair r = fresnel(kInf, 0.5, 1.0);
        CHECK(r.te == 1.0);
        CHECK(r.tm == 1.0);
    }
    CHECK_THROWS_AS(fresnel(2.0, 1.5, 1.0), std::domain_error);  // q < kappa
    CHECK_THROWS_AS(fresnel(2.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("fresnel_reduced frozen values and limits") {
    // (3 - sqrt(2.92))/(3 + sqrt(2.92)), 50-digit evaluation
    CHECK_REL(fresnel_reduced(3.0, 0.2).tm, 0.27420978710838201, 1e-14);
    CHECK_REL(fresnel_reduced(3.0, 0.2).te, 0.26166588639218101, 1e-14);
    // eps -> 1+: both components vanish linearly in (eps - 1)
    const double d1 = fresnel_reduced(1.0 + 1e-6, 0.4).te;
    const double d2 = fresnel_reduced(1.0 + 2e-6, 0.4).te;
    CHECK_REL(d2 / d1, 2.0, 1e-4);
}

TEST_CASE("sphere/plate/Fresnel closed-form identity on a 100x100 grid") {
    for (int i = 1; i <= 100; ++i) {
        const double eps = 1.0 + 0.2 * i;
        for (int j = 1; j <= 100; ++j) {
            const double tau = j / 101.0;
            const PolarizationPair r = fresnel_reduced(eps, tau);
            const PlateFactors p = plate_factors(eps, tau);
            const SphereFactors s = sphere_factors(eps, tau);
            CHECK_REL(p.t0.te, r.te, 1e-14);
            CHECK_REL(p.t0.tm, r.tm, 1e-14);
            CHECK_REL(s.t0.te, r.te, 1e-14);
            CHECK_REL(s.t0.tm, r.tm, 1e-14);
        }
    }
}

TEST_CASE("bounds, signs and monotonicity on a grid") {
    for (int i = 0; i < 40; ++i) {
        const double tau = (i + 0.5) / 40.0;
        double prev_te = -1.0, prev_tm = -1.0;
        for (double eps : {1.0, 1.5, 2.5, 5.0, 20.0, 300.0}) {
            const SphereFactors s = sphere_factors(eps, tau);
            const PlateFactors p = plate_factors(eps, tau);
            CHECK(s.t0.te >= 0.0);
            CHECK(s.t0.te < 1.0);
            CHECK(s.t0.tm >= 0.0);
            CHECK(s.t0.tm < 1.0);
            CHECK(s.t0.te > prev_te);  // increasing in eps at fixed tau
            CHECK(s.t0.tm > prev_tm);
            prev_te = s.t0.te;
            prev_tm = s.t0.tm;
            CHECK(p.k1.te <= 0.0);
            CHECK(p.k1.tm >= 0.0);
            CHECK(s.w1.te <= 0.0);
            CHECK(s.w1.tm >= 0.0);
            // same parent function: W1 is twice K1 at equal eps
            CHECK_REL(s.w1.te, 2.0 * p.k1.te, 1e-14);
            CHECK_REL(s.w1.tm, 2.0 * p.k1.tm, 1e-14);
        }
    }
}

TEST_CASE("parent-function fit recovers K1, K2") {
    // T~(theta)/T~(0) = 1 + K1 theta + K2 theta^2 where T~ is the plate
    // reflection at rapidity theta0 + theta, sinh(theta0) = tau/sqrt(1-tau^2).
    auto parent = [](double eps, double tau, double th, bool tm) {
        const double th0 = std::asinh(tau / std::sqrt(1.0 - tau * tau));
        const double sh = std::sinh(th0 + th), ch = std::cosh(th0 + th);
        const double root = std::sqrt(eps + sh * sh);
        const double a = tm ? eps : 1.0;
        return (root - a * ch) / (root + a * ch);
    };
    for (double eps : {1.7, 2.0, 6.3}) {
        for (double tau : {0.2, 0.5, 0.8}) {
            const PlateFactors f = plate_factors(eps, tau);
            const double h = 1e-4;
            for (bool tm : {false, true}) {
                const double f0 = parent(eps, tau, 0.0, tm);
                const double fp = parent(eps, tau, h, tm);
                const double fm = parent(eps, tau, -h, tm);
                const double k1 = (fp - fm) / (2.0 * h) / f0;
                const double k2 = (fp + fm - 2.0 * f0) / (h * h) / f0 / 2.0;
                CHECK_REL(k1, tm ? f.k1.tm : f.k1.te, 1e-6);
                CHECK_REL(k2, tm ? f.k2.tm : f.k2.te, 2e-5);
            }
        }
    }
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(plate_factors(2.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(plate_factors(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sphere_factors(0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(fresnel_reduced(2.0, -0.1), std::domain_error);
}

}  // TEST_SUITE

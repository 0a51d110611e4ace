#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "test_helpers.hpp"

using namespace casimir;

TEST_SUITE("dielectric") {

TEST_CASE("permittivity closed forms") {
    const double xi = 3.7e14;
    CHECK(DielectricModel::vacuum().permittivity(xi) == 1.0);
    CHECK(std::isinf(DielectricModel::perfect_conductor().permittivity(xi)));
    CHECK(DielectricModel::plasma(xi).permittivity(xi) == doctest::Approx(2.0));
    CHECK(DielectricModel::drude(xi, xi).permittivity(xi) == doctest::Approx(1.5));
}

TEST_CASE("pole handling at xi <= 0") {
    auto p = DielectricModel::plasma(1e15);
    auto d = DielectricModel::drude(1e15, 1e13);
    CHECK_THROWS_AS(p.permittivity(0.0), std::domain_error);
    CHECK_THROWS_AS(d.permittivity(-1.0), std::domain_error);
    CHECK(std::isinf(p.permittivity_zero_limit()));
    CHECK(std::isinf(d.permittivity_zero_limit()));
    CHECK(DielectricModel::vacuum().permittivity_zero_limit() == 1.0);
}

TEST_CASE("reduced-coordinate forms") {
    const double wp = 1e15;
    SUBCASE("plasma omega_d = 1, t = 1, tau -> 0") {
        ReducedDielectric red(DielectricModel::plasma(wp), constants::c / wp);  // omega_d = 1
        CHECK(red.omega_d() == doctest::Approx(1.0));
        CHECK(red.eval(1.0, 1e-9).eps == doctest::Approx(2.0));
    }
    SUBCASE("plasma omega_d = 2, t = 1, tau = 0.6 -> 7.25") {
        ReducedDielectric red(DielectricModel::plasma(wp), 2.0 * constants::c / wp);
        CHECK(red.eval(1.0, 0.6).eps == doctest::Approx(1.0 + 4.0 / 0.64));
        CHECK(red.eval(1.0, 0.6).p == doctest::Approx(1.0 + 4.0));
    }
    SUBCASE("drude gamma_d = 0 degenerates to plasma") {
        const double d = 1e-6;
        ReducedDielectric pl(DielectricModel::plasma(wp), d);
        ReducedDielectric dr(DielectricModel::drude(wp, 0.0), d);
        for (double t : {0.01, 0.3, 2.0, 40.0})
            for (double tau : {0.01, 0.5, 0.99})
                CHECK(dr.eval(t, tau).eps == pl.eval(t, tau).eps);
    }
}

TEST_CASE("reduced/physical consistency at the mapped xi") {
    // 1000 random (t, tau, omega_d) triples, both plasma and Drude
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const double d = 3.3e-7;
    for (int i = 0; i < 1000; ++i) {
        const double t = std::pow(10.0, -2.0 + 4.0 * ud(rng));
        const double tau = 0.001 + 0.998 * ud(rng);
        const double omega_d = std::pow(10.0, -1.0 + 4.0 * ud(rng));
        const double wp = omega_d * constants::c / d;
        const double xi = constants::c / d * t * std::sqrt(1.0 - tau * tau);
        ReducedDielectric pl(DielectricModel::plasma(wp), d);
        CHECK_REL(pl.eval(t, tau).eps, DielectricModel::plasma(wp).permittivity(xi), 1e-12);
        ReducedDielectric dr(DielectricModel::drude(wp, 0.07 * wp), d);
        CHECK_REL(dr.eval(t, tau).eps, DielectricModel::drude(wp, 0.07 * wp).permittivity(xi),
                  1e-12);
    }
}

TEST_CASE("spec-shaped wrapper agrees") {
    const double wp = ev_to_angular_frequency(9.0);
    auto model = DielectricModel::plasma(wp);
    const auto groups = dimensionless_groups(1e-3, 1e-4, {wp, wp}, {0.0, 0.0});
    ReducedDielectric red(model, 1e-4);
    CHECK(permittivity_reduced(model, 0.7, 0.3, groups) == red.eval(0.7, 0.3).eps);
}

TEST_CASE("monotonicity in xi and Drude <= plasma") {
    const double wp = 1.4e16, gamma = 5.3e13;
    auto pl = DielectricModel::plasma(wp);
    auto dr = DielectricModel::drude(wp, gamma);
    double prev_p = std::numeric_limits<double>::infinity();
    double prev_d = std::numeric_limits<double>::infinity();
    for (double xi = 1e12; xi < 1e18; xi *= 1.37) {
        const double ep = pl.permittivity(xi);
        const double ed = dr.permittivity(xi);
        CHECK(ep < prev_p);
        CHECK(ed < prev_d);
        CHECK(ed <= ep);  // dissipation only lowers eps on the imaginary axis
        CHECK(ed >= 1.0);
        prev_p = ep;
        prev_d = ed;
    }
}

TEST_CASE("tabulated models") {
    // power law eps = 1 + (1e15/xi)^2 sampled on a log grid is reproduced
    // exactly by log-log interpolation only at the nodes; between nodes it is
    // the chord. Use an exact power law eps = C xi^-1 pinned >= 1.
    std::vector<std::pair<double, double>> samples;
    for (double xi = 1e12; xi <= 1.01e16; xi *= 2.0) samples.push_back({xi, 1e17 / xi});
    auto m = DielectricModel::tabulated(samples);
    CHECK_REL(m.permittivity(3.7e13), 1e17 / 3.7e13, 1e-12);  // pure power law: exact
    CHECK_REL(m.permittivity(1e12), 1e5, 1e-12);
    CHECK_THROWS_AS(m.permittivity(9e11), std::domain_error);   // extrapolation forbidden
    CHECK_THROWS_AS(m.permittivity(2e16), std::domain_error);
    CHECK_THROWS_AS(m.permittivity_zero_limit(), std::domain_error);

    CHECK_THROWS_AS(DielectricModel::tabulated({{1e12, 2.0}}), DataError);
    CHECK_THROWS_AS(DielectricModel::tabulated({{1e12, 2.0}, {1e12, 3.0}}), DataError);
    CHECK_THROWS_AS(DielectricModel::tabulated({{1e12, 2.0}, {1e13, 0.5}}), DataError);
}

TEST_CASE("table file loading") {
    testing::TempFile f(
        "# xi [rad/s]   eps\n"
        "1.0e12  100.0   # comment after data\n"
        "1.0e14  10.0\n"
        "\n"
        "1.0e16  1.5\n");
    auto m = DielectricModel::from_file(f.path());
    CHECK_REL(m.permittivity(1e14), 10.0, 1e-13);
    CHECK(m.kind() == MaterialKind::Tabulated);

    testing::TempFile bad("1e12\n");
    CHECK_THROWS_AS(DielectricModel::from_file(bad.path()), DataError);
    CHECK_THROWS_AS(DielectricModel::from_file("/nonexistent/file.dat"), DataError);
}

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS(DielectricModel::plasma(0.0), std::domain_error);
    CHECK_THROWS_AS(DielectricModel::plasma(-1e15), std::domain_error);
    CHECK_THROWS_AS(DielectricModel::drude(1e15, -1.0), std::domain_error);
    CHECK_NOTHROW(DielectricModel::drude(1e15, 0.0));
}

}  // TEST_SUITE

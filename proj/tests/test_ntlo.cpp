#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/ntlo.hpp"
#include "casimir/pc_series.hpp"
#include "test_helpers.hpp"

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;

DielectricModel gold_plasma() { return DielectricModel::plasma(ev_to_angular_frequency(9.0)); }
DielectricModel gold_drude() {
    return DielectricModel::drude(ev_to_angular_frequency(9.0), ev_to_angular_frequency(0.035));
}
DielectricModel plasma_with_omega_d(double omega_d, double d) {
    return DielectricModel::plasma(omega_d * constants::c / d);
}
}  // namespace

TEST_SUITE("ntlo") {

TEST_CASE("script coefficients: printed-polynomial spot values") {
    // frozen 50-digit evaluation at s = 1, tau = 0.3, l = 2.5, e = 0.01
    const ScriptCoefficients ce = script_coefficients(Kind::Energy, 1, 0.3, 2.5, 0.01);
    const ScriptCoefficients cf = script_coefficients(Kind::Force, 1, 0.3, 2.5, 0.01);
    const ScriptCoefficients cg = script_coefficients(Kind::Gradient, 1, 0.3, 2.5, 0.01);
    CHECK_REL(ce.a_term, -1.9083, 1e-12);
    CHECK_REL(cf.a_term, -1.8075, 1e-12);
    CHECK_REL(cg.a_term, -1.7013, 1e-12);
    CHECK_REL(ce.b_term, 0.30333333333333333, 1e-12);
    CHECK_REL(ce.c_v, 0.372, 1e-12);
    CHECK_REL(ce.c_j, 0.097, 1e-12);
    CHECK_REL(cf.c_v, 0.408, 1e-12);
    CHECK_REL(cf.c_j, 0.106, 1e-12);
    CHECK_REL(cg.c_v, 0.444, 1e-12);
    CHECK_REL(cg.c_j, 0.115, 1e-12);
    CHECK_REL(ce.d_vv, 0.03, 1e-12);
    CHECK(ce.d_jj == 0.0);  // (u^3 - 2u^2 - u + 2) has a root at u = 2
    CHECK_REL(ce.d_vj, 0.06, 1e-12);
    CHECK_REL(ce.d_v, 0.06, 1e-12);
    CHECK_REL(ce.d_j, 0.03, 1e-12);
    // the D family and script B are shared across kinds
    CHECK(cf.d_vv == ce.d_vv);
    CHECK(cg.d_j == ce.d_j);
    CHECK(cf.b_term == ce.b_term);
}

TEST_CASE("script coefficients: named spec examples") {
    CHECK_REL(script_coefficients(Kind::Energy, 0, 0.5, 2.0, 0.0).b_term, 0.375, 1e-14);
    CHECK(script_coefficients(Kind::Energy, 0, 0.5, 2.0, 0.0).d_vj == 0.0);
    CHECK_REL(script_coefficients(Kind::Energy, 1, 0.5, 1.0, 0.0).c_j, 0.25, 1e-14);
}

TEST_CASE("pow_diff_quotient") {
    CHECK(pow_diff_quotient(0.3, 0.7, 0) == 0.0);
    CHECK(pow_diff_quotient(0.3, 0.7, 1) == 1.0);
    CHECK_REL(pow_diff_quotient(0.5, 0.25, 3), (0.125 - 0.015625) / 0.25, 1e-14);
    CHECK_REL(pow_diff_quotient(0.5, 0.5, 4), 4.0 * 0.125, 1e-14);
    CHECK(pow_diff_quotient(0.0, 0.5, 3) == doctest::Approx(0.25));
    CHECK(pow_diff_quotient(0.5, 0.0, 3) == doctest::Approx(0.25));
    // near-equal arguments: smooth approach to the derivative limit
    for (int n : {2, 7, 50, 400}) {
        const double a = 0.8, b = 0.8 * (1.0 + 1e-9);
        CHECK_REL(pow_diff_quotient(a, b, n), n * std::pow(0.8, n - 1), 1e-6);
    }
    // long products stay bounded without overflow
    CHECK(std::isfinite(pow_diff_quotient(0.999999, 0.999998, 2000000)));
}

TEST_CASE("x_factor") {
    SUBCASE("PC limit: X = (s+1)(4s+2)") {
        const PolarizationPair one{1.0, 1.0};
        for (int s = 0; s <= 6; ++s)
            CHECK_REL(x_factor(one, one, s), (s + 1.0) * (4.0 * s + 2.0), 1e-13);
        // numerically split products reproduce the limit
        const PolarizationPair near{1.0, 1.0 + 1e-9};
        CHECK_REL(x_factor(near, one, 3), 4.0 * 14.0, 1e-6);
    }
    SUBCASE("vanishes when both TM factors vanish") {
        const PolarizationPair s1{0.7, 0.0};
        const PolarizationPair p1{0.4, 0.0};
        for (int s = 0; s <= 3; ++s) CHECK(x_factor(s1, p1, s) == 0.0);
    }
    SUBCASE("s = 0 reduces to the bare cross term") {
        // first quotient is 1, second contributes zero at s = 0, so
        // X = T0^TE T~0^TM + T0^TM T~0^TE for any factor pairs
        const PolarizationPair t0{0.62, 0.31};
        const PolarizationPair tp{0.55, 0.47};
        CHECK_REL(x_factor(t0, tp, 0), 0.62 * 0.47 + 0.31 * 0.55, 1e-14);
    }
}

TEST_CASE("leading integrand") {
    CHECK(leading_integrand(2, 0.5, 1.3, 1.0, 2.0) == 0.0);  // vacuum sphere
    CHECK(leading_integrand(2, 0.5, 1.3, 2.0, 1.0) == 0.0);  // vacuum plate
    // frozen: (0.5/sqrt(0.75)) e^{-2} (t0te^2 + t0tm^2) at eps1 = eps2 = 2
    CHECK_REL(leading_integrand(0, 0.5, 1.0, 2.0, 2.0), 0.0047542094930233362, 1e-13);
}

TEST_CASE("perfect conductor: closed forms and theta constants") {
    const Geometry g(1e-3, 1e-4);
    auto pc = DielectricModel::perfect_conductor();
    const ExpansionSet r = compute_all(pc, pc, g);
    const double hcr = constants::hbar_c * g.R;
    CHECK_REL(r.energy.leading, -pi * pi * pi * hcr / (720.0 * g.d * g.d), 1e-7);
    CHECK_REL(r.force.leading, -pi * pi * pi * hcr / (360.0 * std::pow(g.d, 3)), 1e-7);
    CHECK_REL(r.gradient.leading, pi * pi * pi * hcr / (120.0 * std::pow(g.d, 4)), 1e-7);
    CHECK(std::fabs(r.energy.theta - (1.0 / 3.0 - 20.0 / (pi * pi))) < 1e-6);
    CHECK(std::fabs(r.force.theta - (1.0 / 6.0 - 10.0 / (pi * pi))) < 1e-6);
    CHECK(std::fabs(r.gradient.theta - (1.0 / 9.0 - 20.0 / (3.0 * pi * pi))) < 1e-6);
    CHECK(r.energy.normalized_leading == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_REL(r.energy.normalized_sum, 1.0 + g.e * r.energy.theta, 1e-12);
    // signs: energy and force negative, gradient positive
    CHECK(r.energy.leading < 0.0);
    CHECK(r.force.leading < 0.0);
    CHECK(r.gradient.leading > 0.0);
}

TEST_CASE("theta ratios wrapper") {
    const Geometry g(1e-3, 1e-4);
    auto pc = DielectricModel::perfect_conductor();
    const ThetaRatios t = theta_ratios(pc, pc, g);
    CHECK(std::fabs(t.theta_e + 1.6930903395134221) < 1e-6);
    CHECK(std::fabs(t.theta_f + 0.84654516975671105) < 1e-6);
    CHECK(std::fabs(t.theta_g + 0.56436344650447403) < 1e-6);
}

TEST_CASE("vacuum sphere gives identically zero") {
    const Geometry g(1e-3, 1e-5);
    const ExpansionSet r = compute_all(DielectricModel::vacuum(), gold_plasma(), g);
    CHECK(r.energy.leading == 0.0);
    CHECK(r.energy.ntlo == 0.0);
    CHECK(r.energy.theta == 0.0);
}

TEST_CASE("exchange symmetry of the leading term; NTLO is asymmetric") {
    const Geometry g(1e-3, 4e-7);
    auto a = gold_plasma();
    auto b = DielectricModel::drude(ev_to_angular_frequency(4.0), ev_to_angular_frequency(0.4));
    EngineSettings set;
    set.rel_tol_leading = 1e-9;
    const ExpansionSet ab = compute_all(a, b, g, set);
    const ExpansionSet ba = compute_all(b, a, g, set);
    CHECK_REL(ab.energy.leading, ba.energy.leading, 1e-10);
    CHECK_REL(ab.force.leading, ba.force.leading, 1e-10);
    // the NTLO integrand weights sphere and plate factors differently
    CHECK(testing::rel_diff(ab.energy.ntlo, ba.energy.ntlo) > 1e-3);
}

TEST_CASE("finite-difference force and gradient consistency") {
    auto check_fd = [](const DielectricModel& m, double d) {
        const double h = d * 1e-3;
        EngineSettings set;
        set.rel_tol_leading = 1e-10;
        const ExpansionSet mid = compute_all(m, m, Geometry(1e-3, d), set);
        const ExpansionSet up = compute_all(m, m, Geometry(1e-3, d + h), set);
        const ExpansionSet dn = compute_all(m, m, Geometry(1e-3, d - h), set);
        const double fd_force = -(up.energy.leading - dn.energy.leading) / (2.0 * h);
        CHECK_REL(fd_force, mid.force.leading, 1e-4);
        const double fd_grad = (up.force.leading - dn.force.leading) / (2.0 * h);
        CHECK_REL(fd_grad, mid.gradient.leading, 1e-4);
    };
    check_fd(DielectricModel::perfect_conductor(), 1e-5);
    check_fd(gold_plasma(), 1e-6);

    SUBCASE("summed orders: F0+F1 vs -d(E0+E1)/dd over shrinking e") {
        auto m = gold_plasma();
        for (double e : {0.02, 0.01, 0.005}) {
            const double d = 1e-3 * e, h = d * 1e-3;
            EngineSettings set;
            set.rel_tol_leading = 1e-10;
            set.rel_tol_ntlo = 1e-7;
            const ExpansionSet mid = compute_all(m, m, Geometry(1e-3, d), set);
            const ExpansionSet up = compute_all(m, m, Geometry(1e-3, d + h), set);
            const ExpansionSet dn = compute_all(m, m, Geometry(1e-3, d - h), set);
            const double fd = -((up.energy.leading + up.energy.ntlo) -
                                (dn.energy.leading + dn.energy.ntlo)) /
                              (2.0 * h);
            CHECK_REL(fd, mid.force.leading + mid.force.ntlo, 1e-4);
        }
    }
}

TEST_CASE("theta converges monotonically to the PC constants in omega_d") {
    const double d = 1e-6;
    const Geometry g(1e-3, d);
    const double pc_e = 1.0 / 3.0 - 20.0 / (pi * pi);
    const double pc_f = 1.0 / 6.0 - 10.0 / (pi * pi);
    const double pc_g = 1.0 / 9.0 - 20.0 / (3.0 * pi * pi);
    double prev_e = 1e9, prev_f = 1e9, prev_g = 1e9;
    for (double omega_d : {10.0, 100.0, 1000.0, 10000.0}) {
        const ThetaRatios t = theta_ratios(plasma_with_omega_d(omega_d, d),
                                           plasma_with_omega_d(omega_d, d), g);
        CHECK(std::fabs(t.theta_e - pc_e) < prev_e);
        CHECK(std::fabs(t.theta_f - pc_f) < prev_f);
        CHECK(std::fabs(t.theta_g - pc_g) < prev_g);
        prev_e = std::fabs(t.theta_e - pc_e);
        prev_f = std::fabs(t.theta_f - pc_f);
        prev_g = std::fabs(t.theta_g - pc_g);
    }
}

TEST_CASE("quadrature self-consistency under doubled budgets") {
    const Geometry g(1e-3, 7e-7);
    EngineSettings base;
    base.richardson = false;
    EngineSettings doubled = base;
    doubled.phi_nodes *= 2;
    doubled.t_nodes *= 2;
    doubled.s_max *= 2;
    for (auto m : {gold_plasma(), gold_drude()}) {
        const ExpansionSet a = compute_all(m, m, g, base);
        const ExpansionSet b = compute_all(m, m, g, doubled);
        CHECK_REL(a.energy.leading, b.energy.leading, 3.0 * base.rel_tol_leading);
        CHECK_REL(a.force.leading, b.force.leading, 3.0 * base.rel_tol_leading);
        CHECK_REL(a.gradient.leading, b.gradient.leading, 3.0 * base.rel_tol_leading);
        CHECK_REL(a.energy.ntlo, b.energy.ntlo, 3.0 * base.rel_tol_ntlo);
        CHECK_REL(a.force.ntlo, b.force.ntlo, 3.0 * base.rel_tol_ntlo);
        CHECK_REL(a.gradient.ntlo, b.gradient.ntlo, 3.0 * base.rel_tol_ntlo);
    }
}

TEST_CASE("leading term agrees with the PC series through fifth order") {
    // engine normalized leading vs sum beta_{ij} a^i a^j: the difference is
    // the neglected i+j = 6 tail, O(a^6); log-log slope over omega_d in
    // {50, 100, 200} must come out >= 5
    const double d = 1e-7;
    const Geometry g(d / 1e-4, d);  // e = 1e-4
    EngineSettings set;
    set.richardson = false;
    set.phi_nodes = 96;
    set.t_nodes = 160;
    set.rel_tol_leading = 1e-13;
    set.rel_tol_ntlo = 1e-7;
    set.s_max = 20000;
    std::vector<double> avals, diffs;
    for (double omega_d : {50.0, 100.0, 200.0}) {
        auto m = plasma_with_omega_d(omega_d, d);
        const ExpansionSet r = compute_all(m, m, g, set);
        const double a = 1.0 / omega_d;
        const double series = pc_series::pc_series_eval(Kind::Energy, a, a, 0.0);
        avals.push_back(a);
        diffs.push_back(std::fabs(r.energy.normalized_leading - series));
    }
    const double slope =
        std::log(diffs.front() / diffs.back()) / std::log(avals.front() / avals.back());
    INFO("diffs ", diffs[0], " ", diffs[1], " ", diffs[2], " slope ", slope);
    CHECK(slope >= 5.0);
}

TEST_CASE("invalid budgets throw") {
    EngineSettings set;
    set.phi_nodes = 2;
    CHECK_THROWS_AS(
        compute_all(gold_plasma(), gold_plasma(), Geometry(1e-3, 1e-6), set),
        std::invalid_argument);
}

}  // TEST_SUITE

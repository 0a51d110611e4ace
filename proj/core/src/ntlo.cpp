#include "casimir/ntlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

// Neumaier-compensated accumulator; the six integrals sum ~1e6 terms and the
// PC-series recovery test needs them at close to machine precision.
struct Accum {
    double s = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = s + v;
        comp += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    double total() const { return s + comp; }
};

struct ScriptShared {
    double d_vv, d_jj, d_vj, d_v, d_j, b;
};

// The shared D family and script B (independent of the expansion kind).
ScriptShared script_shared(double u, double tau, double l) {
    ScriptShared c;
    const double u2 = u * u, u3 = u2 * u;
    c.d_vv = tau / (12.0 * l) * (u3 - 2.0 * u2 + 2.0 * u - 1.0);
    c.d_jj = tau / (48.0 * l) * (u3 - 2.0 * u2 - u + 2.0);
    c.d_vj = tau / (12.0 * l) * (u3 - u);
    c.d_v = tau / (6.0 * l) * (2.0 * u2 - 3.0 * u + 1.0);
    c.d_j = tau / (12.0 * l) * (u2 - 1.0);
    c.b = (1.0 - tau * tau) / (2.0 * l * tau * u);
    return c;
}

struct ScriptKind {
    double a, c_v, c_j;
};

ScriptKind script_kind(Kind kind, double u, double tau, double l, double e) {
    ScriptKind c;
    const double u2 = u * u, u3 = u2 * u;
    const double t2 = tau * tau, t3 = t2 * tau, t4 = t2 * t2;
    const double ee = e * e;
    switch (kind) {
        case Kind::Energy:
            c.a = ee * l * tau / 3.0 * (u3 + 2.0 * u) +
                  e / 3.0 * ((t2 - 2.0) * u2 - 3.0 * tau * u + 2.0 * t2 - 1.0) +
                  (t4 + t2 - 12.0) / (12.0 * l * tau) * u +
                  (1.0 + tau) * (1.0 - t2) / (2.0 * l * tau) -
                  tau * (1.0 - t2) / (3.0 * l) / u;
            c.c_v = -e * tau / 3.0 * (u3 + 2.0 * u) + (1.0 - t2) / (6.0 * l) * u2 +
                    tau / (2.0 * l) * u + (1.0 - 4.0 * t2) / (12.0 * l);
            c.c_j = -e * tau / 6.0 * (u3 - u) + (u2 - 1.0) / (12.0 * l);
            break;
        case Kind::Force:
            c.a = ee * l * tau / 3.0 * (u3 + 2.0 * u) -
                  e / 3.0 * (2.0 * u2 + 3.0 * tau * u + 1.0) +
                  (-t4 + 5.0 * t2 - 12.0) / (12.0 * l * tau) * u +
                  (1.0 + tau - t2) / (2.0 * l * tau) - tau / (6.0 * l) / u;
            c.c_v = -e * tau / 3.0 * (u3 + 2.0 * u) + u2 / (6.0 * l) + tau / (2.0 * l) * u +
                    1.0 / (12.0 * l);
            c.c_j = -e * tau / 6.0 * (u3 - u) + (1.0 + t2) / (12.0 * l) * (u2 - 1.0);
            break;
        case Kind::Gradient:
            c.a = ee * l * tau / 3.0 * (u3 + 2.0 * u) -
                  e / 3.0 * ((2.0 + t2) * u2 + 3.0 * tau * u + 1.0 + 2.0 * t2) +
                  (-t4 + 9.0 * t2 - 12.0) / (12.0 * l * tau) * u +
                  (1.0 + tau - t2 + t3) / (2.0 * l * tau);
            c.c_v = -e * tau / 3.0 * (u3 + 2.0 * u) + (1.0 + t2) / (6.0 * l) * u2 +
                    tau / (2.0 * l) * u + (1.0 + 4.0 * t2) / (12.0 * l);
            c.c_j = -e * tau / 6.0 * (u3 - u) + (1.0 + 2.0 * t2) / (12.0 * l) * (u2 - 1.0);
            break;
    }
    return c;
}

// (a^n - b^n)/(a - b) for a, b in [0, 1], evaluated without cancellation for
// any separation via hi^n (1 - (lo/hi)^n)/(hi - lo) with expm1. Real n: the
// series tail is evaluated at non-integer indices. Every factor stays in
// [0, 1], so the quotient is bounded by n without intermediate overflow.
double quot(double a, double b, double n, double an, double bn) {
    if (n == 0.0) return 0.0;
    if (a == b || n == 1.0) return n == 1.0 ? 1.0 : n * std::pow(a, n - 1.0);
    if (a == 0.0) return bn / b;
    if (b == 0.0) return an / a;
    double hi = a, lo = b, hin = an;
    if (hi < lo) {
        std::swap(hi, lo);
        hin = bn;
    }
    const double x = n * std::log1p((lo - hi) / hi);  // n ln(lo/hi) <= 0
    return hin * (-std::expm1(x)) / (hi - lo);
}

struct EngineOutputs {
    // index 0..2 = leading E/F/G, 3..5 = ntlo E/F/G (dimensionless integrals)
    std::array<double, 6> v{};
    std::array<double, 6> err{};
    int s_reached = 0;
};

struct NodeTables {
    std::vector<double> tau, omt2, mu;  // tau = sin(phi), omt2 = cos^2(phi)
};

// tau = sin(phi) removes the 1/sqrt(1-tau^2) endpoint singularity. The extra
// phi = (pi/2) sin(psi) map sharpens node clustering at tau -> 1 only: Drude
// materials develop a reflection boundary layer of width ~ t gamma_d /
// omega_d^2 there that plain Gauss-Legendre in phi underresolves. The tau -> 0
// end is left alone; the NTLO bracket cancels 1/tau pieces across terms and
// extra clustering there only amplifies the rounding residue. cos^2(phi) is
// carried separately (via pi/2 - phi in half-angle form) because tau itself
// rounds to 1 at the innermost nodes.
NodeTables phi_tables(int phi_nodes) {
    const auto rule = quadrature::gauss_legendre_on(phi_nodes, 0.0, 0.5 * pi);
    NodeTables t;
    t.tau.resize(phi_nodes);
    t.omt2.resize(phi_nodes);
    t.mu.resize(phi_nodes);
    for (int j = 0; j < phi_nodes; ++j) {
        const double psi = rule.x[j];
        const double half = std::sin(0.25 * pi - 0.5 * psi);
        const double delta = pi * half * half;  // pi/2 - phi, exact as psi -> pi/2
        const double cphi = std::sin(delta);
        t.tau[j] = std::min(std::cos(delta), 1.0 - 1e-16);
        t.omt2[j] = cphi * cphi;
        t.mu[j] = rule.w[j] * 0.5 * pi * std::cos(psi) * t.tau[j];
    }
    return t;
}

// The t-integral runs through t = y^2/(2u): Drude materials make the
// integrand analytic in sqrt(t) only (their reduced eps goes like 1/t at
// small t, so the coefficient square roots carry sqrt(t)), and the squared
// substitution restores spectral convergence. On the fixed Laguerre nodes
// this just reweights: dt e^{-2ut} -> (y/u) e^{y - y^2} [w_i e^{-y}].
struct TRule {
    std::vector<double> y2;  // y_i^2
    std::vector<double> w;   // w_i y_i e^{y_i - y_i^2}
};

TRule t_rule(int t_nodes) {
    const auto& lag = quadrature::gauss_laguerre(t_nodes);
    TRule r;
    r.y2.resize(t_nodes);
    r.w.resize(t_nodes);
    for (int i = 0; i < t_nodes; ++i) {
        const double y = lag.x[i];
        r.y2[i] = y * y;
        r.w[i] = lag.w[i] * y * std::exp(y - y * y);
    }
    return r;
}

struct SeriesGrid {
    NodeTables nt;
    TRule tr;
    const ReducedDielectric* sphere;
    const ReducedDielectric* plate;
    double e;
    int phi_nodes, t_nodes;
};

// The six series terms at (possibly non-integer) index u = s + 1. Everything
// is analytic in u, which the integral tail below relies on.
std::array<double, 6> terms_at(const SeriesGrid& g, double u) {
    const bool pc1 = g.sphere->perfect();
    const bool pc2 = g.plate->perfect();
    const double jac = 1.0 / (2.0 * u);
    std::array<Accum, 6> term;
    for (int j = 0; j < g.phi_nodes; ++j) {
        const double tau = g.nt.tau[j];
        const double omt2 = g.nt.omt2[j];
        for (int i = 0; i < g.t_nodes; ++i) {
            const double t = g.tr.y2[i] * jac;
            const double w = g.nt.mu[j] * g.tr.w[i] * 2.0 * jac;

            const ReducedPermittivity r1 =
                pc1 ? ReducedPermittivity{0, 0} : g.sphere->eval(t, tau, omt2);
            const ReducedPermittivity r2 =
                pc2 ? ReducedPermittivity{0, 0} : g.plate->eval(t, tau, omt2);
            const SphereFactors sf = sphere_factors(r1, tau, omt2, pc1);
            const PlateFactors pf = plate_factors(r2, tau, omt2, pc2);

            const double pte = sf.t0.te * pf.t0.te;
            const double ptm = sf.t0.tm * pf.t0.tm;
            const double powte = std::pow(pte, u);
            const double powtm = std::pow(ptm, u);
            const double f0 = powte + powtm;

            const double wt1 = w * t;
            const double wt2 = wt1 * t;
            const double wt3 = wt2 * t;
            term[0].add(wt1 * f0);
            term[1].add(wt2 * f0);
            term[2].add(wt3 * f0);

            // NTLO bracket, assembled whole: the script pieces are
            // individually singular as tau -> 0 but their sum is regular.
            const double l = t * tau / g.e;
            const ScriptShared sh = script_shared(u, tau, l);
            const double cross = sf.t0.te * pf.t0.tm + sf.t0.tm * pf.t0.te;
            const double prod = pte * ptm;
            double x = 0.0;
            if (cross != 0.0 || prod != 0.0) {
                const double q1 = quot(pte, ptm, u, powte, powtm);
                const double q2 =
                    prod != 0.0 ? quot(pte, ptm, u - 1.0, powte / pte, powtm / ptm) : 0.0;
                x = u * (cross * q1 + 2.0 * prod * q2);
            }
            const double uil = u * tau / l;

            const double d_te = sh.d_vv * pf.k1.te * pf.k1.te + sh.d_vj * pf.k1.te * sf.w1.te +
                                sh.d_jj * sf.w1.te * sf.w1.te + (0.5 * uil + sh.d_v) * pf.k2.te +
                                sh.d_j * sf.w2.te + uil * sf.y2.te;
            const double d_tm = sh.d_vv * pf.k1.tm * pf.k1.tm + sh.d_vj * pf.k1.tm * sf.w1.tm +
                                sh.d_jj * sf.w1.tm * sf.w1.tm + (0.5 * uil + sh.d_v) * pf.k2.tm +
                                sh.d_j * sf.w2.tm + uil * sf.y2.tm;

            for (int k = 0; k < 3; ++k) {
                const ScriptKind sk = script_kind(static_cast<Kind>(k), u, tau, l, g.e);
                const double br = powte * (sk.a + sk.c_v * pf.k1.te + sk.c_j * sf.w1.te + d_te) +
                                  powtm * (sk.a + sk.c_v * pf.k1.tm + sk.c_j * sf.w1.tm + d_tm) +
                                  x * sh.b;
                term[3 + k].add((k == 0 ? wt1 : k == 1 ? wt2 : wt3) * br);
            }
        }
    }
    // series weights: E has 1/u^2, F has 1/u, G has 1
    std::array<double, 6> raw;
    raw[0] = term[0].total() / (u * u);
    raw[1] = term[1].total() / u;
    raw[2] = term[2].total();
    raw[3] = term[3].total() / (u * u);
    raw[4] = term[4].total() / u;
    raw[5] = term[5].total();
    return raw;
}

// sum_{u = N+1}^{inf} f(u) by midpoint Euler-Maclaurin on the analytic term
// function: integral under u = a/y^2 (flattens algebraic decay of any
// exponent, including the half-integer components Drude layers produce) plus
// the f'(a)/24 correction. Exact to quadrature accuracy for smooth tails.
std::array<double, 6> tail_integral(const SeriesGrid& g, int n_last) {
    const double a = n_last + 1.5;  // N+1/2 with N = n_last + 1 terms summed through u = N
    const auto& rule = quadrature::gauss_legendre_on(24, 0.0, 1.0);
    std::array<Accum, 6> acc;
    for (int q = 0; q < 24; ++q) {
        const double y = rule.x[q];
        const double u = a / (y * y);
        const std::array<double, 6> f = terms_at(g, u);
        const double w = rule.w[q] * 2.0 * a / (y * y * y);
        for (int k = 0; k < 6; ++k) acc[k].add(w * f[k]);
    }
    const std::array<double, 6> fp = terms_at(g, a + 0.5);
    const std::array<double, 6> fm = terms_at(g, a - 0.5);
    std::array<double, 6> tail;
    for (int k = 0; k < 6; ++k) tail[k] = acc[k].total() + (fp[k] - fm[k]) / 24.0;
    return tail;
}

EngineOutputs s_loop(const ReducedDielectric& sphere, const ReducedDielectric& plate, double e,
                     int phi_nodes, int t_nodes, const EngineSettings& set) {
    SeriesGrid grid{phi_tables(phi_nodes), t_rule(t_nodes), &sphere, &plate,
                    e, phi_nodes, t_nodes};

    std::array<Accum, 6> sums;
    std::array<std::array<double, 3>, 6> last{};  // rolling window of raw terms
    std::array<double, 6> tail{}, defect{}, prev_total{};
    bool have_prev = false;
    int check_at = 16;  // verified-tail checks on a geometric schedule
    int s_reached = 0;
    bool converged = false;

    for (int s = 0; s <= set.s_max; ++s) {
        const double u = s + 1.0;
        const std::array<double, 6> raw = terms_at(grid, u);
        for (int k = 0; k < 6; ++k) {
            sums[k].add(raw[k]);
            last[k][0] = last[k][1];
            last[k][1] = last[k][2];
            last[k][2] = raw[k];
        }
        s_reached = s;

        if (!set.tail) {
            if (s < 7) continue;
            // bare truncation: three consecutive relatively-small terms
            bool small = true;
            for (int k = 0; k < 6; ++k) {
                const double tol = k < 3 ? set.rel_tol_leading : set.rel_tol_ntlo;
                for (double v : last[k])
                    if (std::fabs(v) > tol * std::max(std::fabs(sums[k].total()), 1e-305))
                        small = false;
            }
            if (small) {
                converged = true;
                break;
            }
            continue;
        }

        if (s < check_at) continue;
        check_at = s + std::max(8, s / 2);

        tail = tail_integral(grid, s);
        bool ok = have_prev;
        for (int k = 0; k < 6; ++k) {
            const double total = sums[k].total() + tail[k];
            defect[k] = std::fabs(total - prev_total[k]);
            const double tol = k < 3 ? set.rel_tol_leading : set.rel_tol_ntlo;
            if (defect[k] > 0.5 * tol * std::max(std::fabs(total), 1e-305)) ok = false;
            prev_total[k] = total;
        }
        have_prev = true;
        if (ok) {
            converged = true;
            break;
        }
    }

    EngineOutputs out;
    out.s_reached = s_reached;
    for (int k = 0; k < 6; ++k) {
        out.v[k] = sums[k].total() + tail[k];
        // the accepted defect plus the tolerance band the stopping rule
        // permits: residual tail drift continues past the accepted check
        const double tol = k < 3 ? set.rel_tol_leading : set.rel_tol_ntlo;
        out.err[k] = 3.0 * defect[k] + tol * std::fabs(out.v[k]);
    }
    if (!converged) {
        throw ConvergenceError(
            "ntlo: series cap reached before tolerance (s_max = " + std::to_string(set.s_max) +
                ", phi_nodes = " + std::to_string(phi_nodes) +
                ", t_nodes = " + std::to_string(t_nodes) + ")",
            out.v[3], out.err[3]);
    }
    return out;
}

struct Prefactors {
    double scale;  // multiplies the dimensionless integral
    double reference;
};

Prefactors prefactors(Kind kind, const Geometry& g) {
    const double hc = constants::hbar_c;
    switch (kind) {
        case Kind::Energy:
            return {-hc * g.R / (4.0 * pi * g.d * g.d),
                    -std::pow(pi, 3) * hc * g.R / (720.0 * g.d * g.d)};
        case Kind::Force:
            return {-hc * g.R / (2.0 * pi * std::pow(g.d, 3)),
                    -std::pow(pi, 3) * hc * g.R / (360.0 * std::pow(g.d, 3))};
        case Kind::Gradient:
            return {hc * g.R / (pi * std::pow(g.d, 4)),
                    std::pow(pi, 3) * hc * g.R / (120.0 * std::pow(g.d, 4))};
    }
    return {0.0, 0.0};
}

ExpansionSet assemble(const EngineOutputs& out, const Geometry& geom, int phi_nodes, int t_nodes,
                      const std::array<double, 6>& rel_err) {
    ExpansionSet set;
    for (int k = 0; k < 3; ++k) {
        const Kind kind = static_cast<Kind>(k);
        const Prefactors pf = prefactors(kind, geom);
        ExpansionResult r;
        r.kind = kind;
        r.leading = pf.scale * out.v[k];
        r.ntlo = pf.scale * out.v[3 + k];
        r.theta = out.v[k] != 0.0 ? out.v[3 + k] / (geom.e * out.v[k]) : 0.0;
        r.normalized_leading = r.leading / pf.reference;
        r.normalized_sum = (r.leading + r.ntlo) / pf.reference;
        r.diag.s_reached = out.s_reached;
        r.diag.phi_nodes = phi_nodes;
        r.diag.t_nodes = t_nodes;
        r.diag.err_leading = rel_err[k];
        r.diag.err_ntlo = rel_err[3 + k];
        switch (kind) {
            case Kind::Energy: set.energy = r; break;
            case Kind::Force: set.force = r; break;
            case Kind::Gradient: set.gradient = r; break;
        }
    }
    return set;
}

}  // namespace

ScriptCoefficients script_coefficients(Kind kind, int s, double tau, double l, double e) {
    if (s < 0) throw std::domain_error("script_coefficients: s must be >= 0");
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("script_coefficients: tau in (0,1)");
    if (!(l > 0.0)) throw std::domain_error("script_coefficients: l must be > 0");
    const double u = s + 1.0;
    const ScriptShared sh = script_shared(u, tau, l);
    const ScriptKind sk = script_kind(kind, u, tau, l, e);
    ScriptCoefficients c;
    c.a_term = sk.a;
    c.b_term = sh.b;
    c.c_v = sk.c_v;
    c.c_j = sk.c_j;
    c.d_vv = sh.d_vv;
    c.d_jj = sh.d_jj;
    c.d_vj = sh.d_vj;
    c.d_v = sh.d_v;
    c.d_j = sh.d_j;
    return c;
}

double pow_diff_quotient(double a, double b, int n) {
    if (n < 0) throw std::domain_error("pow_diff_quotient: n must be >= 0");
    if (a < 0.0 || b < 0.0) throw std::domain_error("pow_diff_quotient: a, b must be >= 0");
    return quot(a, b, n, std::pow(a, n), std::pow(b, n));
}

double x_factor(const PolarizationPair& t0_sphere, const PolarizationPair& t0_plate, int s) {
    if (s < 0) throw std::domain_error("x_factor: s must be >= 0");
    const double u = s + 1.0;
    const double pte = t0_sphere.te * t0_plate.te;
    const double ptm = t0_sphere.tm * t0_plate.tm;
    const double cross = t0_sphere.te * t0_plate.tm + t0_sphere.tm * t0_plate.te;
    const double prod = pte * ptm;
    double x = cross != 0.0 ? cross * pow_diff_quotient(pte, ptm, s + 1) : 0.0;
    if (prod != 0.0) x += 2.0 * prod * pow_diff_quotient(pte, ptm, s);
    return u * x;
}

double leading_integrand(int s, double tau, double t, double eps1, double eps2) {
    if (s < 0) throw std::domain_error("leading_integrand: s must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("leading_integrand: t must be > 0");
    const double u = s + 1.0;
    const SphereFactors sf = sphere_factors(eps1, tau);
    const PlateFactors pf = plate_factors(eps2, tau);
    const double sum = std::pow(sf.t0.te * pf.t0.te, u) + std::pow(sf.t0.tm * pf.t0.tm, u);
    return tau / std::sqrt((1.0 - tau) * (1.0 + tau)) * t * std::exp(-2.0 * t * u) * sum;
}

double pfa_pc_reference(Kind kind, const Geometry& geom) {
    return prefactors(kind, geom).reference;
}

ExpansionSet compute_all(const DielectricModel& sphere, const DielectricModel& plate,
                         const Geometry& geom, const EngineSettings& settings) {
    if (settings.phi_nodes < 4 || settings.t_nodes < 4 || settings.s_max < 8)
        throw std::invalid_argument("ntlo: quadrature budget too small");
    const ReducedDielectric red1(sphere, geom.d);
    const ReducedDielectric red2(plate, geom.d);

    int phi = settings.phi_nodes;
    int tn = settings.t_nodes;
    EngineOutputs coarse = s_loop(red1, red2, geom.e, phi, tn, settings);
    std::array<double, 6> rel_err{};
    if (!settings.richardson) {
        for (int k = 0; k < 6; ++k)
            rel_err[k] = coarse.err[k] / std::max(std::fabs(coarse.v[k]), 1e-305);
        return assemble(coarse, geom, phi, tn, rel_err);
    }

    int worst = 0;
    for (int refinement = 0; refinement <= settings.max_refinements; ++refinement) {
        const int phi_f = (phi * 3 + 1) / 2;
        const int tn_f = (tn * 3 + 1) / 2;
        EngineOutputs fine = s_loop(red1, red2, geom.e, phi_f, tn_f, settings);
        bool ok = true;
        for (int k = 0; k < 6; ++k) {
            const double tol = k < 3 ? settings.rel_tol_leading : settings.rel_tol_ntlo;
            const double diff = std::fabs(fine.v[k] - coarse.v[k]);
            rel_err[k] = diff / std::max(std::fabs(fine.v[k]), 1e-305);
            // grid consistency is only meaningful above the series' own
            // tolerance-band jitter, which both runs carry independently
            const double slack = fine.err[k] + coarse.err[k];
            if (diff > tol * std::fabs(fine.v[k]) + slack) {
                ok = false;
                worst = k;
            }
        }
        if (ok) return assemble(fine, geom, phi_f, tn_f, rel_err);
        coarse = fine;
        phi = phi_f;
        tn = tn_f;
    }
    throw ConvergenceError("ntlo: node refinement did not reach tolerance (output " +
                               std::to_string(worst) + ", rel change " +
                               std::to_string(rel_err[worst]) + " at phi = " +
                               std::to_string(phi) + ", t = " + std::to_string(tn) + ")",
                           coarse.v[worst], rel_err[worst]);
}

ExpansionResult compute(Kind kind, const DielectricModel& sphere, const DielectricModel& plate,
                        const Geometry& geom, const EngineSettings& settings) {
    return compute_all(sphere, plate, geom, settings).of(kind);
}

ThetaRatios theta_ratios(const DielectricModel& sphere, const DielectricModel& plate,
                         const Geometry& geom, const EngineSettings& settings) {
    const ExpansionSet set = compute_all(sphere, plate, geom, settings);
    return {set.energy.theta, set.force.theta, set.gradient.theta};
}

}  // namespace casimir

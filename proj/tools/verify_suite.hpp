#pragma once

// Verification checks shared by `stablefluct verify` and the acceptance
// runner. Each check evaluates closed forms against an independent route:
// direct quadrature, a path-counting or Markov identity, or simulation.
// Deterministic checks report the worst relative deviation against a fixed
// tolerance; simulation checks use the 3-sigma / KS rules of sfl::mc.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "stablefluct/fluct_ball.hpp"
#include "stablefluct/fluct_interval.hpp"
#include "stablefluct/lamperti_map.hpp"
#include "stablefluct/montecarlo.hpp"
#include "stablefluct/stable_core.hpp"

namespace sfl::verify {

using mc::VerificationReport;
using Reports = std::vector<VerificationReport>;

// ---------------------------------------------------------------- reporting

inline std::string fmt_g(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

// closed_form holds the target deviation (0), estimate the observed worst one
inline VerificationReport within(const std::string& name, double worst, double tol, const std::string& what) {
    VerificationReport r;
    r.name = name;
    r.closed_form = 0.0;
    r.estimate = worst;
    r.std_err = 0.0;
    r.pass = std::isfinite(worst) && worst <= tol;
    r.tolerance_rule = what + " <= " + fmt_g(tol);
    return r;
}

inline VerificationReport value_check(const std::string& name, double closed, double other, double tol,
                                      bool relative = true) {
    VerificationReport r;
    r.name = name;
    r.closed_form = closed;
    r.estimate = other;
    r.std_err = 0.0;
    const double dev = std::abs(closed - other) / (relative ? std::max(std::abs(closed), 1e-300) : 1.0);
    r.pass = std::isfinite(dev) && dev <= tol;
    r.tolerance_rule = std::string(relative ? "relative" : "absolute") + " difference <= " + fmt_g(tol);
    return r;
}

inline VerificationReport failed(const std::string& name, const std::string& why) {
    VerificationReport r;
    r.name = name;
    r.closed_form = std::numeric_limits<double>::quiet_NaN();
    r.estimate = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.tolerance_rule = why;
    return r;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::string pstr(const StableParams& p) {
    return "alpha=" + fmt_g(p.alpha) + ",rho=" + fmt_g(p.rho) + (p.dim > 1 ? ",d=" + std::to_string(p.dim) : "");
}

// ---------------------------------------------------------------- quadrature helpers

namespace q {

inline double ts(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    static thread_local boost::math::quadrature::tanh_sinh<double> t;
    return t.integrate([&](double x) { const double v = f(x); return std::isfinite(v) ? v : 0.0; }, a, b, tol);
}

inline double es(const std::function<double(double)>& f, double tol = 1e-12) {
    static thread_local boost::math::quadrature::exp_sinh<double> e;
    return e.integrate([&](double x) { const double v = f(x); return std::isfinite(v) ? v : 0.0; }, 0.0,
                       std::numeric_limits<double>::infinity(), tol);
}

// int_{-1}^{1} f with a cut of 1e-10 at both ends replaced by the fitted
// power-law tail; `split` is an interior point where f may be singular
inline double interior_mass(const std::function<double(double)>& f, double split = 0.0) {
    const double e = 1e-10;
    auto tail = [&](double s) {
        const double f1 = f(s * (1 - e)), f2 = f(s * (1 - 2 * e));
        if (f1 == 0.0) return 0.0;
        const double b = std::log2(f1 / f2);
        return f1 * e / (1 - b);
    };
    return ts([&](double t) { return f(split - t); }, 0.0, split + 1 - e) +
           ts([&](double t) { return f(split + t); }, 0.0, 1 - e - split) + tail(1.0) + tail(-1.0);
}

// |S^{d-1}|-normalised integral of G(1 - cos(angle to e1)), d = 2, 3
inline double zonal(int d, const std::function<double(double)>& G) {
    if (d == 2) return ts([&](double th) { const double s = std::sin(th / 2); return G(2 * s * s); }, 0.0, pi) / pi;
    return 0.5 * ts(G, 0.0, 2.0);
}

inline vec e1(int d, double r) {
    vec v(d, 0.0);
    v[0] = r;
    return v;
}

inline vec sph(int d, double th, double ph = 0.0) {
    if (d == 2) return {std::cos(th), std::sin(th)};
    return {std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)};
}

// normalised sphere integral with the singular point at e1 on a coordinate edge
inline double around_pole(int d, const std::function<double(const vec&)>& f) {
    if (d == 2)
        return (ts([&](double th) { return f(sph(2, th)); }, 0.0, pi) +
                ts([&](double th) { return f(sph(2, -th)); }, 0.0, pi)) /
               (2 * pi);
    const int nph = 64;
    double s = 0;
    for (int j = 0; j < nph; ++j) {
        const double ph = 2 * pi * (j + 0.5) / nph;
        s += ts([&](double th) { return std::sin(th) * f(sph(3, th, ph)); }, 0.0, pi, 1e-11);
    }
    return s / nph / 2.0;
}

inline vec random_vec(std::mt19937_64& g, int d, double lo, double hi) {
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(lo, hi);
    vec v(d);
    for (double& c : v) c = n(g);
    return scaled(v, u(g) / norm(v));
}

// random z with Re(iz) in the strip, 5% away from its edges
inline std::vector<cplx> strip_points(const Strip& s, int n, unsigned seed) {
    std::mt19937_64 g(seed);
    const double w = s.hi - s.lo;
    std::uniform_real_distribution<double> re(-15.0, 15.0), im(s.lo + 0.05 * w, s.hi - 0.05 * w);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.emplace_back(re(g), -im(g));
    return out;
}

} // namespace q

// ---------------------------------------------------------------- deterministic checks

// kappa(-iz) kappa^(iz) = Psi(z) on the real line, and up * down factor
// products against every Lamperti exponent kind.
inline Reports wiener_hopf(int npts = 100, double tol = 1e-10) {
    Reports out;
    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> uz(-20.0, 20.0);
    for (auto [a, r] : {std::pair{1.3, 0.6}, {0.7, 0.3}, {1.5, 0.5}}) {
        const auto p = validate_params(a, r, 1);
        const auto up = ladder_quantities(p, Side::up, 1.0), dn = ladder_quantities(p, Side::down, 1.0);
        double worst = 0;
        for (int i = 0; i < npts; ++i) {
            const double z = uz(g);
            worst = std::max(worst, rel(up.exponent(cplx(0, -z)) * dn.exponent(cplx(0, z)), char_exponent(p, z)));
        }
        out.push_back(within("wiener_hopf_ladder[" + pstr(p) + "]", worst, tol, "max relative error"));
    }
    const StableParams one = validate_params(1.3, 0.6, 1), small = validate_params(0.7, 0.3, 1);
    const StableParams iso2 = validate_params(1.5, 0.5, 2), iso3 = validate_params(0.8, 0.5, 3);
    struct Case { ExponentKind k; StableParams p; };
    for (const auto& c : std::vector<Case>{{ExponentKind::killed_half_line, one}, {ExponentKind::killed_half_line, small},
                                           {ExponentKind::censored, one}, {ExponentKind::censored, small},
                                           {ExponentKind::radial, iso2}, {ExponentKind::radial, iso3},
                                           {ExponentKind::radial_conditioned, iso2},
                                           {ExponentKind::radial_conditioned, iso3}}) {
        double worst = 0;
        for (cplx z : q::strip_points(exponent_strip(c.k, c.p), npts, 17)) {
            const auto [u, d] = levy_exponent_factors(c.k, c.p, z);
            worst = std::max(worst, rel(u * d, levy_exponent(c.k, c.p, z)));
        }
        out.push_back(within(std::string("factor_product_") + to_string(c.k) + "[" + pstr(c.p) + "]", worst, tol,
                             "max relative error"));
    }
    return out;
}

inline VerificationReport overshoot_mass(const StableParams& p, double tol = 1e-10) {
    const double m = quad::finite([&](double u) { return overshoot_density(p, 1.0, u); }, 0.0, 1.0, 1e-14) +
                     quad::to_inf([&](double u) { return overshoot_density(p, 1.0, u); }, 1.0, 1e-14);
    return value_check("overshoot_mass[" + pstr(p) + "]", 1.0, m, tol, false);
}

inline VerificationReport exit_up_symmetric(double alpha) {
    const auto p = validate_params(alpha, 0.5, 1);
    return value_check("exit_up_symmetric[" + pstr(p) + "]", 0.5, exit_up_prob(p, 0.0), 0.0, false);
}

// total mass of the triple law over (u, v, y) against exit_up_prob
inline VerificationReport triple_law_marginal(const StableParams& p, double x, double tol = 1e-4) {
    auto inner_v = [&](double y) {
        return q::ts([&](double t) {
            const double v = std::min(y + t, 2.0);
            if (v < 1e-100) return 0.0;
            return v * q::es([&](double s) { return v * s > 0 ? triple_law_density(p, {x, v * s, v, y}) : 0.0; }, 1e-6);
        }, 0.0, 2.0 - y, 1e-6);
    };
    const double m = q::ts(inner_v, 0.0, 1.0 - x, 1e-6);
    return value_check("triple_law_marginal[" + pstr(p) + ",x=" + fmt_g(x) + "]", exit_up_prob(p, x), m, tol, false);
}

inline double interval_occupation(const StableParams& p, double x) {
    return q::interior_mass([&](double y) { return y == x ? 0.0 : resolvent_interval(p, x, y); }, x);
}

// int u(x, y) dy against the mean exit time (1-x)^{a rho}(1+x)^{a rho^}/Gamma(1+a)
inline VerificationReport mean_exit_time(const StableParams& p, double x, double tol = 1e-7) {
    const double ref = std::pow(1 - x, p.arho()) * std::pow(1 + x, p.arho_hat()) / std::tgamma(1 + p.alpha);
    return value_check("interval_mean_exit_time[" + pstr(p) + ",x=" + fmt_g(x) + "]", ref, interval_occupation(p, x), tol);
}

inline VerificationReport entrance_mass(const StableParams& p, double x, double tol = 1e-7) {
    const double m = q::interior_mass([&](double y) { return entrance_density(p, x, y); });
    const double ref = p.alpha < 1 ? 1.0 - avoid_interval_prob(p, x) : 1.0;
    return value_check("entrance_mass[" + pstr(p) + ",x=" + fmt_g(x) + "]", ref, m, tol, false);
}

// int e^{zx} u~(x) dx = 1 / Psi_censored(-iz) for real z in the strip
inline VerificationReport censored_laplace(const StableParams& p, int npts = 5, double tol = 1e-6) {
    double worst = 0;
    for (int k = 1; k <= npts; ++k) {
        const double z = (p.alpha - 1) * k / (npts + 1.0);
        const double lt = q::es([&](double x) { return std::exp(-z * x) * censored_potential_density(p, -x); }) +
                          q::es([&](double x) { return std::exp(z * x) * censored_potential_density(p, x); });
        const double ref = (1.0 / levy_exponent(ExponentKind::censored, p, cplx(0, -z))).real();
        worst = std::max(worst, std::abs(lt - ref) / std::abs(ref));
    }
    return within("censored_laplace_round_trip[" + pstr(p) + "]", worst, tol, "max relative error");
}

// u0(x, y) / u0(y, y) = P_x(hit y before 0)
inline VerificationReport origin_killed_ratio(const StableParams& p, int npts = 20, double tol = 1e-9) {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    double worst = 0;
    for (int i = 0; i < npts; ++i) {
        double x = u(g), y = u(g);
        if (std::abs(x) < 1e-3) x = 0.5;
        if (std::abs(y) < 1e-3 || std::abs(x - y) < 1e-3) y = -1.7;
        const double lhs = resolvent_origin_killed(p, x, y) / resolvent_origin_killed(p, y, y);
        worst = std::max(worst, std::abs(lhs - hit_before_origin_prob(p, x, y)) / hit_before_origin_prob(p, x, y));
    }
    return within("origin_killed_ratio[" + pstr(p) + "]", worst, tol, "max relative error");
}

inline Reports map_structure(const StableParams& p, double tol = 1e-10) {
    Reports out;
    const auto tag = "[" + pstr(p) + "]";
    double rows = 0;
    for (auto k : {MapKind::stable, MapKind::conditioned}) {
        const auto m = map_exponent(k, p, 0.0);
        rows = std::max({rows, std::abs(m(0, 0) + m(0, 1)), std::abs(m(1, 0) + m(1, 1))});
    }
    out.push_back(within("map_row_sums" + tag, rows, 1e-13, "max |row sum|"));
    out.push_back(within("map_det_at_root" + tag,
                         std::abs(map_exponent(MapKind::stable, p, cplx(0, -(p.alpha - 1))).det()), tol, "|det|"));
    const auto st = map_exponent_fn(MapKind::stable, p);
    double worst = 0;
    for (cplx z : q::strip_points(map_strip(MapKind::conditioned, p), 30, 5)) {
        const auto e = esscher(st, p.alpha - 1.0, z);
        const auto c = map_exponent(MapKind::conditioned, p, z);
        for (int k = 0; k < 4; ++k) worst = std::max(worst, rel(e.e[k], c.e[k]));
    }
    out.push_back(within("esscher_reproduces_conditioned" + tag, worst, tol, "max entrywise relative error"));
    const double lo = -0.95, hi = p.alpha - 1.05;
    std::vector<double> chi;
    for (int i = 0; i <= 20; ++i) chi.push_back(leading_eig(st, lo + (hi - lo) * i / 20.0).chi);
    double neg = 0;
    for (int i = 1; i < 20; ++i) neg = std::max(neg, -(chi[i - 1] - 2 * chi[i] + chi[i + 1]));
    out.push_back(within("chi_convexity" + tag, neg, 1e-10, "max negative second difference"));
    return out;
}

inline Reports sphere_suite(int d, double alpha, int n_fixed = 10, double tol = 1e-6) {
    Reports out;
    const auto p = validate_params(alpha, 0.5, d);
    const auto tag = "[" + pstr(p) + "]";
    const double a = alpha;
    out.push_back(value_check("riesz_constant_quadrature" + tag, riesz_sphere_constant(p),
                              q::zonal(d, [&](double u) { return std::pow(2 * u, (a - d) / 2); }), tol));
    const auto grid = SurfaceGrid::make(d);
    double mass = 0, fixed = 0;
    for (double r : {0.4, 2.5}) {
        const vec x = q::e1(d, r);
        const double m = surface_quadrature(d, [&](const vec& z) { return sphere_hit_density(p, x, z); }, grid);
        mass = std::max(mass, std::abs(m - sphere_hit_prob(p, x)) / sphere_hit_prob(p, x));
        for (int k = 0; k < n_fixed / 2; ++k) {
            // rotate x instead of the sphere point, which stays at e1
            const double th = pi * (k + 0.5) / (n_fixed / 2);
            vec xr = q::e1(d, 0.0);
            xr[0] = r * std::cos(th);
            xr[1] = r * std::sin(th);
            const vec y = q::e1(d, 1.0);
            const double lhs = q::around_pole(d, [&](const vec& z) {
                return std::pow(norm(sub(z, y)), a - d) * sphere_hit_density(p, xr, z);
            });
            const double rhs = std::pow(norm(sub(xr, y)), a - d);
            fixed = std::max(fixed, std::abs(lhs - rhs) / rhs);
        }
    }
    out.push_back(within("sphere_hit_density_mass" + tag, mass, tol, "max relative error"));
    out.push_back(within("sphere_kernel_fixed_point" + tag, fixed, tol, "max relative error"));
    // Brownian calibration: Poisson kernel of the ball from inside and from outside
    const vec xi = q::e1(d, 0.5), xo = q::e1(d, 2.0);
    const double pin = surface_quadrature(d, [&](const vec& z) { return 0.75 / std::pow(norm(sub(z, xi)), d); }, grid);
    const double pout = surface_quadrature(d, [&](const vec& z) { return 3.0 / std::pow(norm(sub(z, xo)), d); }, grid);
    out.push_back(value_check("newton_poisson_inside[d=" + std::to_string(d) + "]", 1.0, pin, 1e-8, false));
    out.push_back(value_check("newton_hit_from_outside[d=" + std::to_string(d) + "]", std::pow(2.0, 2 - d), pout, 1e-8, false));
    return out;
}

inline Reports ball_suite(int d, double alpha, double tol = 1e-5, int npairs = 50) {
    Reports out;
    const auto p = validate_params(alpha, 0.5, d);
    const auto tag = "[" + pstr(p) + "]";
    const auto grid = SurfaceGrid::make(d, d == 2 ? 512 : 32);
    auto g_off = [&](const vec& x) {
        return [&p, x](const vec& y) { return std::abs(norm(y) - 1.0) < 1e-12 ? 0.0 : ball_passage_density(p, x, y); };
    };
    const double m_in = shell_integral(g_off(q::e1(d, 0.5)), grid, 1.0, INFINITY, 1e-9);
    out.push_back(value_check("ball_exit_mass" + tag + "|x|=0.5", 1.0, m_in, tol, false));
    const vec xo = q::e1(d, 2.0);
    const double m_out = shell_integral(g_off(xo), grid, 0.0, 1.0, 1e-9);
    out.push_back(value_check("ball_entrance_plus_never" + tag + "|x|=2", 1.0, m_out + never_enter_ball_prob(p, xo), tol, false));
    std::mt19937_64 g(11);
    double wg = 0, wh = 0;
    for (int k = 0; k < npairs; ++k) {
        const vec x = q::random_vec(g, d, 0.05, 0.95), y = q::random_vec(g, d, 1.05, 5.0);
        for (auto [u, v] : {std::pair{x, y}, std::pair{y, x}}) {
            const double lhs = ball_passage_density(p, u, v);
            const double rhs = std::pow(norm(u), alpha - d) * std::pow(norm(v), -alpha - d) *
                               ball_passage_density(p, kelvin(u), kelvin(v));
            wg = std::max(wg, std::abs(lhs - rhs) / lhs);
        }
        const vec y2 = q::random_vec(g, d, 0.05, 0.95);
        const double hi = ball_resolvent_density(p, x, y2, BallRegion::interior);
        const double he = ball_resolvent_density(p, kelvin(x), kelvin(y2), BallRegion::exterior);
        wh = std::max(wh, std::abs(he - std::pow(norm(x) * norm(y2), d - alpha) * hi) / he);
    }
    out.push_back(within("ball_passage_kelvin_duality" + tag, wg, 1e-10, "max relative error"));
    out.push_back(within("ball_resolvent_kelvin_duality" + tag, wh, 1e-10, "max relative error"));
    return out;
}

// exterior resolvent rebuilt from the interior one through x -> -1/x
inline VerificationReport inversion_reconstruction(const StableParams& p, int npts = 20, double tol = 1e-8) {
    std::mt19937_64 g(19);
    std::uniform_real_distribution<double> mag(1.05, 6.0), coin(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < npts; ++i) {
        const double x = (coin(g) < 0.5 ? -1 : 1) * mag(g);
        double y = (coin(g) < 0.5 ? -1 : 1) * mag(g);
        if (std::abs(x - y) < 1e-3) y = -x;
        const double u = resolvent_exterior(p, x, y);
        worst = std::max(worst, std::abs(resolvent_exterior_by_inversion(p, x, y) - u) / u);
    }
    return within("exterior_resolvent_by_inversion[" + pstr(p) + "]", worst, tol, "max relative error");
}

// ---------------------------------------------------------------- simulation checks

struct McOptions {
    std::uint64_t seed = 42;
    std::uint64_t paths = 100000;
};

namespace detail {

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) {
    return seed * 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL + 1;
}

// the same run at kappa and kappa/2 on independent streams
template <class F>
std::pair<mc::Estimate, mc::Estimate> ladder(const StableParams& p, mc::SimConfig c, F stat) {
    const auto coarse = mc::estimate(mc::simulate_event(p, c), stat);
    c.kappa /= 2;
    c.seed = sub_seed(c.seed, 1);
    const auto fine = mc::estimate(mc::simulate_event(p, c), stat);
    return {coarse, fine};
}

inline mc::SimConfig config(mc::Scenario s, vec x0, double kappa, const McOptions& o, std::uint64_t salt) {
    mc::SimConfig c;
    c.scenario = s;
    c.x0 = std::move(x0);
    c.kappa = kappa;
    c.n_paths = o.paths;
    c.seed = sub_seed(o.seed, salt);
    return c;
}

inline void note_censoring(VerificationReport& r, const mc::Estimate& a, const mc::Estimate& b) {
    const auto c = a.dist.censored + b.dist.censored;
    if (c) r.tolerance_rule += " (" + std::to_string(c) + " censored paths)";
}

} // namespace detail

inline VerificationReport mc_overshoot(const StableParams& p, const McOptions& o, double kappa = 0.05) {
    auto c = detail::config(mc::Scenario::interval_exit, {0.0}, kappa, o, 101);
    c.lo = -std::numeric_limits<double>::infinity();
    c.horizon = std::numeric_limits<double>::infinity();
    const auto [coarse, fine] =
        detail::ladder(p, c, [](const mc::EventRecord& r) { return std::optional<double>(r.excess); });
    auto rep = mc::compare_ks_extrapolated("mc_overshoot_law[" + pstr(p) + "]",
                                           [&](double u) { return overshoot_cdf(p, 1.0, u); }, coarse, fine, p.alpha);
    detail::note_censoring(rep, coarse, fine);
    return rep;
}

inline VerificationReport mc_exit_up(const StableParams& p, double x, const McOptions& o, double kappa = 0.1) {
    const auto [c, f] = detail::ladder(p, detail::config(mc::Scenario::interval_exit, {x}, kappa, o, 102),
                                       [](const mc::EventRecord& r) { return mc::indicator(r.after[0] >= 1.0); });
    auto rep = mc::compare("mc_exit_up[" + pstr(p) + ",x=" + fmt_g(x) + "]", exit_up_prob(p, x),
                           mc::extrapolate(c, f, p.alpha));
    detail::note_censoring(rep, c, f);
    return rep;
}

// simulated mean exit time against the total mass of the interval resolvent
inline VerificationReport mc_exit_time(const StableParams& p, double x, const McOptions& o, double kappa = 0.04) {
    const auto [c, f] = detail::ladder(p, detail::config(mc::Scenario::interval_exit, {x}, kappa, o, 103),
                                       [](const mc::EventRecord& r) { return std::optional<double>(r.time); });
    auto rep = mc::compare("mc_resolvent_occupation[" + pstr(p) + ",x=" + fmt_g(x) + "]", interval_occupation(p, x),
                           mc::extrapolate(c, f, p.alpha));
    detail::note_censoring(rep, c, f);
    return rep;
}

// Paths that pass the escape radius R count as never entering; R is chosen
// so that the entry probability from there is below a tenth of the 3-sigma band.
inline VerificationReport mc_never_enter(const StableParams& p, double r, const McOptions& o, double kappa = 0.025) {
    const double target = never_enter_ball_prob_radial(p, r);
    const double band = 3.0 * std::sqrt(target * (1 - target) / (double)o.paths);
    double R = 10.0;
    while (1.0 - never_enter_ball_prob_radial(p, R) > 0.1 * band && R < 1e12) R *= 2;
    auto cfg = detail::config(mc::Scenario::ball_entrance, q::e1(p.dim, r), kappa, o, 104);
    cfg.escape_radius = R;
    cfg.horizon = std::numeric_limits<double>::infinity();
    const auto [c, f] = detail::ladder(
        p, cfg, [](const mc::EventRecord& e) { return mc::indicator(e.outcome == mc::Outcome::escaped); });
    auto rep = mc::compare("mc_never_enter_ball[" + pstr(p) + ",|x|=" + fmt_g(r) + "]", target,
                           mc::extrapolate(c, f, p.alpha));
    detail::note_censoring(rep, c, f);
    return rep;
}

inline VerificationReport mc_entrance_law(const StableParams& p, double x, const McOptions& o, double kappa = 0.1) {
    // CDF on a Chebyshev grid plus the analytic end tails
    const int m = 2000;
    const double cut = 1e-11;
    std::vector<double> ys(m + 1), F(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) ys[k] = -std::cos(pi * k / m);
    ys[0] = -1, ys[m] = 1;
    auto g = [&](double y) { return std::abs(y) >= 1 - cut ? 0.0 : entrance_density(p, x, y); };
    for (int k = 1; k <= m; ++k) F[k] = F[k - 1] + quad::finite(g, ys[k - 1], ys[k], 1e-12);
    auto tail = [&](double y0, double y1) {
        const double b = std::log2(entrance_density(p, x, y0) / entrance_density(p, x, y1));
        return entrance_density(p, x, y0) * cut / (1 - b);
    };
    const double lo_tail = tail(-1 + cut, -1 + 2 * cut);
    for (int k = 1; k <= m; ++k) F[k] += lo_tail;
    F[m] += tail(1 - cut, 1 - 2 * cut);
    // condition on entry (defective law when alpha < 1)
    const double total = F[m];
    auto cdf = [&](double y) {
        if (y <= -1) return 0.0;
        if (y >= 1) return 1.0;
        const int k = (int)(std::upper_bound(ys.begin(), ys.end(), y) - ys.begin());
        const double w = (y - ys[k - 1]) / (ys[k] - ys[k - 1]);
        return (F[k - 1] + w * (F[k] - F[k - 1])) / total;
    };
    auto cfg = detail::config(mc::Scenario::interval_entrance, {x}, kappa, o, 105);
    cfg.horizon = std::numeric_limits<double>::infinity();
    const auto [c, f] = detail::ladder(p, cfg, [](const mc::EventRecord& r) {
        return r.outcome == mc::Outcome::event ? std::optional<double>(r.after[0]) : std::nullopt;
    });
    auto rep = mc::compare_ks_extrapolated("mc_entrance_law[" + pstr(p) + ",x=" + fmt_g(x) + "]", cdf, c, f, p.alpha);
    detail::note_censoring(rep, c, f);
    return rep;
}

// ---------------------------------------------------------------- suites

inline Reports fast_suite() {
    Reports out;
    auto add = [&](Reports r) { out.insert(out.end(), r.begin(), r.end()); };
    add(wiener_hopf(20));
    out.push_back(overshoot_mass(validate_params(1.5, 0.5, 1)));
    out.push_back(overshoot_mass(validate_params(0.6, 0.3, 1)));
    out.push_back(exit_up_symmetric(1.5));
    out.push_back(mean_exit_time(validate_params(1.3, 0.6, 1), 0.2));
    out.push_back(mean_exit_time(validate_params(0.8, 0.4, 1), -0.3));
    out.push_back(entrance_mass(validate_params(1.3, 0.6, 1), 2.0));
    out.push_back(entrance_mass(validate_params(0.7, 0.3, 1), -1.5));
    out.push_back(censored_laplace(validate_params(1.5, 0.5, 1)));
    out.push_back(origin_killed_ratio(validate_params(1.4, 0.45, 1)));
    add(map_structure(validate_params(1.3, 0.6, 1)));
    out.push_back(inversion_reconstruction(validate_params(1.3, 0.6, 1)));
    out.push_back(inversion_reconstruction(validate_params(0.7, 0.4, 1)));
    add(sphere_suite(2, 1.5, 4));
    add(ball_suite(2, 1.5, 1e-5, 10));
    return out;
}

inline Reports full_suite(const McOptions& o) {
    Reports out = fast_suite();
    out.push_back(triple_law_marginal(validate_params(1.5, 0.5, 1), 0.3));
    out.push_back(mc_overshoot(validate_params(1.5, 0.5, 1), o));
    out.push_back(mc_exit_up(validate_params(0.8, 0.4, 1), -0.2, o));
    out.push_back(mc_exit_up(validate_params(1.4, 0.6, 1), 0.3, o));
    out.push_back(mc_exit_time(validate_params(0.8, 0.4, 1), 0.0, o));
    out.push_back(mc_never_enter(validate_params(1.0, 0.5, 2), 2.0, o));
    out.push_back(mc_entrance_law(validate_params(1.3, 0.5, 1), 2.0, o));
    return out;
}

} // namespace sfl::verify

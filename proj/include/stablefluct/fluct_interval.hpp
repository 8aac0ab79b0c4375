#pragma once

// One-dimensional exit, entrance, hitting and resolvent laws for the interval
// (-1, 1), its complement, and the points {-1, 1} and {0}.

#include <cmath>

#include "error.hpp"
#include "quad.hpp"
#include "specfun.hpp"
#include "stable_core.hpp"

namespace sfl {

inline constexpr double boundary_eps = 1e-12;

namespace detail {

inline void require_1d(const StableParams& p, const char* who) {
    require(p.dim == 1, errc::unsupported_dimension, std::string(who) + ": d = 1 only");
}

inline void require_inside(double x, const char* who) {
    require(std::isfinite(x) && std::abs(x) < 1.0 - boundary_eps, errc::domain,
            std::string(who) + ": point must lie in (-1, 1)");
}

inline void require_outside(double x, const char* who) {
    require(std::isfinite(x) && std::abs(x) > 1.0 + boundary_eps, errc::domain,
            std::string(who) + ": point must lie outside [-1, 1]");
}

// int_0^w u^{b-1} (1-u)^{-al} du for b > 0, al in (0, 2), 0 <= w < 1.
inline double beta_neg(double w, double b, double al) {
    if (w <= 0.0) return 0.0;
    if (al < 1.0) return beta_inc(w, b, 1.0 - al);
    if (std::abs(al - 1.0) < 1e-12) {
        // u = v^{1/b}
        return quad::finite([&](double v) { return 1.0 / (-std::expm1(std::log(v) / b)); }, 0.0, std::pow(w, b), 1e-14) / b;
    }
    // integrate by parts down to the (positive) parameter 2 - al
    return std::pow(w, b) * std::pow(1.0 - w, 1.0 - al) / (al - 1.0) + (1.0 - b / (al - 1.0)) * beta_inc(w, b, 2.0 - al);
}

} // namespace detail

// int_1^Z (s+1)^{a-1} (s-1)^{b-1} ds, Z >= 1, a, b > 0, a + b < 2.
inline double branch_integral(double Z, double a, double b) {
    require(Z >= 1.0, errc::domain, "branch_integral: upper limit must be >= 1");
    require(a > 0 && b > 0 && a + b < 2.0, errc::domain, "branch_integral: bad exponents");
    if (Z == 1.0) return 0.0;
    if (std::isinf(Z)) {
        require(a + b < 1.0, errc::divergence, "branch_integral: divergent at infinity");
        return std::pow(2.0, a + b - 1.0) * beta_fn(b, 1.0 - a - b);
    }
    // u = (s-1)/(s+1)
    const double w = (Z - 1.0) / (Z + 1.0);
    return std::pow(2.0, a + b - 1.0) * detail::beta_neg(w, b, a + b);
}

inline double exit_up_prob(const StableParams& p, double x) {
    detail::require_1d(p, "exit_up_prob");
    detail::require_inside(x, "exit_up_prob");
    return beta_inc_reg((1.0 + x) / 2.0, p.arho_hat(), p.arho());
}

struct TripleLawPoint {
    double x = 0; // start, in (-1, 1)
    double u = 0; // overshoot above 1
    double v = 0; // distance of the pre-passage position below 1
    double y = 0; // distance of the pre-passage maximum below 1
};

// Joint density of (X_{tau_1^+} - 1, 1 - X_{tau_1^+ -}, 1 - sup before passage)
// on {tau_1^+ < tau_{-1}^-}.
inline double triple_law_density(const StableParams& p, const TripleLawPoint& q) {
    detail::require_1d(p, "triple_law_density");
    detail::require_inside(q.x, "triple_law_density");
    require(q.u > 0.0 && q.y >= 0.0 && q.y <= 1.0 - q.x && q.v >= q.y && q.v <= 2.0, errc::domain,
            "triple_law_density: need u > 0, 0 <= y <= 1 - x, y <= v <= 2");
    const double a = p.alpha, r = p.arho(), rh = p.arho_hat();
    const double c = std::sin(pi * r) / pi * std::tgamma(a + 1.0) / (std::tgamma(r) * std::tgamma(rh));
    return c * std::pow(1.0 + q.x, rh) * std::pow(1.0 - q.x - q.y, r - 1.0) * std::pow(q.v - q.y, rh - 1.0) *
           std::pow(2.0 - q.v, r) / (std::pow(2.0 - q.y, a) * std::pow(q.u + q.v, a + 1.0));
}

// Diagonal value of the interval resolvent (alpha > 1).
inline double resolvent_interval_diagonal(const StableParams& p, double y) {
    require(p.alpha > 1.0, errc::domain, "resolvent_interval: diagonal is infinite for alpha <= 1");
    return std::pow(2.0, 1.0 - p.alpha) * std::pow(1.0 - y * y, p.alpha - 1.0) /
           ((p.alpha - 1.0) * std::tgamma(p.arho()) * std::tgamma(p.arho_hat()));
}

// Density of the potential of X killed on leaving (-1, 1).
inline double resolvent_interval(const StableParams& p, double x, double y) {
    detail::require_1d(p, "resolvent_interval");
    detail::require_inside(x, "resolvent_interval");
    detail::require_inside(y, "resolvent_interval");
    if (x == y) return resolvent_interval_diagonal(p, y);
    const double a = p.alpha;
    const double Z = std::abs((1.0 - x * y) / (y - x));
    const double I = x <= y ? branch_integral(Z, p.arho(), p.arho_hat()) : branch_integral(Z, p.arho_hat(), p.arho());
    return std::pow(2.0, 1.0 - a) * std::pow(std::abs(y - x), a - 1.0) * I / (std::tgamma(p.arho()) * std::tgamma(p.arho_hat()));
}

// P_x(X hits y before leaving (-1, 1)), alpha > 1.
inline double hit_point_before_exit(const StableParams& p, double x, double y) {
    detail::require_1d(p, "hit_point_before_exit");
    require(p.alpha > 1.0, errc::polar_points, "hit_point_before_exit: points are polar for alpha <= 1");
    detail::require_inside(x, "hit_point_before_exit");
    detail::require_inside(y, "hit_point_before_exit");
    if (x == y) return 1.0;
    const double a = p.alpha;
    const double Z = std::abs((1.0 - x * y) / (x - y));
    const double I = x <= y ? branch_integral(Z, p.arho(), p.arho_hat()) : branch_integral(Z, p.arho_hat(), p.arho());
    return std::min(1.0, (a - 1.0) * std::pow(std::abs(y - x), a - 1.0) / std::pow(1.0 - y * y, a - 1.0) * I);
}

// Density of X at first entry into (-1, 1); defective when alpha < 1.
inline double entrance_density(const StableParams& p, double x, double y) {
    detail::require_1d(p, "entrance_density");
    detail::require_outside(x, "entrance_density");
    detail::require_inside(y, "entrance_density");
    if (x < 0) return entrance_density(p.dual(), -x, -y);
    const double a = p.alpha, r = p.arho(), rh = p.arho_hat();
    double inner = std::pow(x - 1.0, rh) * std::pow(1.0 + x, r) / (x - y);
    if (a > 1.0) inner -= (a - 1.0) * branch_integral(x, r, rh);
    return std::sin(pi * rh) / pi * std::pow(1.0 + y, -r) * std::pow(1.0 - y, -rh) * inner;
}

inline double avoid_interval_prob(const StableParams& p, double x) {
    detail::require_1d(p, "avoid_interval_prob");
    require(p.alpha < 1.0, errc::recurrent, "avoid_interval_prob: the interval is hit surely for alpha >= 1");
    detail::require_outside(x, "avoid_interval_prob");
    if (x < 0) return avoid_interval_prob(p.dual(), -x);
    const double a = p.alpha, r = p.arho(), rh = p.arho_hat();
    return std::pow(2.0, 1.0 - a) * std::tgamma(1.0 - r) / (std::tgamma(rh) * std::tgamma(1.0 - a)) * branch_integral(x, r, rh);
}

// Density of the potential of X killed on entering (-1, 1).
inline double resolvent_exterior(const StableParams& p, double x, double y) {
    detail::require_1d(p, "resolvent_exterior");
    detail::require_outside(x, "resolvent_exterior");
    detail::require_outside(y, "resolvent_exterior");
    require(x != y, errc::singularity, "resolvent_exterior: x == y");
    if (x < 0) return resolvent_exterior(p.dual(), -x, -y);
    if (y > 1 && x > y) return resolvent_exterior(p.dual(), y, x);
    const double a = p.alpha, r = p.arho(), rh = p.arho_hat();
    const double c = std::pow(2.0, 1.0 - a) / (std::tgamma(r) * std::tgamma(rh));
    const double Z = std::abs((1.0 - x * y) / (y - x));
    const double first = std::pow(std::abs(y - x), a - 1.0) * branch_integral(Z, r, rh);
    const double ap = std::max(a - 1.0, 0.0);
    if (y > 1) {
        const double second = ap > 0 ? ap * branch_integral(x, r, rh) * branch_integral(y, rh, r) : 0.0;
        return c * (first - second);
    }
    // x > 1 > -1 > y
    const double second = ap > 0 ? ap * branch_integral(x, r, rh) * branch_integral(-y, r, rh) : 0.0;
    return std::sin(pi * rh) / std::sin(pi * r) * c * (first - second);
}

// Potential density of the Levy process underlying the stable process
// censored in (-inf, 0), alpha in (1, 2).
inline double censored_potential_density(const StableParams& p, double x) {
    detail::require_1d(p, "censored_potential_density");
    require(p.alpha > 1.0, errc::domain, "censored_potential_density: needs alpha in (1, 2)");
    const double a = p.alpha;
    const double k = -std::tgamma(1.0 - a) / pi;
    const double sr = std::sin(pi * p.arho()), srh = std::sin(pi * p.arho_hat());
    if (x == 0.0) return k * (sr + srh);
    if (x > 0) return k * (sr * (1.0 - std::pow(-std::expm1(-x), a - 1.0)) + srh * std::exp(-(a - 1.0) * x));
    return k * (sr + srh * (1.0 - std::pow(-std::expm1(x), a - 1.0)) * std::exp(-(a - 1.0) * x));
}

// Closed form with -Gamma(1-a)/pi^2 in front. It is a factor pi below the
// value at 0 of the density above; kept for comparison.
inline double censored_potential_at_zero_printed(const StableParams& p) {
    return -std::tgamma(1.0 - p.alpha) * (std::sin(pi * p.arho()) + std::sin(pi * p.arho_hat())) / (pi * pi);
}

// P_x(tau^{1} < tau^{-1}), alpha in (1, 2).
inline double two_point_hit_prob(const StableParams& p, double x) {
    detail::require_1d(p, "two_point_hit_prob");
    require(p.alpha > 1.0, errc::polar_points, "two_point_hit_prob: points are polar for alpha <= 1");
    require(std::isfinite(x) && std::abs(std::abs(x) - 1.0) > boundary_eps, errc::domain,
            "two_point_hit_prob: x must differ from -1 and 1");
    if (x < -1.0) return 1.0 - two_point_hit_prob(p.dual(), -x);
    const double a = p.alpha, sr = std::sin(pi * p.arho()), srh = std::sin(pi * p.arho_hat());
    const double b = std::pow(2.0, a - 1.0);
    const double mid = x > 1 ? srh : sr;
    return (b * sr - std::pow(std::abs(x - 1.0), a - 1.0) * mid + std::pow(x + 1.0, a - 1.0) * srh) / (b * (sr + srh));
}

// Density of the potential of X killed on first hitting 0, alpha in (1, 2).
inline double resolvent_origin_killed(const StableParams& p, double x, double y) {
    detail::require_1d(p, "resolvent_origin_killed");
    require(p.alpha > 1.0, errc::domain, "resolvent_origin_killed: needs alpha in (1, 2)");
    require(x != 0.0 && y != 0.0, errc::singularity, "resolvent_origin_killed: x and y must be non-zero");
    const double a = p.alpha, sr = std::sin(pi * p.arho()), srh = std::sin(pi * p.arho_hat());
    auto s = [&](double v) { return v >= 0 ? sr : srh; };
    auto pw = [&](double v) { return std::pow(std::abs(v), a - 1.0); };
    return -std::tgamma(1.0 - a) / pi * (pw(y) * s(y) - pw(y - x) * s(y - x) + pw(x) * s(-x));
}

// P_x(tau^{y} < tau^{0}), from the two-point law after an affine map.
inline double hit_before_origin_prob(const StableParams& p, double x, double y) {
    require(x != 0.0 && y != 0.0, errc::singularity, "hit_before_origin_prob: x and y must be non-zero");
    if (x == y) return 1.0;
    const double w = 2.0 * x / y - 1.0;
    return two_point_hit_prob(y > 0 ? p : p.dual(), w);
}

// Exterior resolvent rebuilt from interior quantities through the spatial
// inversion x -> 1/x and the h-transform to the origin-absorbed process.
inline double resolvent_exterior_by_inversion(const StableParams& p, double x, double y) {
    detail::require_1d(p, "resolvent_exterior_by_inversion");
    detail::require_outside(x, "resolvent_exterior_by_inversion");
    detail::require_outside(y, "resolvent_exterior_by_inversion");
    require(x != y, errc::singularity, "resolvent_exterior_by_inversion: x == y");
    // the inverted, origin-killed interval process at (K(-x), K(-y)) is the
    // exterior-killed process at (x, y)
    const StableParams& q = p;
    const double kx = -1.0 / x, ky = -1.0 / y;
    auto h = [&](double v) {
        const double s = v >= 0 ? std::sin(pi * q.arho_hat()) : std::sin(pi * q.arho());
        return s * std::pow(std::abs(v), q.alpha - 1.0);
    };
    double inner = resolvent_interval(q, kx, ky);
    if (q.alpha > 1.0) inner -= hit_point_before_exit(q, kx, 0.0) * resolvent_interval(q, 0.0, ky);
    return std::pow(std::abs(y), 2.0 * q.alpha - 2.0) * h(ky) / h(kx) * inner;
}

} // namespace sfl

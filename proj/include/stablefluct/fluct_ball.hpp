#pragma once

// Isotropic stable processes in d >= 2: sphere inversions, hitting the unit
// sphere, entering and leaving the unit ball, and the associated potentials.

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "error.hpp"
#include "quad.hpp"
#include "specfun.hpp"
#include "stable_core.hpp"

namespace sfl {

struct SphereSpec {
    vec center;
    double radius = 1.0;
};

enum class Inversion { star, diamond };

inline vec invert_sphere(const vec& x, const SphereSpec& s, Inversion variant = Inversion::star) {
    require(s.radius > 0.0, errc::domain, "invert_sphere: radius must be positive");
    const vec d = sub(x, s.center);
    const double n2 = dot(d, d);
    require(n2 > 0.0, errc::singularity, "invert_sphere: x equals the centre");
    const double k = (variant == Inversion::star ? 1.0 : -1.0) * s.radius * s.radius / n2;
    vec out(s.center);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += k * d[i];
    return out;
}

// K x = x / |x|^2
inline vec kelvin(const vec& x) {
    const double n2 = dot(x, x);
    require(n2 > 0.0, errc::singularity, "kelvin: x = 0");
    return scaled(x, 1.0 / n2);
}

inline double sphere_area(int d) { return 2.0 * std::pow(pi, d / 2.0) / std::tgamma(d / 2.0); }

// Quadrature rule for the uniform probability measure on the unit sphere.
struct SurfaceGrid {
    int dim = 2;
    std::vector<vec> nodes;
    std::vector<double> weights;

    // d = 2: n equally spaced points; d = 3: Gauss-Legendre in cos(theta)
    // (64 nodes) times n uniform azimuths (default 128)
    static SurfaceGrid make(int d, int n = 0) {
        SurfaceGrid g;
        g.dim = d;
        if (d == 2) {
            if (n <= 0) n = 2048;
            for (int i = 0; i < n; ++i) {
                const double t = 2.0 * pi * (i + 0.5) / n;
                g.nodes.push_back({std::cos(t), std::sin(t)});
                g.weights.push_back(1.0 / n);
            }
            return g;
        }
        require(d == 3, errc::unsupported_dimension, "SurfaceGrid: quadrature grids exist for d = 2, 3 only");
        using gl = boost::math::quadrature::gauss<double, 64>;
        const int nphi = n > 0 ? n : 128;
        std::vector<std::pair<double, double>> rule; // (cos theta, weight on [-1, 1])
        const auto& ab = gl::abscissa();
        const auto& w = gl::weights();
        for (std::size_t i = 0; i < ab.size(); ++i) {
            rule.emplace_back(ab[i], w[i]);
            if (ab[i] != 0.0) rule.emplace_back(-ab[i], w[i]);
        }
        for (auto [c, wc] : rule) {
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < nphi; ++j) {
                const double ph = 2.0 * pi * (j + 0.5) / nphi;
                g.nodes.push_back({s * std::cos(ph), s * std::sin(ph), c});
                g.weights.push_back(wc / 2.0 / nphi);
            }
        }
        return g;
    }
};

inline double surface_quadrature(int d, const std::function<double(const vec&)>& f, const SurfaceGrid& grid) {
    require(grid.dim == d, errc::domain, "surface_quadrature: grid dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) s += grid.weights[i] * f(grid.nodes[i]);
    return s;
}

// int over {r0 < |y| < r1} of f(y) dy: radial tanh-sinh times the surface
// grid. A shell of width eta is cut at each finite radius and replaced by the
// power-law head c t^{-b} fitted at distances eta and 2 eta, which absorbs the
// algebraic boundary singularities of the ball kernels.
inline double shell_integral(const std::function<double(const vec&)>& f, const SurfaceGrid& grid, double r0, double r1,
                             double tol = 1e-10, double eta = 1e-7) {
    require(r0 >= 0.0 && r1 > r0, errc::domain, "shell_integral: need 0 <= r0 < r1");
    const int d = grid.dim;
    auto radial = [&](double r) {
        return std::pow(r, d - 1) * surface_quadrature(d, [&](const vec& u) { return f(scaled(u, r)); }, grid);
    };
    auto head = [&](double edge, double dir) {
        const double f1 = radial(edge + dir * eta), f2 = radial(edge + dir * 2 * eta);
        if (f1 == 0.0 || f2 == 0.0) return 0.0;
        const double b = std::log2(f1 / f2);
        require(b < 1.0, errc::divergence, "shell_integral: non-integrable boundary singularity");
        return f1 * eta / (1.0 - b);
    };
    const double lo = r0 > 0.0 ? r0 + eta : 0.0;
    double v = r0 > 0.0 ? head(r0, 1.0) : 0.0;
    if (std::isinf(r1)) {
        v += quad::to_inf(radial, lo, tol);
    } else {
        v += quad::finite(radial, lo, r1 - eta, tol) + head(r1, -1.0);
    }
    return sphere_area(d) * v;
}

namespace detail {

inline void require_iso(const StableParams& p, const char* who) {
    require(p.dim >= 2, errc::unsupported_dimension, std::string(who) + ": needs d >= 2");
}

inline void require_dim(const StableParams& p, const vec& x, const char* who) {
    require((int)x.size() == p.dim, errc::domain, std::string(who) + ": dimension mismatch");
}

inline double off_sphere_eps = 1e-12;

// int_0^z (u+1)^{-d/2} u^{a/2-1} du
inline double ball_beta(double z, double a, int d) {
    if (z <= 0.0) return 0.0;
    if (std::isinf(z)) return beta_fn(a / 2.0, (d - a) / 2.0);
    return beta_inc(z / (1.0 + z), a / 2.0, (d - a) / 2.0);
}

} // namespace detail

// Gamma(d/2) Gamma(a-1) / (Gamma((a+d)/2-1) Gamma(a/2)) = int |z - y|^{a-d} sigma_1(dz), |y| = 1.
inline double riesz_sphere_constant(const StableParams& p) {
    detail::require_iso(p, "riesz_sphere_constant");
    require(p.alpha > 1.0, errc::domain, "riesz_sphere_constant: needs alpha in (1, 2)");
    const double a = p.alpha, d = p.dim;
    return std::tgamma(d / 2) * std::tgamma(a - 1) / (std::tgamma((a + d) / 2 - 1) * std::tgamma(a / 2));
}

// P_x(the unit sphere is ever hit) as a function of r = |x|.
inline double sphere_hit_prob_radial(const StableParams& p, double r) {
    detail::require_iso(p, "sphere_hit_prob");
    require(r >= 0.0 && std::abs(r - 1.0) > detail::off_sphere_eps, errc::domain, "sphere_hit_prob: |x| = 1 (hit at time 0)");
    if (p.alpha <= 1.0) return 0.0;
    const double a = p.alpha, d = p.dim;
    const double c = 1.0 / riesz_sphere_constant(p);
    if (r < 1.0) return std::min(1.0, c * hyp2f1((d - a) / 2, 1 - a / 2, d / 2, r * r));
    return std::min(1.0, c * std::pow(r, a - d) * hyp2f1((d - a) / 2, 1 - a / 2, d / 2, 1.0 / (r * r)));
}

inline double sphere_hit_prob(const StableParams& p, const vec& x) {
    detail::require_dim(p, x, "sphere_hit_prob");
    return sphere_hit_prob_radial(p, norm(x));
}

// Density of X at the first hitting time of the unit sphere w.r.t. sigma_1.
inline double sphere_hit_density(const StableParams& p, const vec& x, const vec& y) {
    detail::require_iso(p, "sphere_hit_density");
    detail::require_dim(p, x, "sphere_hit_density");
    detail::require_dim(p, y, "sphere_hit_density");
    require(p.alpha > 1.0, errc::polar_points, "sphere_hit_density: the sphere is never hit for alpha <= 1");
    const double rx = norm(x);
    require(std::abs(rx - 1.0) > detail::off_sphere_eps, errc::domain, "sphere_hit_density: |x| = 1");
    require(std::abs(norm(y) - 1.0) < 1e-9, errc::domain, "sphere_hit_density: y must be a unit vector");
    const double a = p.alpha, d = p.dim;
    return std::pow(std::abs(rx * rx - 1.0), a - 1) / (riesz_sphere_constant(p) * std::pow(norm(sub(x, y)), a + d - 2));
}

// Free-potential constant kappa_{a,d}.
inline double riesz_kappa(double a, int d) {
    return std::pow(2.0, -a) * std::pow(pi, -d / 2.0) * std::tgamma((d - a) / 2.0) / std::tgamma(a / 2.0);
}

// Potential density of X killed on hitting the unit sphere.
inline double sphere_resolvent_density(const StableParams& p, const vec& x, const vec& y) {
    detail::require_iso(p, "sphere_resolvent_density");
    detail::require_dim(p, x, "sphere_resolvent_density");
    detail::require_dim(p, y, "sphere_resolvent_density");
    const double rx = norm(x), ry = norm(y);
    require(std::abs(rx - 1.0) > detail::off_sphere_eps && std::abs(ry - 1.0) > detail::off_sphere_eps, errc::domain,
            "sphere_resolvent_density: points must be off the sphere");
    const double dxy = norm(sub(x, y));
    require(dxy > 0.0, errc::singularity, "sphere_resolvent_density: x == y");
    const double free = riesz_kappa(p.alpha, p.dim) * std::pow(dxy, p.alpha - p.dim);
    if (p.alpha <= 1.0) return free;
    // as y -> 0, |y| |x - Ky| -> 1
    if (ry == 0.0) return free * (1.0 - sphere_hit_prob_radial(p, 1.0 / dxy));
    const double arg = ry * norm(sub(x, kelvin(y))) / dxy;
    if (std::abs(arg - 1.0) <= detail::off_sphere_eps) return 0.0;
    return free * (1.0 - sphere_hit_prob_radial(p, arg));
}

// Density of X at first exit from the unit ball (|x| < 1 < |y|) or at first
// entry into it (|x| > 1 > |y|, defective).
inline double ball_passage_density(const StableParams& p, const vec& x, const vec& y) {
    detail::require_iso(p, "ball_passage_density");
    detail::require_dim(p, x, "ball_passage_density");
    detail::require_dim(p, y, "ball_passage_density");
    const double rx = norm(x), ry = norm(y);
    require((rx < 1.0 && ry > 1.0) || (rx > 1.0 && ry < 1.0), errc::domain,
            "ball_passage_density: x and y must lie on opposite sides of the unit sphere");
    const double a = p.alpha, d = p.dim;
    return std::pow(pi, -(d / 2 + 1)) * std::tgamma(d / 2) * std::sin(pi * a / 2) *
           std::pow(std::abs(1 - rx * rx) / std::abs(1 - ry * ry), a / 2) * std::pow(norm(sub(x, y)), -d);
}

inline double never_enter_ball_prob_radial(const StableParams& p, double r) {
    detail::require_iso(p, "never_enter_ball_prob");
    require(r > 1.0, errc::domain, "never_enter_ball_prob: need |x| > 1");
    const double a = p.alpha;
    return beta_inc_reg((r * r - 1.0) / (r * r), a / 2.0, (p.dim - a) / 2.0);
}

inline double never_enter_ball_prob(const StableParams& p, const vec& x) {
    detail::require_dim(p, x, "never_enter_ball_prob");
    return never_enter_ball_prob_radial(p, norm(x));
}

enum class BallRegion { interior, exterior };

// Potential density of X killed on leaving the ball (interior) or on entering
// it (exterior).
inline double ball_resolvent_density(const StableParams& p, const vec& x, const vec& y, BallRegion region) {
    detail::require_iso(p, "ball_resolvent_density");
    detail::require_dim(p, x, "ball_resolvent_density");
    detail::require_dim(p, y, "ball_resolvent_density");
    const double rx = norm(x), ry = norm(y);
    if (region == BallRegion::interior)
        require(rx < 1.0 && ry < 1.0, errc::domain, "ball_resolvent_density: interior needs |x|, |y| < 1");
    else
        require(rx > 1.0 && ry > 1.0, errc::domain, "ball_resolvent_density: exterior needs |x|, |y| > 1");
    const double dxy = norm(sub(x, y));
    require(dxy > 0.0, errc::singularity, "ball_resolvent_density: x == y");
    const double a = p.alpha, d = p.dim;
    const double zeta = std::abs(1 - rx * rx) * std::abs(1 - ry * ry) / (dxy * dxy);
    return std::pow(2.0, -a) * std::pow(pi, -d / 2) * std::tgamma(d / 2) / std::pow(std::tgamma(a / 2), 2) *
           std::pow(dxy, a - d) * detail::ball_beta(zeta, a, p.dim);
}

} // namespace sfl

#pragma once

// Levy processes and Markov additive processes that sit underneath stable
// processes via the Lamperti and Lamperti-Kiu transforms.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "specfun.hpp"
#include "stable_core.hpp"

namespace sfl {

enum class ExponentKind { killed_half_line, censored, radial, radial_conditioned };

inline const char* to_string(ExponentKind k) {
    switch (k) {
    case ExponentKind::killed_half_line: return "killed_half_line";
    case ExponentKind::censored: return "censored";
    case ExponentKind::radial: return "radial";
    case ExponentKind::radial_conditioned: return "radial_conditioned";
    }
    return "?";
}

inline constexpr double strip_margin = 1e-9;

struct Strip {
    double lo, hi; // open interval for Re(iz)
    bool contains(cplx z) const {
        const double w = -z.imag(); // Re(iz)
        return w > lo + strip_margin && w < hi - strip_margin;
    }
};

namespace detail {

inline void check_strip(const Strip& s, cplx z, const char* who) {
    if (!s.contains(z)) {
        fail(errc::strip, std::string(who) + ": Re(iz) = " + std::to_string(-z.imag()) + " outside (" +
                              std::to_string(s.lo) + ", " + std::to_string(s.hi) + ")");
    }
}

// Gamma(a)/Gamma(b) with an exact zero when b is a pole.
inline cplx gq(cplx a, cplx b) { return gamma_ratio({a}, {b}); }

inline void check_kind(ExponentKind k, const StableParams& p) {
    switch (k) {
    case ExponentKind::killed_half_line:
    case ExponentKind::censored:
        require(p.dim == 1, errc::unsupported_dimension, "this exponent kind is one-dimensional");
        break;
    case ExponentKind::radial:
        require(p.dim >= 2 || p.rho == 0.5, errc::domain, "radial exponent needs an isotropic process");
        break;
    case ExponentKind::radial_conditioned:
        require(p.dim >= 2, errc::unsupported_dimension, "radial_conditioned requires d >= 2");
        break;
    }
}

} // namespace detail

inline Strip exponent_strip(ExponentKind k, const StableParams& p) {
    const double a = p.alpha, d = p.dim;
    switch (k) {
    case ExponentKind::killed_half_line: return {-1.0, a};
    case ExponentKind::censored: return {p.arho() - 1.0, p.arho()};
    case ExponentKind::radial: return {-d, a};
    case ExponentKind::radial_conditioned: return {-a, d};
    }
    return {0, 0};
}

// Wiener-Hopf factors; factor_up is a function of -iz, factor_down of iz.
inline std::pair<cplx, cplx> levy_exponent_factors(ExponentKind k, const StableParams& p, cplx z) {
    detail::check_kind(k, p);
    detail::check_strip(exponent_strip(k, p), z, "levy_exponent");
    const cplx iz = cplx(0, 1) * z;
    const double a = p.alpha, ar = p.arho(), arh = p.arho_hat(), d = p.dim;
    using detail::gq;
    switch (k) {
    case ExponentKind::killed_half_line:
        return {gq(a - iz, arh - iz), gq(1.0 + iz, 1.0 - arh + iz)};
    case ExponentKind::censored:
        if (a <= 1.0) return {gq(ar - iz, -iz), gq(1.0 - ar + iz, 1.0 - a + iz)};
        return {(a - 1.0 - iz) * gq(ar - iz, 1.0 - iz), iz * gq(1.0 - ar + iz, 2.0 - a + iz)};
    case ExponentKind::radial:
        return {std::pow(2.0, a) * gq((a - iz) / 2.0, -iz / 2.0), gq((iz + d) / 2.0, (iz + d - a) / 2.0)};
    case ExponentKind::radial_conditioned:
        return {std::pow(2.0, a) * gq((d - iz) / 2.0, (d - a - iz) / 2.0), gq((iz + a) / 2.0, iz / 2.0)};
    }
    return {0.0, 0.0};
}

// The (alpha <= 1) censored factor pair, evaluated at any alpha; kept for
// comparison with the (alpha > 1) pair.
inline std::pair<cplx, cplx> censored_factors_small_alpha_form(const StableParams& p, cplx z) {
    const cplx iz = cplx(0, 1) * z;
    return {detail::gq(p.arho() - iz, -iz), detail::gq(1.0 - p.arho() + iz, 1.0 - p.alpha + iz)};
}

inline cplx levy_exponent(ExponentKind k, const StableParams& p, cplx z) {
    detail::check_kind(k, p);
    detail::check_strip(exponent_strip(k, p), z, "levy_exponent");
    const cplx iz = cplx(0, 1) * z;
    const double a = p.alpha, ar = p.arho(), arh = p.arho_hat(), d = p.dim;
    switch (k) {
    case ExponentKind::killed_half_line:
        return gamma_ratio({a - iz, 1.0 + iz}, {arh - iz, 1.0 - arh + iz});
    case ExponentKind::censored:
        return gamma_ratio({ar - iz, 1.0 - ar + iz}, {-iz, 1.0 - a + iz});
    case ExponentKind::radial:
        return std::pow(2.0, a) * gamma_ratio({(a - iz) / 2.0, (iz + d) / 2.0}, {-iz / 2.0, (iz + d - a) / 2.0});
    case ExponentKind::radial_conditioned:
        return std::pow(2.0, a) * gamma_ratio({(d - iz) / 2.0, (iz + a) / 2.0}, {(d - a - iz) / 2.0, iz / 2.0});
    }
    return 0.0;
}

// Levy density of the process underlying the half-line-killed stable process.
inline double lamperti_stable_jump_density(const StableParams& p, double x) {
    require(p.dim == 1, errc::unsupported_dimension, "lamperti_stable_jump_density: d = 1 only");
    require(x > 0.0, errc::domain, "lamperti_stable_jump_density: x must be positive");
    const double c = std::tgamma(1.0 + p.alpha) / (std::tgamma(p.arho()) * std::tgamma(1.0 - p.arho()));
    // e^x (e^x - 1)^{-1-a} = e^{-a x} (1 - e^{-x})^{-1-a}
    return c * std::exp(-p.alpha * x) * std::pow(-std::expm1(-x), -1.0 - p.alpha);
}

// 2x2 matrix ordered (1,1), (1,-1), (-1,1), (-1,-1).
struct MatrixExponent {
    std::array<cplx, 4> e{};
    Strip strip{0, 0};

    cplx& operator()(int i, int j) { return e[2 * i + j]; }
    const cplx& operator()(int i, int j) const { return e[2 * i + j]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
};

enum class MapKind { stable, conditioned };

inline Strip map_strip(MapKind k, const StableParams& p) {
    return k == MapKind::stable ? Strip{-1.0, p.alpha} : Strip{-p.alpha, 1.0};
}

inline MatrixExponent map_exponent(MapKind k, const StableParams& p, cplx z) {
    require(p.dim == 1, errc::unsupported_dimension, "map_exponent: d = 1 only");
    const Strip s = map_strip(k, p);
    detail::check_strip(s, z, "map_exponent");
    const cplx iz = cplx(0, 1) * z;
    const double a = p.alpha, ar = p.arho(), arh = p.arho_hat();
    MatrixExponent m;
    m.strip = s;
    if (k == MapKind::stable) {
        const cplx n1 = a - iz, n2 = 1.0 + iz;
        m(0, 0) = -gamma_ratio({n1, n2}, {arh - iz, 1.0 - arh + iz});
        m(0, 1) = gamma_ratio({n1, n2}, {arh, 1.0 - arh});
        m(1, 0) = gamma_ratio({n1, n2}, {ar, 1.0 - ar});
        m(1, 1) = -gamma_ratio({n1, n2}, {ar - iz, 1.0 - ar + iz});
    } else {
        const cplx n1 = 1.0 - iz, n2 = a + iz;
        m(0, 0) = -gamma_ratio({n1, n2}, {1.0 - ar - iz, ar + iz});
        m(0, 1) = gamma_ratio({n1, n2}, {ar, 1.0 - ar});
        m(1, 0) = gamma_ratio({n1, n2}, {arh, 1.0 - arh});
        m(1, 1) = -gamma_ratio({n1, n2}, {1.0 - arh - iz, arh + iz});
    }
    return m;
}

struct EigenData {
    double chi = 0.0;
    std::array<double, 2> v{1.0, 1.0};
};

// Leading eigenpair of a real 2x2 matrix F; v normalised by pi.v = 1 with pi
// the stationary law of the generator q.
inline EigenData leading_eig(const MatrixExponent& f, const MatrixExponent& q) {
    for (const auto& c : f.e)
        require(std::abs(c.imag()) <= 1e-12 * (1.0 + std::abs(c.real())), errc::domain, "leading_eig: matrix is not real");
    const double a = f(0, 0).real(), b = f(0, 1).real(), c = f(1, 0).real(), d = f(1, 1).real();
    const double q12 = q(0, 1).real(), q21 = q(1, 0).real();
    require(q12 > 0.0 && q21 > 0.0, errc::domain, "leading_eig: degenerate modulating chain");
    const double tr = a + d, disc = (a - d) * (a - d) + 4.0 * b * c;
    require(disc >= 0.0, errc::domain, "leading_eig: complex eigenvalues");
    const double chi = 0.5 * (tr + std::sqrt(disc));
    // (F - chi) v = 0; pick the better-conditioned row
    std::array<double, 2> v;
    if (std::abs(b) >= std::abs(c)) v = {b, chi - a};
    else v = {chi - d, c};
    if (v[0] < 0 || v[1] < 0) v = {-v[0], -v[1]};
    require(v[0] > 0.0 && v[1] > 0.0, errc::domain, "leading_eig: eigenvector not positive");
    const double p1 = q21 / (q12 + q21), p2 = q12 / (q12 + q21);
    const double nrm = p1 * v[0] + p2 * v[1];
    return {chi, {v[0] / nrm, v[1] / nrm}};
}

using MatrixFn = std::function<MatrixExponent(cplx)>;

inline EigenData leading_eig(const MatrixFn& m, double gamma) {
    return leading_eig(m(cplx(0.0, -gamma)), m(cplx(0.0)));
}

inline EigenData leading_eig(MapKind k, const StableParams& p, double gamma) {
    return leading_eig([&](cplx z) { return map_exponent(k, p, z); }, gamma);
}

// Exponential change of measure of a MAP exponent.
inline MatrixExponent esscher(const MatrixFn& m, double gamma, cplx z) {
    const EigenData ev = leading_eig(m, gamma);
    const MatrixExponent src = m(z - cplx(0.0, gamma));
    MatrixExponent out;
    out.strip = {src.strip.lo - gamma, src.strip.hi - gamma};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = src(i, j) * ev.v[j] / ev.v[i] - (i == j ? ev.chi : 0.0);
    return out;
}

inline MatrixFn map_exponent_fn(MapKind k, const StableParams& p) {
    return [k, p](cplx z) { return map_exponent(k, p, z); };
}

inline MatrixFn esscher_fn(MatrixFn m, double gamma) {
    return [m = std::move(m), gamma](cplx z) { return esscher(m, gamma, z); };
}

// Jump rate constant for (xi, Theta), relative to sigma_1(dphi) dy.
inline double map_jump_constant(double alpha, int d) {
    return std::pow(2.0, alpha + 1.0) * std::tgamma((d + alpha) / 2.0) /
           (std::tgamma(d / 2.0) * std::abs(std::tgamma(-alpha / 2.0)));
}

inline double map_jump_kernel(const StableParams& p, const vec& theta_from, double y, const vec& phi_to) {
    require(p.dim >= 2, errc::unsupported_dimension, "map_jump_kernel: d >= 2 only");
    require((int)theta_from.size() == p.dim && (int)phi_to.size() == p.dim, errc::domain, "map_jump_kernel: dimension mismatch");
    require(std::abs(norm(theta_from) - 1.0) < 1e-12 && std::abs(norm(phi_to) - 1.0) < 1e-12, errc::domain,
            "map_jump_kernel: directions must be unit vectors");
    const double ey = std::exp(y);
    // |e^y phi - theta|^2 = 1 - 2 e^y theta.phi + e^{2y}
    const double r2 = 1.0 - 2.0 * ey * dot(theta_from, phi_to) + ey * ey;
    require(r2 > 0.0, errc::singularity, "map_jump_kernel: singular at (0, theta)");
    return map_jump_constant(p.alpha, p.dim) * std::exp(y * p.dim) * std::pow(r2, -(p.alpha + p.dim) / 2.0);
}

struct PathSample {
    std::vector<double> t;
    std::vector<double> x;
    std::string event; // stopping-event label, empty if none
    std::size_t event_index = 0;
};

enum class Direction { forward, inverse };

// forward: clock t = int_0^s e^{alpha xi} (trapezoid); inverse: the exact
// algebraic inverse of that discretisation, ds = dt / mean(e^{alpha xi}).
inline PathSample lamperti_time_change(const PathSample& path, double alpha, Direction dir) {
    const auto n = path.t.size();
    require(n == path.x.size() && n >= 1, errc::domain, "lamperti_time_change: malformed path");
    for (std::size_t k = 1; k < n; ++k)
        require(path.t[k] > path.t[k - 1], errc::domain, "lamperti_time_change: time grid not strictly increasing");
    PathSample out = path;
    out.t[0] = path.t[0];
    for (std::size_t k = 1; k < n; ++k) {
        const double m = 0.5 * (std::exp(alpha * path.x[k]) + std::exp(alpha * path.x[k - 1]));
        const double dt = path.t[k] - path.t[k - 1];
        out.t[k] = out.t[k - 1] + (dir == Direction::forward ? dt * m : dt / m);
    }
    return out;
}

// Harmonic function of the Doob h-transform to the process conditioned to be
// absorbed at the origin.
inline double h_transform_weight(const StableParams& p, const vec& x) {
    require((int)x.size() == p.dim, errc::domain, "h_transform_weight: dimension mismatch");
    const double r = norm(x);
    require(r > 0.0, errc::singularity, "h_transform_weight: singular at 0");
    if (p.dim == 1) {
        const double s = x[0] >= 0 ? std::sin(pi * p.arho_hat()) : std::sin(pi * p.arho());
        return s * std::pow(r, p.alpha - 1.0);
    }
    return std::pow(r, p.alpha - p.dim);
}

inline double h_transform_weight(const StableParams& p, double x) { return h_transform_weight(p, vec{x}); }

} // namespace sfl

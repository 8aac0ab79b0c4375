#pragma once

// The stable process itself: parameters, exponent, Levy and transition
// densities, free potentials, classification and ladder-height quantities.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "quad.hpp"
#include "specfun.hpp"

namespace sfl {

using vec = std::vector<double>;

inline constexpr double pi = std::numbers::pi;

inline double norm(const vec& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline vec sub(const vec& a, const vec& b) {
    require(a.size() == b.size(), errc::domain, "vector dimension mismatch");
    vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline double dot(const vec& a, const vec& b) {
    require(a.size() == b.size(), errc::domain, "vector dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline vec scaled(const vec& a, double c) {
    vec r(a);
    for (double& v : r) v *= c;
    return r;
}

struct StableParams {
    double alpha = 1.5;
    double rho = 0.5;
    double rho_hat = 0.5;
    int dim = 1;

    double arho() const { return alpha * rho; }
    double arho_hat() const { return alpha * rho_hat; }
    // parameters of the dual process -X
    StableParams dual() const { return {alpha, rho_hat, rho, dim}; }
};

struct Classification {
    bool transient = false;
    bool hits_points = false;
    bool point_recurrent = false;
};

inline StableParams validate_params(double alpha, double rho, int dim) {
    auto str = [](double v) {
        std::ostringstream o;
        o.precision(17);
        o << v;
        return o.str();
    };
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, errc::domain,
            "alpha must lie in (0,2), got " + str(alpha));
    require(dim >= 1, errc::domain, "dimension must be >= 1");
    require(std::isfinite(rho) && rho > 0.0 && rho < 1.0, errc::domain,
            "rho must lie in (0,1) (one-sided cases excluded), got " + str(rho));
    if (dim == 1) {
        require(alpha * rho < 1.0 && alpha * (1.0 - rho) < 1.0, errc::domain,
                "need alpha*rho and alpha*(1-rho) in (0,1); got alpha*rho=" + str(alpha * rho) +
                    ", alpha*(1-rho)=" + str(alpha * (1.0 - rho)));
    } else {
        require(std::abs(rho - 0.5) < 1e-12, errc::domain, "dimension >= 2 requires isotropy (rho = 1/2)");
        rho = 0.5;
    }
    return {alpha, rho, 1.0 - rho, dim};
}

// Psi(theta) = -log E exp(i theta X_1).
inline cplx char_exponent(const StableParams& p, double theta) {
    if (theta == 0.0) return 0.0;
    const double mag = std::pow(std::abs(theta), p.alpha);
    if (p.dim >= 2) return mag;
    const double ph = pi * p.alpha * (0.5 - p.rho);
    return mag * std::polar(1.0, theta > 0 ? ph : -ph);
}

inline cplx char_exponent(const StableParams& p, const vec& theta) {
    if (p.dim == 1) {
        require(theta.size() == 1, errc::domain, "char_exponent: expected a scalar");
        return char_exponent(p, theta[0]);
    }
    require((int)theta.size() == p.dim, errc::domain, "char_exponent: dimension mismatch");
    return std::pow(norm(theta), p.alpha);
}

// Isotropic jump-measure constant: Pi(dy) = c |y|^{-alpha-d} dy.
inline double levy_constant_iso(double alpha, int d) {
    return std::pow(2.0, alpha) * std::tgamma((d + alpha) / 2.0) /
           (std::pow(pi, d / 2.0) * std::abs(std::tgamma(-alpha / 2.0)));
}

inline double levy_density(const StableParams& p, double x) {
    require(p.dim == 1, errc::domain, "levy_density: scalar form is one-dimensional");
    require(x != 0.0, errc::singularity, "levy_density: singular at 0");
    const double s = x > 0 ? std::sin(pi * p.arho()) : std::sin(pi * p.arho_hat());
    return std::tgamma(p.alpha + 1.0) / pi * s * std::pow(std::abs(x), -p.alpha - 1.0);
}

inline double levy_density(const StableParams& p, const vec& x) {
    if (p.dim == 1) {
        require(x.size() == 1, errc::domain, "levy_density: expected a scalar");
        return levy_density(p, x[0]);
    }
    require((int)x.size() == p.dim, errc::domain, "levy_density: dimension mismatch");
    const double r = norm(x);
    require(r != 0.0, errc::singularity, "levy_density: singular at 0");
    return levy_constant_iso(p.alpha, p.dim) * std::pow(r, -p.alpha - p.dim);
}

namespace detail {

// p_t(x) for x >= 0 by rotating the Fourier contour into the lower half plane,
// where e^{-izx} decays and Re Psi stays positive.
inline double transition_density_right(const StableParams& p, double t, double x) {
    const double a = p.alpha;
    const double th0 = pi * a * (0.5 - p.rho);
    const double phi_max = std::min(pi / 2.0, (pi / 2.0 + th0) / a);
    const double phi = x > 0 ? 0.5 * phi_max : 0.0;
    const cplx dir = std::polar(1.0, -phi);
    const cplx rot = std::polar(1.0, th0 - a * phi);
    auto f = [&](double r) {
        const cplx z = r * dir;
        const cplx e = std::exp(-cplx(0, 1) * z * x - t * std::pow(r, a) * rot);
        return (dir * e).real();
    };
    // rescale so the bulk of the integrand sits at s = O(1)
    const double scale = std::min(std::pow(t, -1.0 / a), x > 0 ? 1.0 / (x * std::sin(phi)) : 1e300);
    static thread_local boost::math::quadrature::exp_sinh<double> es(12);
    double err = 0, l1 = 0;
    const double s = scale * es.integrate([&](double u) {
        const double v = f(scale * u);
        return std::isfinite(v) ? v : 0.0;
    }, 1e-12, &err, &l1);
    return s / pi;
}

} // namespace detail

inline double transition_density(const StableParams& p, double t, double x) {
    require(p.dim == 1, errc::unsupported_dimension, "transition_density: only d = 1 is provided");
    require(t > 0.0, errc::domain, "transition_density: t must be positive");
    const double v = x >= 0 ? detail::transition_density_right(p, t, x)
                            : detail::transition_density_right(p.dual(), t, -x);
    return std::max(v, 0.0);
}

// Density of the potential measure int_0^inf P_x(X_t in dy) dt.
inline double free_potential_density(const StableParams& p, const vec& x, const vec& y) {
    require(x.size() == y.size() && (int)x.size() == p.dim, errc::domain, "free_potential_density: dimension mismatch");
    const vec d = sub(y, x);
    const double r = norm(d);
    require(r > 0.0, errc::singularity, "free_potential_density: x == y");
    if (p.dim == 1) {
        require(p.alpha < 1.0, errc::recurrent, "free_potential_density: recurrent for alpha >= 1 in d = 1");
        const double s = d[0] > 0 ? std::sin(pi * p.arho()) : std::sin(pi * p.arho_hat());
        return std::tgamma(1.0 - p.alpha) * s * std::pow(r, p.alpha - 1.0) / pi;
    }
    const double k = std::pow(2.0, -p.alpha) * std::pow(pi, -p.dim / 2.0) *
                     std::tgamma((p.dim - p.alpha) / 2.0) / std::tgamma(p.alpha / 2.0);
    return k * std::pow(r, p.alpha - p.dim);
}

inline double free_potential_density(const StableParams& p, double x, double y) {
    return free_potential_density(p, vec{x}, vec{y});
}

inline Classification classify(const StableParams& p) {
    if (p.dim >= 2) return {true, false, false};
    const bool hit = p.alpha > 1.0;
    return {p.alpha < 1.0, hit, hit};
}

// Density of X_{tau_a^+} - a at u (process started at 0).
inline double overshoot_density(const StableParams& p, double a, double u) {
    require(p.dim == 1, errc::unsupported_dimension, "overshoot_density: d = 1 only");
    require(a > 0.0 && u > 0.0, errc::domain, "overshoot_density: need a > 0 and u > 0");
    const double b = p.arho();
    return std::sin(pi * b) / pi * std::pow(u / a, -b) / (a + u);
}

inline double overshoot_cdf(const StableParams& p, double a, double u) {
    require(a > 0.0, errc::domain, "overshoot_cdf: need a > 0");
    if (u <= 0.0) return 0.0;
    // with t = u/(a+u) the law is Beta(1-b, b)
    const double b = p.arho();
    return beta_inc_reg(u / (a + u), 1.0 - b, b);
}

enum class Side { up, down };

struct LadderQuantities {
    std::function<cplx(cplx)> exponent; // Laplace exponent kappa(lambda)
    double potential_density = 0.0;
    double jump_density = 0.0;
};

inline LadderQuantities ladder_quantities(const StableParams& p, Side side, double x) {
    require(p.dim == 1, errc::unsupported_dimension, "ladder_quantities: d = 1 only");
    require(x > 0.0, errc::domain, "ladder_quantities: x must be positive");
    const double b = side == Side::up ? p.arho() : p.arho_hat();
    LadderQuantities q;
    q.exponent = [b](cplx lam) { return lam == cplx(0.0) ? cplx(0.0) : std::pow(lam, b); };
    q.potential_density = std::pow(x, b - 1.0) / std::tgamma(b);
    q.jump_density = b / std::tgamma(1.0 - b) * std::pow(x, -1.0 - b);
    return q;
}

} // namespace sfl

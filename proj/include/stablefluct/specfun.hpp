#pragma once

// Special functions used throughout: complex log-gamma (Lanczos), the entire
// function 1/Gamma, the unnormalized incomplete beta, and a real-argument
// Gauss hypergeometric function.

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace sfl {

using cplx = std::complex<double>;

struct Accuracy {
    double rel_tol = 1e-15;
    double abs_tol = 1e-300;
    int max_terms = 200000;

    void validate() const {
        require(rel_tol > 0 && abs_tol > 0, errc::config, "Accuracy: tolerances must be positive");
        require(max_terms >= 1, errc::config, "Accuracy: max_terms must be >= 1");
    }
};

namespace detail {

inline constexpr double pole_eps = 1e-14;

// Godfrey's g = 7, n = 9 coefficients.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

// Distance to the nearest non-positive integer, or +inf if Re z > 0.5.
inline double pole_distance(cplx z) {
    if (z.real() > 0.5) return std::numeric_limits<double>::infinity();
    double n = std::round(z.real());
    if (n > 0) n = 0;
    return std::abs(z - cplx(n, 0.0));
}

inline bool near_pole(cplx z) { return pole_distance(z) < pole_eps; }

// sin(pi z) with exact zeros at integers and exact range reduction of Re z.
inline cplx sinpi(cplx z) {
    const double x = z.real(), y = z.imag();
    double r = std::remainder(x, 2.0); // in [-1, 1]
    double s, c;
    if (r == 0.0 || std::abs(r) == 1.0) {
        s = 0.0;
        c = (r == 0.0) ? 1.0 : -1.0;
    } else if (std::abs(r) == 0.5) {
        s = (r > 0) ? 1.0 : -1.0;
        c = 0.0;
    } else {
        s = std::sin(std::numbers::pi * r);
        c = std::cos(std::numbers::pi * r);
    }
    const double py = std::numbers::pi * y;
    return {s * std::cosh(py), c * std::sinh(py)};
}

// Lanczos sum for Re z >= 0.5; returns log Gamma(z).
inline cplx lanczos_lngamma(cplx z) {
    z -= 1.0;
    cplx a = lanczos_p[0];
    for (std::size_t k = 1; k < lanczos_p.size(); ++k) a += lanczos_p[k] / (z + double(k));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

} // namespace detail

// log Gamma(z). For Re z >= 1/2 the imaginary part is the continuous branch
// (agrees with the usual "loggamma"); for Re z < 1/2 it is fixed only modulo
// 2 pi, which is irrelevant once exponentiated.
inline cplx ln_gamma(cplx z) {
    if (detail::near_pole(z)) fail(errc::pole, "ln_gamma: argument at a pole of Gamma");
    if (z.real() >= 0.5) return detail::lanczos_lngamma(z);
    // reflection
    return std::log(std::numbers::pi) - std::log(detail::sinpi(z)) - detail::lanczos_lngamma(1.0 - z);
}

inline double ln_gamma(double x) { return ln_gamma(cplx(x, 0.0)).real(); }

inline cplx gamma(cplx z) {
    if (detail::near_pole(z)) fail(errc::pole, "gamma: argument at a pole");
    if (z.real() >= 0.5) return std::exp(detail::lanczos_lngamma(z));
    return std::numbers::pi / (detail::sinpi(z) * std::exp(detail::lanczos_lngamma(1.0 - z)));
}

inline double gamma(double x) {
    if (detail::near_pole(cplx(x, 0))) fail(errc::pole, "gamma: argument at a pole");
    return std::tgamma(x);
}

// 1/Gamma(z), entire; exact zero at the poles of Gamma.
inline cplx rgamma(cplx z) {
    if (detail::near_pole(z)) return 0.0;
    if (z.real() >= 0.5) return std::exp(-detail::lanczos_lngamma(z));
    return detail::sinpi(z) * std::exp(detail::lanczos_lngamma(1.0 - z)) / std::numbers::pi;
}

inline double rgamma(double x) { return rgamma(cplx(x, 0.0)).real(); }

// prod Gamma(num_i) / prod Gamma(den_j), evaluated in log space so that the
// exponential decay of Gamma along vertical lines cannot underflow. A pole in
// the denominator gives an exact zero.
inline cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
    for (const auto& d : den)
        if (detail::near_pole(d)) return 0.0;
    cplx s = 0.0;
    for (const auto& n : num) s += ln_gamma(n);
    for (const auto& d : den) s -= ln_gamma(d);
    return std::exp(s);
}

inline double beta_fn(double a, double b) {
    require(a > 0 && b > 0, errc::domain, "beta: a, b must be positive");
    return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz).
inline double betacf(double x, double a, double b, const Accuracy& acc) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= acc.max_terms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    fail(errc::divergence, "beta_inc: continued fraction did not converge");
}

} // namespace detail

// Unnormalized lower incomplete beta: int_0^x t^{a-1} (1-t)^{b-1} dt.
inline double beta_inc(double x, double a, double b, const Accuracy& acc = {}) {
    require(x >= 0.0 && x <= 1.0, errc::domain, "beta_inc: x must lie in [0,1]");
    require(a > 0.0 && b > 0.0, errc::domain, "beta_inc: a, b must be positive");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return beta_fn(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double front = std::exp(a * std::log(x) + b * std::log1p(-x));
        return front * detail::betacf(x, a, b, acc) / a;
    }
    const double y = 1.0 - x;
    const double front = std::exp(b * std::log(y) + a * std::log(x));
    return beta_fn(a, b) - front * detail::betacf(y, b, a, acc) / b;
}

// Upper tail: int_x^1 t^{a-1} (1-t)^{b-1} dt, by the t -> 1-t symmetry.
inline double beta_inc_upper(double x, double a, double b, const Accuracy& acc = {}) {
    return beta_inc(1.0 - x, b, a, acc);
}

inline double beta_inc_reg(double x, double a, double b, const Accuracy& acc = {}) {
    if (x == 0.5 && a == b && a > 0.0) return 0.5; // exact by symmetry
    return beta_inc(x, a, b, acc) / beta_fn(a, b);
}

namespace detail {

inline bool nonpos_int(double v) { return v <= 0.0 && v == std::round(v); }

inline double hyp2f1_series(double a, double b, double c, double z, const Accuracy& acc) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < acc.max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= acc.rel_tol * std::abs(sum) && n > 2) return sum;
    }
    fail(errc::divergence, "hyp2f1: series did not converge within max_terms");
}

} // namespace detail

// Gauss 2F1(a,b;c;z) for real arguments, z in (-1, 1].
inline double hyp2f1(double a, double b, double c, double z, const Accuracy& acc = {}) {
    using detail::nonpos_int;
    require(!nonpos_int(c), errc::pole, "hyp2f1: c is a non-positive integer");
    require(z > -1.0 && z <= 1.0, errc::domain, "hyp2f1: z must lie in (-1, 1]");
    if (z == 0.0) return 1.0;
    if (z == 1.0) {
        const double s = c - a - b;
        require(s > 0.0, errc::divergence, "hyp2f1: divergent at z=1 (c-a-b <= 0)");
        return gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
    }
    // terminating series
    if (nonpos_int(a) || nonpos_int(b)) return detail::hyp2f1_series(a, b, c, z, acc);
    if (std::abs(z) <= 0.5) return detail::hyp2f1_series(a, b, c, z, acc);
    if (z < 0.0) {
        // Pfaff: maps (-1,-1/2) into (1/3,1/2)
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, z / (z - 1.0), acc);
    }
    const double s = c - a - b;
    if (std::abs(s - std::round(s)) < 1e-9) {
        // logarithmic case of the 1-z transformation: sum directly
        return detail::hyp2f1_series(a, b, c, z, acc);
    }
    const double w = 1.0 - z;
    const double t1 = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
    const double t2 = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b);
    double f1 = 0.0, f2 = 0.0;
    if (t1 != 0.0) f1 = detail::hyp2f1_series(a, b, 1.0 - s, w, acc);
    if (t2 != 0.0) f2 = detail::hyp2f1_series(c - a, c - b, 1.0 + s, w, acc);
    return t1 * f1 + t2 * std::pow(w, s) * f2;
}

} // namespace sfl

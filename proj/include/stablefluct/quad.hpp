#pragma once

// Thin wrappers over Boost.Math quadrature with library error semantics.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "error.hpp"

namespace sfl::quad {

// Finite interval; copes with integrable endpoint singularities.
// Nodes crowd the endpoints to within rounding, where products such as
// 0 * inf can appear; those contribute nothing and are dropped.
template <class F>
double finite(F f, double a, double b, double tol = 1e-13) {
    if (a == b) return 0.0;
    static thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
    auto g = [&](double x) {
        const double v = f(x);
        return std::isfinite(v) ? v : 0.0;
    };
    double err = 0, l1 = 0;
    const double v = ts.integrate(g, a, b, tol, &err, &l1);
    if (!std::isfinite(v)) fail(errc::divergence, "quadrature produced a non-finite value");
    return v;
}

// [a, inf) for integrands with algebraic or exponential decay.
template <class F>
double to_inf(F f, double a, double tol = 1e-13) {
    static thread_local boost::math::quadrature::exp_sinh<double> es(15);
    double err = 0, l1 = 0;
    const double v = es.integrate([&](double s) {
        const double w = f(a + s);
        return std::isfinite(w) ? w : 0.0;
    }, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
    if (!std::isfinite(v)) fail(errc::divergence, "quadrature produced a non-finite value");
    return v;
}

// Smooth (possibly oscillatory) integrands on a finite interval.
template <class F>
double smooth(F f, double a, double b, double tol = 1e-13, unsigned depth = 20) {
    double err = 0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, depth, tol, &err);
    if (!std::isfinite(v)) fail(errc::divergence, "quadrature produced a non-finite value");
    return v;
}

} // namespace sfl::quad

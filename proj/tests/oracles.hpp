#pragma once

// High-precision reference evaluations used only by the tests.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;
using mpc = boost::multiprecision::cpp_complex_50;

// log Gamma by upward recurrence to |z| >= 60 followed by the Stirling series.
inline mpc ln_gamma(mpc z) {
    mpc shift = 0;
    while (abs(z) < 60 || z.real() < 30) {
        shift += log(z);
        z += 1;
    }
    const mp half_log_2pi = log(2 * boost::math::constants::pi<mp>()) / 2;
    mpc s = (z - mpc(0.5)) * log(z) - z + mpc(half_log_2pi);
    mpc zp = z;
    const mpc z2 = z * z;
    for (int k = 1; k <= 25; ++k) {
        mp b = boost::math::bernoulli_b2n<mp>(k);
        s += mpc(b / (2 * k * (2 * k - 1))) / zp;
        zp *= z2;
    }
    return s - shift;
}

inline std::complex<double> gamma(std::complex<double> z) {
    mpc w(z.real(), z.imag());
    mpc r = exp(ln_gamma(w));
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

inline double gamma(double x) {
    if (x > 0) return static_cast<double>(exp(ln_gamma(mpc(x))).real());
    // reflection for negative non-integer arguments
    mp pi = boost::math::constants::pi<mp>();
    mp v = pi / (sin(pi * mp(x)) * exp(ln_gamma(mpc(1 - mp(x)))).real());
    return static_cast<double>(v);
}

// Plain power series, summed in 50-digit arithmetic.
inline double hyp2f1_series(double a, double b, double c, double z, int terms) {
    mp term = 1, sum = 1, A = a, B = b, C = c, Z = z;
    for (int n = 0; n < terms; ++n) {
        term *= (A + n) * (B + n) / ((C + n) * (n + 1)) * Z;
        sum += term;
    }
    return static_cast<double>(sum);
}

template <class F>
double integrate(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b);
}

} // namespace oracle

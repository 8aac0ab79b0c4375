#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stablefluct/lamperti_map.hpp"

using namespace sfl;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// random z with Re(iz) inside the strip (shrunk by 5%)
std::vector<cplx> strip_points(const Strip& s, int n, unsigned seed) {
    std::mt19937_64 g(seed);
    const double w = s.hi - s.lo;
    std::uniform_real_distribution<double> re(-15.0, 15.0), im(s.lo + 0.05 * w, s.hi - 0.05 * w);
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.emplace_back(re(g), -im(g)); // Re(iz) = -Im z
    return out;
}

const StableParams P15 = validate_params(1.5, 0.5, 1);

} // namespace

TEST(LevyExponent, ValuesAtZero) {
    for (auto [a, r] : {std::pair{1.5, 0.5}, std::pair{0.7, 0.3}, std::pair{1.3, 0.6}}) {
        const auto p = validate_params(a, r, 1);
        const double arh = p.arho_hat();
        const cplx k0 = levy_exponent(ExponentKind::killed_half_line, p, 0.0);
        EXPECT_NEAR(k0.real(), std::tgamma(a) / (std::tgamma(arh) * std::tgamma(1 - arh)), 1e-13);
        EXPECT_GT(k0.real(), 0.0);
        // killing rate = Levy mass of jumps from 1 into (-inf, 0)
        EXPECT_NEAR(k0.real(), levy_density(p, -1.0) / a, 1e-13);
        EXPECT_EQ(levy_exponent(ExponentKind::censored, p, 0.0), cplx(0.0));
    }
    for (int d : {2, 3, 5}) EXPECT_EQ(levy_exponent(ExponentKind::radial, validate_params(1.2, 0.5, d), 0.0), cplx(0.0));
}

TEST(LevyExponent, StripAndKindErrors) {
    EXPECT_THROW(levy_exponent(ExponentKind::killed_half_line, P15, cplx(0.0, 1.0)), sfl::error); // Re(iz) = -1
    EXPECT_THROW(levy_exponent(ExponentKind::killed_half_line, P15, cplx(0.0, -1.5)), sfl::error);
    EXPECT_NO_THROW(levy_exponent(ExponentKind::killed_half_line, P15, cplx(0.0, -1.49)));
    EXPECT_THROW(levy_exponent(ExponentKind::radial_conditioned, P15, 0.3), sfl::error);
    EXPECT_THROW(levy_exponent(ExponentKind::censored, validate_params(1.5, 0.5, 2), 0.3), sfl::error);
    try {
        levy_exponent(ExponentKind::censored, P15, cplx(0, -0.9));
        FAIL();
    } catch (const sfl::error& e) {
        EXPECT_EQ(e.code(), errc::strip);
    }
}

TEST(LevyExponent, FactorProductsAllKinds) {
    const StableParams one = validate_params(1.3, 0.6, 1), small = validate_params(0.7, 0.3, 1);
    const StableParams iso2 = validate_params(1.5, 0.5, 2), iso3 = validate_params(0.8, 0.5, 3);
    struct Case { ExponentKind k; StableParams p; };
    const std::vector<Case> cases = {
        {ExponentKind::killed_half_line, one}, {ExponentKind::killed_half_line, small},
        {ExponentKind::censored, one},         {ExponentKind::censored, small},
        {ExponentKind::radial, iso2},          {ExponentKind::radial, iso3},
        {ExponentKind::radial_conditioned, iso2}, {ExponentKind::radial_conditioned, iso3}};
    for (const auto& c : cases) {
        for (cplx z : strip_points(exponent_strip(c.k, c.p), 100, 17)) {
            const auto [u, d] = levy_exponent_factors(c.k, c.p, z);
            EXPECT_LT(rel(u * d, levy_exponent(c.k, c.p, z)), 1e-10) << to_string(c.k) << " " << z;
        }
    }
}

TEST(LevyExponent, KilledSplitAndJumps) {
    const auto [u, d] = levy_exponent_factors(ExponentKind::killed_half_line, P15, 0.0);
    EXPECT_NE(d, cplx(0.0));
    EXPECT_NE(u, cplx(0.0));
    // up jumps of the Lamperti process are images of stable jumps from 1
    for (auto [a, r] : {std::pair{1.5, 0.5}, std::pair{0.6, 0.7}}) {
        const auto p = validate_params(a, r, 1);
        for (double x : {0.01, 0.5, 3.0}) {
            EXPECT_NEAR(lamperti_stable_jump_density(p, x) / (std::exp(x) * levy_density(p, std::expm1(x))), 1.0, 1e-12);
        }
    }
}

TEST(LevyExponent, CensoredTwoRegimes) {
    const auto p = validate_params(1.3, 0.5, 1);
    for (cplx z : strip_points(exponent_strip(ExponentKind::censored, p), 20, 3)) {
        const auto big = levy_exponent_factors(ExponentKind::censored, p, z);
        const auto small = censored_factors_small_alpha_form(p, z);
        EXPECT_GT(rel(big.first, small.first), 1e-3);
        EXPECT_GT(rel(big.second, small.second), 1e-3);
        const cplx psi = levy_exponent(ExponentKind::censored, p, z);
        EXPECT_LT(rel(big.first * big.second, psi), 1e-10);
        EXPECT_LT(rel(small.first * small.second, psi), 1e-10);
    }
    // drift to -inf for alpha > 1: ascending factor killed, descending not
    const auto f0 = levy_exponent_factors(ExponentKind::censored, p, 0.0);
    EXPECT_NEAR(f0.first.real(), 0.3 * std::tgamma(0.65), 1e-13);
    EXPECT_EQ(f0.second, cplx(0.0));
    // roots at 0 and alpha - 1
    EXPECT_LT(std::abs(levy_exponent(ExponentKind::censored, p, cplx(0, -0.3))), 1e-14);
}

TEST(LevyExponent, RadialProperties) {
    for (int d : {2, 3}) {
        const auto p = validate_params(1.5, 0.5, d);
        // Psi(-i(alpha - d)) = 0: |X|^{alpha-d} martingale
        EXPECT_LT(std::abs(levy_exponent(ExponentKind::radial, p, cplx(0, -(1.5 - d)))), 1e-13);
        // conditioned exponent is the shifted radial exponent
        for (cplx z : strip_points(exponent_strip(ExponentKind::radial_conditioned, p), 20, 9)) {
            EXPECT_LT(rel(levy_exponent(ExponentKind::radial_conditioned, p, z),
                          levy_exponent(ExponentKind::radial, p, z - cplx(0, 1.5 - d))), 1e-12);
        }
        // transience: -Psi(-i lambda) increasing at 0+
        const double h = 1e-5;
        const double slope = (-levy_exponent(ExponentKind::radial, p, cplx(0, -h)).real()) / h;
        EXPECT_GT(slope, 0.0);
    }
}

TEST(LamperiJumpDensity, Asymptotics) {
    const auto p = validate_params(1.5, 0.5, 1);
    const double c = std::tgamma(2.5) / (std::tgamma(0.75) * std::tgamma(0.25));
    EXPECT_NEAR(lamperti_stable_jump_density(p, 20.0) / (c * std::exp(-1.5 * 20.0)), 1.0, 1e-6);
    EXPECT_NEAR(lamperti_stable_jump_density(p, 1e-4) / (c * std::pow(1e-4, -2.5)), 1.0, 2e-4);
    const double ref = oracle::gamma(2.5) / (oracle::gamma(0.75) * oracle::gamma(0.25)) * std::exp(1.0) *
                       std::pow(std::exp(1.0) - 1.0, -2.5);
    EXPECT_NEAR(lamperti_stable_jump_density(p, 1.0) / ref, 1.0, 1e-13);
    EXPECT_THROW(lamperti_stable_jump_density(p, 0.0), sfl::error);
}

namespace {
const std::vector<std::pair<double, double>> map_params = {{1.5, 0.5}, {1.3, 0.6}, {0.7, 0.5}, {1.7, 0.45}};
}

TEST(MapExponent, GeneratorAtZero) {
    for (auto [a, r] : map_params) {
        const auto p = validate_params(a, r, 1);
        for (auto k : {MapKind::stable, MapKind::conditioned}) {
            const auto q = map_exponent(k, p, 0.0);
            EXPECT_NEAR(std::abs(q(0, 0) + q(0, 1)), 0.0, 1e-14);
            EXPECT_NEAR(std::abs(q(1, 0) + q(1, 1)), 0.0, 1e-14);
            EXPECT_GT(q(0, 1).real(), 0.0);
            EXPECT_GT(q(1, 0).real(), 0.0);
        }
        // det vanishes at iz = alpha - 1
        const auto m = map_exponent(MapKind::stable, p, cplx(0, -(a - 1)));
        EXPECT_LT(std::abs(m.det()), 1e-10);
    }
}

TEST(MapExponent, DualityWithReflection) {
    // conditioned exponent at z = swap of states of the stable exponent at -z
    for (auto [a, r] : map_params) {
        const auto p = validate_params(a, r, 1);
        for (cplx z : strip_points(map_strip(MapKind::conditioned, p), 50, 21)) {
            const auto c = map_exponent(MapKind::conditioned, p, z);
            const auto s = map_exponent(MapKind::stable, p, -z);
            EXPECT_LT(rel(c.det(), s.det()), 1e-9);
            EXPECT_LT(rel(c(0, 0), s(1, 1)), 1e-10);
            EXPECT_LT(rel(c(0, 1), s(1, 0)), 1e-10);
        }
    }
}

TEST(MapExponent, EsscherReproducesConditioned) {
    for (auto [a, r] : map_params) {
        const auto p = validate_params(a, r, 1);
        const auto st = map_exponent_fn(MapKind::stable, p);
        const auto ev = leading_eig(st, a - 1.0);
        EXPECT_NEAR(ev.chi, 0.0, 1e-12);
        EXPECT_NEAR(ev.v[0] / ev.v[1], std::sin(pi * p.arho_hat()) / std::sin(pi * p.arho()), 1e-10);
        for (cplx z : strip_points(map_strip(MapKind::conditioned, p), 30, 5)) {
            const auto e = esscher(st, a - 1.0, z);
            const auto c = map_exponent(MapKind::conditioned, p, z);
            for (int k = 0; k < 4; ++k) EXPECT_LT(rel(e.e[k], c.e[k]), 1e-10) << a << " " << z << " " << k;
        }
        const auto e0 = esscher(st, a - 1.0, 0.0);
        EXPECT_NEAR(std::abs(e0(0, 0) + e0(0, 1)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(e0(1, 0) + e0(1, 1)), 0.0, 1e-12);
    }
}

TEST(MapExponent, EsscherIdentityAndInverse) {
    const auto p = validate_params(1.3, 0.6, 1);
    const auto st = map_exponent_fn(MapKind::stable, p);
    for (double g : {0.0, 0.2, -0.4}) {
        const auto back = esscher_fn(esscher_fn(st, g), -g);
        for (cplx z : {cplx(0.7, 0.1), cplx(-2.0, -0.3), cplx(0.0)}) {
            const auto m = st(z), b = back(z);
            for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(m.e[k] - b.e[k]), 1e-10 * (1 + std::abs(m.e[k])));
            if (g == 0.0) {
                const auto e = esscher(st, 0.0, z);
                for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(m.e[k] - e.e[k]), 1e-13 * (1 + std::abs(m.e[k])));
            }
        }
    }
}

TEST(LeadingEig, ZeroAndConvexity) {
    for (auto [a, r] : map_params) {
        const auto p = validate_params(a, r, 1);
        const auto e0 = leading_eig(MapKind::stable, p, 0.0);
        EXPECT_NEAR(e0.chi, 0.0, 1e-13);
        EXPECT_NEAR(e0.v[0], 1.0, 1e-12);
        EXPECT_NEAR(e0.v[1], 1.0, 1e-12);
        // 21-point grid in (-1, alpha) with margin
        const double lo = -0.9, hi = a - 0.1;
        std::vector<double> chi;
        for (int i = 0; i <= 20; ++i) {
            const double g = lo + (hi - lo) * i / 20.0;
            const auto f = map_exponent(MapKind::stable, p, cplx(0, -g));
            const auto ev = leading_eig(f, map_exponent(MapKind::stable, p, 0.0));
            // larger root
            const double tr = (f(0, 0) + f(1, 1)).real();
            EXPECT_GE(ev.chi, tr - ev.chi - 1e-12);
            chi.push_back(ev.chi);
        }
        for (int i = 1; i < 20; ++i) EXPECT_GE(chi[i - 1] - 2 * chi[i] + chi[i + 1], -1e-10) << a << " " << i;
    }
    MatrixExponent bad;
    bad.e = {cplx(1, 1), 0.0, 0.0, 1.0};
    EXPECT_THROW(leading_eig(bad, map_exponent(MapKind::stable, P15, 0.0)), sfl::error);
}

TEST(MapJumpKernel, SymmetryAndValues) {
    const auto p = validate_params(1.5, 0.5, 3);
    const vec th = {1, 0, 0}, ph = {0.6, 0.8, 0};
    for (double y : {-1.0, 0.3, 2.0}) {
        EXPECT_NEAR(map_jump_kernel(p, th, y, ph) * std::exp(-3 * y), map_jump_kernel(p, ph, y, th) * std::exp(-3 * y), 1e-14);
    }
    const double c = map_jump_constant(1.5, 3);
    EXPECT_NEAR(map_jump_kernel(p, th, 0.4, th), c * std::exp(1.2) * std::pow(std::expm1(0.4), -4.5), 1e-12);
    EXPECT_THROW(map_jump_kernel(p, th, 0.0, th), sfl::error);
    // d = 2, alpha = 1, y = 0.5, right angle
    const auto q = validate_params(1.0, 0.5, 2);
    const double e = std::exp(0.5);
    const double ref = 4.0 * oracle::gamma(1.5) / (oracle::gamma(1.0) * std::abs(oracle::gamma(-0.5))) * e * e *
                       std::pow(1.0 + e * e, -1.5);
    EXPECT_NEAR(map_jump_kernel(q, vec{1, 0}, 0.5, vec{0, 1}) / ref, 1.0, 1e-13);
}

TEST(MapJumpKernel, RateMatchesLevyMeasure) {
    // jumps from the unit point theta: total rate of landing in the annulus
    // e^{y0} < |w| < e^{y1}, computed from the kernel and from Pi directly
    for (double a : {0.8, 1.5}) {
        const auto p = validate_params(a, 0.5, 2);
        const vec th = {1, 0};
        const double y0 = 0.5, y1 = 1.0;
        const int N = 4096;
        double from_kernel = 0, from_levy = 0;
        for (int k = 0; k < N; ++k) {
            const double ang = 2 * pi * (k + 0.5) / N;
            const vec ph = {std::cos(ang), std::sin(ang)};
            from_kernel += quad::smooth([&](double y) { return map_jump_kernel(p, th, y, ph); }, y0, y1) / N;
            from_levy += quad::smooth([&](double r) { return r * levy_density(p, vec{r * ph[0] - 1, r * ph[1]}); },
                                      std::exp(y0), std::exp(y1)) * 2 * pi / N;
        }
        EXPECT_NEAR(from_kernel / from_levy, 1.0, 1e-10) << a;
    }
}

TEST(TimeChange, ConstantAndRoundTrip) {
    PathSample z;
    for (int k = 0; k <= 10; ++k) {
        z.t.push_back(0.1 * k);
        z.x.push_back(0.0);
    }
    auto f = lamperti_time_change(z, 1.5, Direction::forward);
    for (int k = 0; k <= 10; ++k) EXPECT_NEAR(f.t[k], z.t[k], 1e-15);
    PathSample c = z;
    for (double& v : c.x) v = 0.7;
    // phi(t) = t e^{-alpha c}: the forward clock runs at e^{alpha c}
    const auto fc = lamperti_time_change(c, 1.5, Direction::forward);
    const auto ic = lamperti_time_change(c, 1.5, Direction::inverse);
    for (int k = 0; k <= 10; ++k) {
        EXPECT_NEAR(fc.t[k], z.t[k] * std::exp(1.05), 1e-13);
        EXPECT_NEAR(ic.t[k], z.t[k] * std::exp(-1.05), 1e-13);
    }
    // random walk path with 10^4 steps
    std::mt19937_64 g(4);
    std::normal_distribution<double> n(0.0, 0.05);
    PathSample w;
    double x = 0;
    for (int k = 0; k <= 10000; ++k) {
        w.t.push_back(1e-3 * k);
        w.x.push_back(x);
        x += n(g);
    }
    const auto rt = lamperti_time_change(lamperti_time_change(w, 1.2, Direction::inverse), 1.2, Direction::forward);
    double dev = 0;
    for (std::size_t k = 0; k < w.t.size(); ++k) dev = std::max(dev, std::abs(rt.t[k] - w.t[k]) / std::max(w.t[k], 1e-300));
    EXPECT_LT(dev, 1e-9);
    PathSample bad = z;
    bad.t[3] = bad.t[2];
    EXPECT_THROW(lamperti_time_change(bad, 1.0, Direction::forward), sfl::error);
}

TEST(HTransform, Weights) {
    const auto s = validate_params(1.5, 0.5, 1);
    EXPECT_DOUBLE_EQ(h_transform_weight(s, 1.7), h_transform_weight(s, -1.7));
    const auto p = validate_params(1.4, 0.6, 1);
    EXPECT_NEAR(h_transform_weight(p, 2.0), std::sin(0.56 * pi) * std::pow(2.0, 0.4), 1e-15);
    // x > 0 carries sin(pi alpha rho_hat) = sin(0.56 pi), not sin(0.84 pi)
    const auto q = validate_params(1.5, 0.5, 3);
    EXPECT_NEAR(h_transform_weight(q, vec{0, 2, 0}), std::pow(2.0, -1.5), 1e-15);
    EXPECT_THROW(h_transform_weight(p, 0.0), sfl::error);
}

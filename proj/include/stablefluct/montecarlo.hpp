#pragma once

// Brute-force path simulation used as an independent oracle.
//
// Paths are random-walk skeletons built from exact stable increments. The
// step is either fixed (kappa == 0) or adapted to the current distance from
// the relevant boundary, h = (kappa * dist)^alpha, so that every step is a
// fixed fraction of the remaining room in the scale-invariant sense. Events
// are detected at skeleton points only; the resulting bias is removed by
// kappa-halving extrapolation (see extrapolate / compare_ks_extrapolated).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "stable_core.hpp"

namespace sfl::mc {

enum class Scenario { interval_exit, interval_entrance, ball_exit, ball_entrance, occupation, point_hit_proxy };

inline const char* to_string(Scenario s) {
    switch (s) {
    case Scenario::interval_exit: return "interval_exit";
    case Scenario::interval_entrance: return "interval_entrance";
    case Scenario::ball_exit: return "ball_exit";
    case Scenario::ball_entrance: return "ball_entrance";
    case Scenario::occupation: return "occupation";
    case Scenario::point_hit_proxy: return "point_hit_proxy";
    }
    return "?";
}

// Scenario geometry:
//   interval_*      : the interval (lo, hi); lo may be -inf (half-line)
//   ball_*          : the unit ball centred at the origin
//   occupation      : time spent in [lo, hi] (d = 1) or in the ball of
//                     radius hi (d >= 2) before horizon or escape; the
//                     step is dt inside the set and at least dt outside
//   point_hit_proxy : d = 1; hit (hi - eps, hi + eps) before (lo - eps, lo + eps)
struct SimConfig {
    double dt = 1e-3;     // fixed step, used when kappa == 0
    double kappa = 0.0;   // adaptive step ratio
    double horizon = 1e6; // time horizon; paths still running are censored
    std::uint64_t n_paths = 1000;
    std::uint64_t seed = 0;
    Scenario scenario = Scenario::interval_exit;
    vec x0{0.0};
    double lo = -1.0;
    double hi = 1.0;
    double eps = 0.0;
    double escape_radius = std::numeric_limits<double>::infinity();
    std::uint64_t max_steps = 50'000'000;
    unsigned threads = 0; // 0: hardware concurrency
};

enum class Outcome { event, escaped, censored };

struct EventRecord {
    Outcome outcome = Outcome::censored;
    double time = 0.0;     // event time, or occupation time for that scenario
    std::uint64_t steps = 0;
    vec before;            // skeleton point before the event
    vec after;             // first skeleton point at which the event is seen
    double excess = std::numeric_limits<double>::quiet_NaN(); // distance of `after` past the crossed boundary
};

struct EmpiricalDistribution {
    std::vector<double> samples; // sorted
    std::size_t n = 0;
    std::size_t censored = 0;
};

struct Estimate {
    EmpiricalDistribution dist;
    double mean = 0.0;
    double std_err = 0.0;
};

struct VerificationReport {
    std::string name;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    std::optional<double> ks_stat;
    std::optional<double> ks_critical;
    bool pass = false;
    std::string tolerance_rule;
};

// ---------------------------------------------------------------- RNG

// Per-path stream keyed by (seed, path index): results do not depend on how
// paths are distributed over threads.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path) : eng_(mix(mix(seed) ^ (path + 0x9e3779b97f4a7c15ULL))) {}

    double uniform() { return std::generate_canonical<double, 53>(eng_); }
    double uniform_open() {
        double u;
        do u = uniform(); while (u == 0.0);
        return u;
    }
    double exponential() { return -std::log(uniform_open()); }
    double normal() { return nd_(eng_); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::mt19937_64 eng_;
    std::normal_distribution<double> nd_;
};

// ---------------------------------------------------------------- sampling

namespace detail {

// Chambers-Mallows-Stuck with skewness angle c. With V uniform on
// (-pi/2, pi/2) and W standard exponential the output has
// -log E e^{i theta X} = |theta|^a exp(-i a c sgn theta), and X >= 0 exactly
// when V > -c. c = pi (rho - 1/2) gives the two-sided law with positivity rho;
// c = pi/2 the positive law with Laplace exponent lambda^a (a < 1).
inline double cms(double a, double c, PathRng& rng) {
    const double v = pi * (rng.uniform_open() - 0.5);
    const double w = rng.exponential();
    const double s = a * (v + c);
    if (a == 1.0) return std::sin(s) / std::cos(v);
    return std::sin(s) / std::pow(std::cos(v), 1.0 / a) * std::pow(std::cos(v - s) / w, (1.0 - a) / a);
}

} // namespace detail

// One exact increment over time dt. For d >= 2 the increment is
// sqrt(2) B_S with S an (alpha/2)-stable subordinator increment.
inline vec sample_increment(const StableParams& p, double dt, PathRng& rng) {
    require(dt > 0.0, errc::config, "sample_increment: dt must be positive");
    const double a = p.alpha;
    if (p.dim == 1) return {std::pow(dt, 1.0 / a) * detail::cms(a, pi * (p.rho - 0.5), rng)};
    const double s = std::pow(dt, 2.0 / a) * detail::cms(a / 2.0, pi / 2.0, rng);
    const double sd = std::sqrt(2.0 * s);
    vec x(p.dim);
    for (double& v : x) v = sd * rng.normal();
    return x;
}

inline double sample_increment_1d(const StableParams& p, double dt, PathRng& rng) {
    return std::pow(dt, 1.0 / p.alpha) * detail::cms(p.alpha, pi * (p.rho - 0.5), rng);
}

// ---------------------------------------------------------------- simulation

inline void validate_config(const StableParams& p, const SimConfig& c) {
    require(c.n_paths >= 1, errc::config, "n_paths must be >= 1");
    require(c.kappa > 0.0 || c.dt > 0.0, errc::config, "need dt > 0 or kappa > 0");
    require(c.kappa >= 0.0 && c.kappa < 1.0, errc::config, "kappa must lie in [0, 1)");
    require(c.horizon > 0.0, errc::config, "horizon must be positive");
    require((int)c.x0.size() == p.dim, errc::config, "x0 has the wrong dimension");
    const bool one_d = c.scenario == Scenario::interval_exit || c.scenario == Scenario::interval_entrance ||
                       c.scenario == Scenario::point_hit_proxy;
    require(!one_d || p.dim == 1, errc::config, std::string(to_string(c.scenario)) + " needs d = 1");
    require(c.lo < c.hi, errc::config, "need lo < hi");
    const double r = norm(c.x0);
    switch (c.scenario) {
    case Scenario::interval_exit:
        require(c.x0[0] > c.lo && c.x0[0] < c.hi, errc::config, "interval_exit: x0 must be inside (lo, hi)");
        break;
    case Scenario::interval_entrance:
        require(c.x0[0] < c.lo || c.x0[0] > c.hi, errc::config, "interval_entrance: x0 must lie outside [lo, hi]");
        require(std::isfinite(c.lo), errc::config, "interval_entrance: lo must be finite");
        break;
    case Scenario::ball_exit: require(r < 1.0, errc::config, "ball_exit: x0 must be inside the unit ball"); break;
    case Scenario::ball_entrance: require(r > 1.0, errc::config, "ball_entrance: x0 must lie outside the closed unit ball"); break;
    case Scenario::occupation:
        require(c.dt > 0.0, errc::config, "occupation needs dt > 0 (step inside the set)");
        break;
    case Scenario::point_hit_proxy:
        require(c.eps > 0.0 && 2.0 * c.eps < c.hi - c.lo, errc::config, "point_hit_proxy: need 0 < eps < (hi-lo)/2");
        require(std::abs(c.x0[0] - c.lo) > c.eps && std::abs(c.x0[0] - c.hi) > c.eps, errc::config,
                "point_hit_proxy: x0 already inside a target neighbourhood");
        break;
    }
}

namespace detail {

// A path position. In d = 1 it is kept as (anchor, offset) with the anchor
// at the nearer finite end of (lo, hi), so that distances to that end keep
// full relative precision: overshoots far below 1e-16 are common when
// alpha * rho is close to 1, and x = 1 + u would round them to 0.
struct Position {
    double anchor = 0.0;
    double off = 0.0;
    vec x; // d >= 2

    double rel(double b) const { return (anchor - b) + off; } // x - b, d = 1
    double value() const { return anchor + off; }
    double radius() const { return x.empty() ? std::abs(value()) : norm(x); }

    void reanchor(const SimConfig& c) {
        if (!x.empty()) return;
        const double v = value();
        const bool lo_ok = std::isfinite(c.lo), hi_ok = std::isfinite(c.hi);
        if (!lo_ok && !hi_ok) return;
        const double b = !hi_ok || (lo_ok && std::abs(v - c.lo) < std::abs(v - c.hi)) ? c.lo : c.hi;
        if (b == anchor) return;
        off = rel(b);
        anchor = b;
    }
    vec point() const { return x.empty() ? vec{value()} : x; }
};

// Distance from the position to the boundary whose crossing ends the path.
inline double room(const SimConfig& c, const Position& q) {
    switch (c.scenario) {
    case Scenario::interval_exit: return std::min(q.rel(c.lo), -q.rel(c.hi));
    case Scenario::interval_entrance: return q.rel(c.hi) >= 0 ? q.rel(c.hi) : -q.rel(c.lo);
    case Scenario::ball_exit: return 1.0 - norm(q.x);
    case Scenario::ball_entrance: return norm(q.x) - 1.0;
    case Scenario::point_hit_proxy: return std::min(std::abs(q.rel(c.lo)), std::abs(q.rel(c.hi))) - c.eps;
    case Scenario::occupation:
        if (q.x.empty()) return std::max({-q.rel(c.lo), q.rel(c.hi), 0.0});
        return std::max(norm(q.x) - c.hi, 0.0);
    }
    return 0.0;
}

// 1: event, -1: path ends without event (other target, escape), 0: continue.
// Targets are closed so that room() > 0 whenever the path continues.
inline int classify(const SimConfig& c, const Position& q) {
    switch (c.scenario) {
    case Scenario::interval_exit: return (q.rel(c.lo) <= 0 || q.rel(c.hi) >= 0) ? 1 : 0;
    case Scenario::interval_entrance:
        if (q.rel(c.lo) >= 0 && q.rel(c.hi) <= 0) return 1;
        return q.radius() > c.escape_radius ? -1 : 0;
    case Scenario::ball_exit: return norm(q.x) >= 1.0 ? 1 : 0;
    case Scenario::ball_entrance: {
        const double r = norm(q.x);
        if (r <= 1.0) return 1;
        return r > c.escape_radius ? -1 : 0;
    }
    case Scenario::point_hit_proxy:
        if (std::abs(q.rel(c.hi)) <= c.eps) return 1;
        if (std::abs(q.rel(c.lo)) <= c.eps) return -1;
        return 0;
    case Scenario::occupation: return q.radius() > c.escape_radius ? -1 : 0;
    }
    return 0;
}

inline bool in_occupation_set(const SimConfig& c, const Position& q) {
    if (q.x.empty()) return q.rel(c.lo) >= 0 && q.rel(c.hi) <= 0;
    return norm(q.x) <= c.hi;
}

// Distance past the crossed boundary at the first skeleton point beyond it.
inline double excess(const SimConfig& c, const Position& q) {
    switch (c.scenario) {
    case Scenario::interval_exit: return q.rel(c.hi) >= 0 ? q.rel(c.hi) : -q.rel(c.lo);
    case Scenario::interval_entrance: return std::min(q.rel(c.lo), -q.rel(c.hi));
    case Scenario::ball_exit: return norm(q.x) - 1.0;
    case Scenario::ball_entrance: return 1.0 - norm(q.x);
    default: return std::numeric_limits<double>::quiet_NaN();
    }
}

inline EventRecord simulate_path(const StableParams& p, const SimConfig& c, std::uint64_t path) {
    PathRng rng(c.seed, path);
    EventRecord r;
    Position q;
    if (p.dim == 1) q.off = c.x0[0];
    else q.x = c.x0;
    q.reanchor(c);
    double t = 0.0;
    const bool occ = c.scenario == Scenario::occupation;
    for (std::uint64_t k = 0; k < c.max_steps; ++k) {
        double h = c.kappa > 0.0 ? std::pow(c.kappa * room(c, q), p.alpha) : c.dt;
        h = std::max(h, std::numeric_limits<double>::denorm_min()); // underflow must not freeze the path
        if (occ) {
            // fixed step inside the set, geometric growth away from it
            h = std::max(h, c.dt);
            h = std::min(h, c.horizon - t);
            if (h <= 0.0) break;
            if (in_occupation_set(c, q)) r.time += h; // left-point rule
        }
        Position n = q;
        if (p.dim == 1) {
            n.off += sample_increment_1d(p, h, rng);
        } else {
            const vec dx = sample_increment(p, h, rng);
            for (int i = 0; i < p.dim; ++i) n.x[i] += dx[i];
        }
        t += h;
        r.steps = k + 1;
        const int s = classify(c, n);
        if (s != 0) {
            r.outcome = s > 0 ? Outcome::event : Outcome::escaped;
            if (!occ) r.time = t;
            r.before = q.point();
            r.after = n.point();
            r.excess = s > 0 ? excess(c, n) : std::numeric_limits<double>::quiet_NaN();
            return r;
        }
        q = std::move(n);
        q.reanchor(c);
        if (!occ && t >= c.horizon) break;
    }
    // an occupation path that reaches the horizon is complete, not censored
    r.outcome = (occ && t >= c.horizon) ? Outcome::escaped : Outcome::censored;
    r.before = q.point();
    r.after = r.before;
    if (!occ) r.time = t;
    return r;
}

} // namespace detail

// Paths are split into contiguous blocks, one per worker; each record is
// written to its own slot so the output is independent of the thread count.
inline std::vector<EventRecord> simulate_event(const StableParams& p, const SimConfig& c) {
    validate_config(p, c);
    std::vector<EventRecord> out(c.n_paths);
    unsigned nt = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = (unsigned)std::min<std::uint64_t>(nt, c.n_paths);
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) out[i] = detail::simulate_path(p, c, i);
    };
    if (nt <= 1) {
        work(0, c.n_paths);
        return out;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (c.n_paths + nt - 1) / nt;
    for (unsigned w = 0; w < nt; ++w) {
        const std::uint64_t b = w * chunk, e = std::min<std::uint64_t>(c.n_paths, b + chunk);
        if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
    return out;
}

// ---------------------------------------------------------------- estimation

// Plug-in mean and standard error sqrt(var_n / n) of the given values.
inline Estimate estimate(std::vector<double> values, std::size_t censored = 0) {
    require(!values.empty(), errc::config, "estimate: no records");
    Estimate e;
    const double n = (double)values.size();
    double m = 0;
    for (double v : values) m += v;
    m /= n;
    double s2 = 0;
    for (double v : values) s2 += (v - m) * (v - m);
    e.mean = m;
    e.std_err = std::sqrt(s2 / n / n);
    std::sort(values.begin(), values.end());
    e.dist.n = values.size();
    e.dist.samples = std::move(values);
    e.dist.censored = censored;
    return e;
}

// Statistic over records. The functor returns the value for a path, or
// nullopt to exclude it; censored paths are never passed to it and are
// counted in dist.censored.
template <class F>
Estimate estimate(const std::vector<EventRecord>& recs, F value) {
    require(!recs.empty(), errc::config, "estimate: empty record set");
    std::vector<double> v;
    v.reserve(recs.size());
    std::size_t cens = 0;
    for (const auto& r : recs) {
        if (r.outcome == Outcome::censored) {
            ++cens;
            continue;
        }
        if (auto x = value(r)) v.push_back(*x);
    }
    return estimate(std::move(v), cens);
}

// Richardson combination for a bias of order kappa^order when kappa is
// halved: (2^order fine - coarse) / (2^order - 1), errors added in quadrature.
inline Estimate extrapolate(const Estimate& coarse, const Estimate& fine, double order) {
    const double r = std::pow(2.0, order);
    const double cf = r / (r - 1.0), cc = 1.0 / (r - 1.0);
    Estimate e = fine;
    e.mean = cf * fine.mean - cc * coarse.mean;
    e.std_err = std::hypot(cf * fine.std_err, cc * coarse.std_err);
    e.dist.censored = fine.dist.censored + coarse.dist.censored;
    return e;
}

// ---------------------------------------------------------------- comparison

// Asymptotic 1% Kolmogorov quantile with Stephens' finite-sample correction.
inline double ks_critical_1pct(double n) {
    require(n > 0.0, errc::config, "ks_critical_1pct: need n > 0");
    const double s = std::sqrt(n);
    return 1.6276 / (s + 0.12 + 0.11 / s);
}

inline double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
    require(!sorted.empty(), errc::config, "ks_statistic: no samples");
    const double n = (double)sorted.size();
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
    }
    return d;
}

inline VerificationReport compare(const std::string& name, double closed_form, const Estimate& est) {
    require(std::isfinite(closed_form), errc::config, "compare: closed form is not finite");
    VerificationReport r;
    r.name = name;
    r.closed_form = closed_form;
    r.estimate = est.mean;
    r.std_err = est.std_err;
    r.pass = std::abs(closed_form - est.mean) <= 3.0 * est.std_err;
    r.tolerance_rule = "|closed_form - estimate| <= 3 std_err";
    return r;
}

inline VerificationReport compare(const std::string& name, const std::function<double(double)>& cdf,
                                  const Estimate& est) {
    require(!est.dist.samples.empty(), errc::config, "compare: distribution has no samples");
    VerificationReport r;
    r.name = name;
    r.ks_stat = ks_statistic(est.dist.samples, cdf);
    r.ks_critical = ks_critical_1pct((double)est.dist.n);
    r.estimate = *r.ks_stat;
    r.pass = *r.ks_stat <= *r.ks_critical;
    r.tolerance_rule = "KS statistic <= 1% critical value";
    return r;
}

// KS test of the extrapolated empirical CDF G = cf F_fine - cc F_coarse.
// For independent samples the limit of sqrt-scaled G - F is a Brownian bridge
// with variance factor cf^2/n_fine + cc^2/n_coarse, which fixes the
// effective sample size used for the critical value.
inline VerificationReport compare_ks_extrapolated(const std::string& name, const std::function<double(double)>& cdf,
                                                  const Estimate& coarse, const Estimate& fine, double order) {
    const auto& a = coarse.dist.samples;
    const auto& b = fine.dist.samples;
    require(!a.empty() && !b.empty(), errc::config, "compare: distribution has no samples");
    const double r = std::pow(2.0, order);
    const double cf = r / (r - 1.0), cc = 1.0 / (r - 1.0);
    const double na = (double)a.size(), nb = (double)b.size();
    // merge-walk over all jump points; compare both one-sided limits
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const double x = (j == b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
        const double left = cf * j / nb - cc * i / na;
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        const double right = cf * j / nb - cc * i / na;
        const double f = cdf(x);
        d = std::max({d, std::abs(f - left), std::abs(f - right)});
    }
    VerificationReport rep;
    rep.name = name;
    rep.ks_stat = d;
    rep.ks_critical = ks_critical_1pct(1.0 / (cf * cf / nb + cc * cc / na));
    rep.estimate = d;
    rep.pass = d <= *rep.ks_critical;
    rep.tolerance_rule = "extrapolated KS statistic <= 1% critical value (effective n)";
    return rep;
}

// ---------------------------------------------------------------- helpers

inline std::optional<double> indicator(bool b) { return b ? 1.0 : 0.0; }

} // namespace sfl::mc

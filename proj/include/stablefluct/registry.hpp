#pragma once

// Name -> callable table behind the command-line front end. Every public
// evaluation in the library that maps (params, numbers) to numbers is listed
// here, so eval and tabulate can reach it by name.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "fluct_ball.hpp"
#include "fluct_interval.hpp"
#include "lamperti_map.hpp"
#include "specfun.hpp"
#include "stable_core.hpp"

namespace sfl::registry {

// Inputs keyed by name. Numbers are stored as vectors: scalars have one
// component. A one-component value passed where a d-vector is expected is
// read as a point on the first axis.
struct Inputs {
    std::map<std::string, vec> num;
    std::map<std::string, std::string> str;

    double scalar(const std::string& k) const {
        const auto it = num.find(k);
        require(it != num.end(), errc::config, "missing input '" + k + "'");
        require(it->second.size() == 1, errc::config, "input '" + k + "' must be a scalar");
        return it->second[0];
    }
    vec point(const std::string& k, int dim) const {
        const auto it = num.find(k);
        require(it != num.end(), errc::config, "missing input '" + k + "'");
        if ((int)it->second.size() == dim) return it->second;
        require(it->second.size() == 1, errc::config,
                "input '" + k + "' must have 1 or " + std::to_string(dim) + " components");
        vec v(dim, 0.0);
        v[0] = it->second[0];
        return v;
    }
    vec list(const std::string& k) const {
        const auto it = num.find(k);
        require(it != num.end(), errc::config, "missing input '" + k + "'");
        return it->second;
    }
    const std::string& option(const std::string& k) const {
        const auto it = str.find(k);
        require(it != str.end(), errc::config, "missing option '" + k + "'");
        return it->second;
    }
    cplx complex_z() const { return {scalar("z_re"), num.count("z_im") ? scalar("z_im") : 0.0}; }
};

struct Identity {
    std::string name;
    std::string module;
    std::vector<std::string> inputs;  // numeric inputs
    std::vector<std::string> options; // string-valued inputs
    std::vector<std::string> labels;  // component names; empty for a scalar value
    bool uses_params = true;
    std::function<vec(const StableParams&, const Inputs&)> fn;
};

namespace detail {

inline ExponentKind exponent_kind(const std::string& s) {
    if (s == "killed_half_line") return ExponentKind::killed_half_line;
    if (s == "censored") return ExponentKind::censored;
    if (s == "radial") return ExponentKind::radial;
    if (s == "radial_conditioned") return ExponentKind::radial_conditioned;
    fail(errc::config, "unknown exponent kind '" + s + "' (killed_half_line|censored|radial|radial_conditioned)");
}

inline MapKind map_kind(const std::string& s) {
    if (s == "stable") return MapKind::stable;
    if (s == "conditioned") return MapKind::conditioned;
    fail(errc::config, "unknown MAP kind '" + s + "' (stable|conditioned)");
}

inline vec cvals(cplx z) { return {z.real(), z.imag()}; }

inline vec matrix_vals(const MatrixExponent& m) {
    vec v;
    for (const auto& c : m.e) {
        v.push_back(c.real());
        v.push_back(c.imag());
    }
    return v;
}

inline const std::vector<std::string> matrix_labels = {"f11_re", "f11_im", "f12_re", "f12_im",
                                                       "f21_re", "f21_im", "f22_re", "f22_im"};

inline vec one(double v) { return {v}; }

} // namespace detail

inline const std::vector<Identity>& all() {
    using detail::one;
    using I = Inputs;
    using P = StableParams;
    static const std::vector<Identity> table = [] {
        std::vector<Identity> t;
        auto add = [&](Identity id) { t.push_back(std::move(id)); };

        // special functions
        add({"ln_gamma", "specfun", {"z_re", "z_im"}, {}, {"re", "im"}, false,
             [](const P&, const I& in) { return detail::cvals(ln_gamma(in.complex_z())); }});
        add({"beta_inc", "specfun", {"x", "a", "b"}, {}, {}, false,
             [](const P&, const I& in) { return one(beta_inc(in.scalar("x"), in.scalar("a"), in.scalar("b"))); }});
        add({"beta_inc_reg", "specfun", {"x", "a", "b"}, {}, {}, false,
             [](const P&, const I& in) { return one(beta_inc_reg(in.scalar("x"), in.scalar("a"), in.scalar("b"))); }});
        add({"hyp2f1", "specfun", {"a", "b", "c", "z"}, {}, {}, false, [](const P&, const I& in) {
                 return one(hyp2f1(in.scalar("a"), in.scalar("b"), in.scalar("c"), in.scalar("z")));
             }});

        // the process
        add({"char_exponent", "stable_core", {"theta"}, {}, {"re", "im"}, true,
             [](const P& p, const I& in) { return detail::cvals(char_exponent(p, in.point("theta", p.dim))); }});
        add({"levy_density", "stable_core", {"x"}, {}, {}, true,
             [](const P& p, const I& in) { return one(levy_density(p, in.point("x", p.dim))); }});
        add({"transition_density", "stable_core", {"t", "x"}, {}, {}, true, [](const P& p, const I& in) {
                 return one(transition_density(p, in.scalar("t"), in.scalar("x")));
             }});
        add({"free_potential_density", "stable_core", {"x", "y"}, {}, {}, true, [](const P& p, const I& in) {
                 return one(free_potential_density(p, in.point("x", p.dim), in.point("y", p.dim)));
             }});
        add({"classify", "stable_core", {}, {}, {"transient", "hits_points", "point_recurrent"}, true,
             [](const P& p, const I&) {
                 const auto c = classify(p);
                 return vec{double(c.transient), double(c.hits_points), double(c.point_recurrent)};
             }});
        add({"overshoot_density", "stable_core", {"a", "u"}, {}, {}, true,
             [](const P& p, const I& in) { return one(overshoot_density(p, in.scalar("a"), in.scalar("u"))); }});
        add({"overshoot_cdf", "stable_core", {"a", "u"}, {}, {}, true,
             [](const P& p, const I& in) { return one(overshoot_cdf(p, in.scalar("a"), in.scalar("u"))); }});
        add({"ladder_quantities", "stable_core", {"x"}, {"side"}, {"potential_density", "jump_density"}, true,
             [](const P& p, const I& in) {
                 const auto& s = in.option("side");
                 require(s == "up" || s == "down", errc::config, "side must be up or down");
                 const auto q = ladder_quantities(p, s == "up" ? Side::up : Side::down, in.scalar("x"));
                 return vec{q.potential_density, q.jump_density};
             }});

        // Lamperti and MAP structure
        add({"levy_exponent", "lamperti_map", {"z_re", "z_im"}, {"kind"}, {"re", "im"}, true,
             [](const P& p, const I& in) {
                 return detail::cvals(levy_exponent(detail::exponent_kind(in.option("kind")), p, in.complex_z()));
             }});
        add({"levy_exponent_factors", "lamperti_map", {"z_re", "z_im"}, {"kind"}, {"up_re", "up_im", "down_re", "down_im"},
             true, [](const P& p, const I& in) {
                 const auto [u, d] = levy_exponent_factors(detail::exponent_kind(in.option("kind")), p, in.complex_z());
                 return vec{u.real(), u.imag(), d.real(), d.imag()};
             }});
        add({"lamperti_stable_jump_density", "lamperti_map", {"x"}, {}, {}, true,
             [](const P& p, const I& in) { return one(lamperti_stable_jump_density(p, in.scalar("x"))); }});
        add({"map_exponent", "lamperti_map", {"z_re", "z_im"}, {"kind"}, detail::matrix_labels, true,
             [](const P& p, const I& in) {
                 return detail::matrix_vals(map_exponent(detail::map_kind(in.option("kind")), p, in.complex_z()));
             }});
        add({"leading_eig", "lamperti_map", {"gamma"}, {"kind"}, {"chi", "v1", "v2"}, true, [](const P& p, const I& in) {
                 const auto e = leading_eig(detail::map_kind(in.option("kind")), p, in.scalar("gamma"));
                 return vec{e.chi, e.v[0], e.v[1]};
             }});
        add({"esscher", "lamperti_map", {"gamma", "z_re", "z_im"}, {"kind"}, detail::matrix_labels, true,
             [](const P& p, const I& in) {
                 const auto m = map_exponent_fn(detail::map_kind(in.option("kind")), p);
                 return detail::matrix_vals(esscher(m, in.scalar("gamma"), in.complex_z()));
             }});
        add({"map_jump_kernel", "lamperti_map", {"theta", "y", "phi"}, {}, {}, true, [](const P& p, const I& in) {
                 return one(map_jump_kernel(p, in.point("theta", p.dim), in.scalar("y"), in.point("phi", p.dim)));
             }});
        add({"lamperti_time_change", "lamperti_map", {"times", "path"}, {"direction"}, {}, true,
             [](const P& p, const I& in) {
                 const auto& d = in.option("direction");
                 require(d == "forward" || d == "inverse", errc::config, "direction must be forward or inverse");
                 PathSample s;
                 s.t = in.list("times");
                 s.x = in.list("path");
                 return lamperti_time_change(s, p.alpha, d == "forward" ? Direction::forward : Direction::inverse).t;
             }});
        add({"h_transform_weight", "lamperti_map", {"x"}, {}, {}, true,
             [](const P& p, const I& in) { return one(h_transform_weight(p, in.point("x", p.dim))); }});

        // interval
        add({"exit_up_prob", "fluct_interval", {"x"}, {}, {}, true,
             [](const P& p, const I& in) { return one(exit_up_prob(p, in.scalar("x"))); }});
        add({"triple_law_density", "fluct_interval", {"x", "u", "v", "y"}, {}, {}, true, [](const P& p, const I& in) {
                 return one(triple_law_density(p, {in.scalar("x"), in.scalar("u"), in.scalar("v"), in.scalar("y")}));
             }});
        auto xy = [&](const char* name, double (*f)(const P&, double, double)) {
            add({name, "fluct_interval", {"x", "y"}, {}, {}, true,
                 [f](const P& p, const I& in) { return one(f(p, in.scalar("x"), in.scalar("y"))); }});
        };
        auto x1 = [&](const char* name, double (*f)(const P&, double)) {
            add({name, "fluct_interval", {"x"}, {}, {}, true,
                 [f](const P& p, const I& in) { return one(f(p, in.scalar("x"))); }});
        };
        xy("resolvent_interval", &resolvent_interval);
        xy("hit_point_before_exit", &hit_point_before_exit);
        xy("entrance_density", &entrance_density);
        x1("avoid_interval_prob", &avoid_interval_prob);
        xy("resolvent_exterior", &resolvent_exterior);
        x1("censored_potential_density", &censored_potential_density);
        x1("two_point_hit_prob", &two_point_hit_prob);
        xy("resolvent_origin_killed", &resolvent_origin_killed);
        xy("hit_before_origin_prob", &hit_before_origin_prob);
        xy("resolvent_exterior_by_inversion", &resolvent_exterior_by_inversion);

        // ball and sphere
        add({"invert_sphere", "fluct_ball", {"x", "center", "radius"}, {"variant"}, {}, false,
             [](const P&, const I& in) {
                 const auto x = in.list("x");
                 const int d = (int)x.size();
                 const auto& v = in.option("variant");
                 require(v == "star" || v == "diamond", errc::config, "variant must be star or diamond");
                 return invert_sphere(x, {in.point("center", d), in.scalar("radius")},
                                      v == "star" ? Inversion::star : Inversion::diamond);
             }});
        add({"riesz_sphere_constant", "fluct_ball", {}, {}, {}, true,
             [](const P& p, const I&) { return one(riesz_sphere_constant(p)); }});
        auto ball_x = [&](const char* name, double (*f)(const P&, const vec&)) {
            add({name, "fluct_ball", {"x"}, {}, {}, true,
                 [f](const P& p, const I& in) { return one(f(p, in.point("x", p.dim))); }});
        };
        auto ball_xy = [&](const char* name, double (*f)(const P&, const vec&, const vec&)) {
            add({name, "fluct_ball", {"x", "y"}, {}, {}, true,
                 [f](const P& p, const I& in) { return one(f(p, in.point("x", p.dim), in.point("y", p.dim))); }});
        };
        ball_x("sphere_hit_prob", &sphere_hit_prob);
        ball_xy("sphere_hit_density", &sphere_hit_density);
        ball_xy("sphere_resolvent_density", &sphere_resolvent_density);
        ball_xy("ball_passage_density", &ball_passage_density);
        ball_x("never_enter_ball_prob", &never_enter_ball_prob);
        add({"ball_resolvent_density", "fluct_ball", {"x", "y"}, {"region"}, {}, true, [](const P& p, const I& in) {
                 const auto& r = in.option("region");
                 require(r == "interior" || r == "exterior", errc::config, "region must be interior or exterior");
                 return one(ball_resolvent_density(p, in.point("x", p.dim), in.point("y", p.dim),
                                                   r == "interior" ? BallRegion::interior : BallRegion::exterior));
             }});
        return t;
    }();
    return table;
}

inline const Identity& find(const std::string& name) {
    const auto& t = all();
    const auto it = std::find_if(t.begin(), t.end(), [&](const Identity& i) { return i.name == name; });
    if (it == t.end()) fail(errc::config, "unknown identity");
    return *it;
}

inline bool exists(const std::string& name) {
    const auto& t = all();
    return std::any_of(t.begin(), t.end(), [&](const Identity& i) { return i.name == name; });
}

} // namespace sfl::registry

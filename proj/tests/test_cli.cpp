// Drives the built binary through a shell and checks outputs and exit codes.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stablefluct/fluct_ball.hpp"
#include "stablefluct/registry.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(STABLEFLUCT_BIN) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Run run_err(const std::string& args) {
    Run r;
    const std::string cmd = std::string(STABLEFLUCT_BIN) + " " + args + " 2>&1 >/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string tmp(const std::string& name) { return testing::TempDir() + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST(Eval, SymmetricExitIsOneHalf) {
    const auto r = run("eval --identity exit_up_prob --alpha 1.5 --rho 0.5 --x 0");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["identity"], "exit_up_prob");
    EXPECT_EQ(j["value"].get<double>(), 0.5);
    EXPECT_EQ(j["params"]["alpha"].get<double>(), 1.5);
    EXPECT_EQ(j["inputs"]["x"].get<double>(), 0.0);
}

TEST(Eval, RieszConstantMatchesGammaFormula) {
    const auto r = run("eval --identity riesz_sphere_constant --dim 2 --alpha 1.5");
    ASSERT_EQ(r.code, 0);
    // d = 2: the circle average of |e1 - z|^{a-2} is Gamma(a-1) / Gamma(a/2)^2
    const double a = 1.5, ref = std::tgamma(a - 1) / std::pow(std::tgamma(a / 2), 2);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), ref, 1e-13 * ref);
}

TEST(Eval, UnknownIdentityExitsTwo) {
    const auto r = run_err("eval --identity no_such_thing --alpha 1.5");
    EXPECT_EQ(r.code, 2);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"], "config");
    EXPECT_EQ(j["message"], "unknown identity");
}

TEST(Eval, ValidationErrorsExitTwo) {
    EXPECT_EQ(run_err("eval --identity exit_up_prob --alpha 2.5 --x 0").code, 2);
    EXPECT_EQ(run_err("eval --identity exit_up_prob --alpha 1.5 --x 3").code, 2);
    EXPECT_EQ(run_err("eval --identity exit_up_prob --alpha 1.5").code, 2);
    EXPECT_EQ(run_err("eval --identity exit_up_prob --alpha abc --x 0").code, 2);
    EXPECT_EQ(run_err("eval --identity two_point_hit_prob --alpha 0.8 --x 0").code, 2);
    EXPECT_EQ(run_err("eval --bogus-flag 1").code, 2);
    const auto j = nlohmann::json::parse(run_err("eval --identity exit_up_prob --alpha 1.5 --x 3").out);
    EXPECT_EQ(j["error"], "domain");
}

TEST(Eval, VectorValuesAndCsv) {
    const auto r = run("eval --identity leading_eig --alpha 1.3 --rho 0.6 --gamma 0 --kind stable");
    ASSERT_EQ(r.code, 0);
    const auto v = nlohmann::json::parse(r.out)["value"]["values"];
    ASSERT_EQ(v.size(), 3u);
    EXPECT_NEAR(v[0].get<double>(), 0.0, 1e-14);
    const auto c = csv(run("eval --identity ball_passage_density --alpha 1.5 --dim 2 --x 0.3,0.1 --y 2 --format csv").out);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (std::vector<std::string>{"x_1", "x_2", "y", "ball_passage_density"}));
    const auto p = sfl::validate_params(1.5, 0.5, 2);
    EXPECT_EQ(std::stod(c[1][3]), sfl::ball_passage_density(p, {0.3, 0.1}, {2.0, 0.0}));
}

TEST(Eval, OutputFileHasLfEndings) {
    const auto path = tmp("eval.csv");
    ASSERT_EQ(run("eval --identity exit_up_prob --alpha 1.5 --rho 0.6 --x 0.1 --format csv --out " + path).code, 0);
    const auto s = slurp(path);
    EXPECT_EQ(s.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
}

TEST(Tabulate, GridSizeAndEvalAgreement) {
    const auto r = run("tabulate --identity two_point_hit_prob --alpha 1.5 --rho 0.6 --grid \"x=-0.9:0.9:0.1\"");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 20u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "two_point_hit_prob"}));
    for (std::size_t i = 1; i < rows.size(); i += 4) {
        const auto e = run("eval --identity two_point_hit_prob --alpha 1.5 --rho 0.6 --format csv --x=" + rows[i][0]);
        ASSERT_EQ(e.code, 0);
        const auto er = csv(e.out);
        // identical 17-digit rendering, and the text round-trips to the same double
        EXPECT_EQ(er[1][1], rows[i][1]);
        const auto j = nlohmann::json::parse(
            run("eval --identity two_point_hit_prob --alpha 1.5 --rho 0.6 --x=" + rows[i][0]).out);
        EXPECT_EQ(j["value"].get<double>(), std::stod(rows[i][1]));
    }
}

TEST(Tabulate, BallPassageDecaysAlongRay) {
    const auto r = run("tabulate --identity ball_passage_density --alpha 1.5 --dim 2 --x 0.3,0.2 --y 1,0.5 "
                       "--grid \"y=1.2:6:0.2\"");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_GT(rows.size(), 20u);
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][1]), std::stod(rows[i - 1][1])) << i;
}

TEST(Tabulate, TwoGridsFormAProduct) {
    const auto r = run("tabulate --identity exit_up_prob --grid alpha=1:1.5:0.25 --grid x=-0.5:0.5:0.5 --rho 0.5");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "x", "exit_up_prob"}));
    EXPECT_EQ(rows[2][1], "0");
    EXPECT_EQ(rows[2][2], "0.5");
}

TEST(Tabulate, MalformedGridExitsTwo) {
    for (const char* g : {"x=1:0:0.1", "x=0:1", "x=0:1:0", "x=a:1:0.1", "=0:1:0.1", "nope=0:1:0.1"})
        EXPECT_EQ(run_err(std::string("tabulate --identity exit_up_prob --alpha 1.5 --grid \"") + g + "\"").code, 2) << g;
}

TEST(Config, FlagsOverrideFile) {
    const auto path = tmp("cfg.json");
    std::ofstream(path) << R"({"identity": "exit_up_prob", "params": {"alpha": 1.5, "rho": 0.5}, "x": 0.2})";
    const auto a = nlohmann::json::parse(run("eval --config " + path).out);
    EXPECT_EQ(a["params"]["rho"].get<double>(), 0.5);
    EXPECT_EQ(a["inputs"]["x"].get<double>(), 0.2);
    const auto b = nlohmann::json::parse(run("eval --config " + path + " --x -0.2 --rho 0.6").out);
    EXPECT_EQ(b["params"]["rho"].get<double>(), 0.6);
    EXPECT_EQ(b["inputs"]["x"].get<double>(), -0.2);
    EXPECT_EQ(run_err("eval --config " + tmp("missing.json")).code, 2);
    std::ofstream(tmp("bad.json")) << "{not json";
    EXPECT_EQ(run_err("eval --config " + tmp("bad.json")).code, 2);
}

TEST(Registry, CoversLampertiAndFluctuationOperations) {
    const std::set<std::string> wanted = {
        "levy_exponent", "levy_exponent_factors", "lamperti_stable_jump_density", "map_exponent", "leading_eig",
        "esscher", "map_jump_kernel", "lamperti_time_change", "h_transform_weight", "exit_up_prob",
        "triple_law_density", "resolvent_interval", "hit_point_before_exit", "entrance_density",
        "avoid_interval_prob", "resolvent_exterior", "censored_potential_density", "two_point_hit_prob",
        "resolvent_origin_killed", "invert_sphere", "sphere_hit_prob", "sphere_hit_density", "riesz_sphere_constant",
        "sphere_resolvent_density", "ball_passage_density", "never_enter_ball_prob", "ball_resolvent_density"};
    const auto rows = csv(run("list").out);
    std::set<std::string> listed;
    for (std::size_t i = 1; i < rows.size(); ++i) listed.insert(rows[i][0]);
    for (const auto& w : wanted) EXPECT_TRUE(listed.count(w)) << w;
    EXPECT_EQ(listed.size(), sfl::registry::all().size());
}

// Every identity answers through eval at one admissible point.
TEST(Registry, EveryIdentityEvaluates) {
    const std::map<std::string, std::string> args = {
        {"ln_gamma", "--z_re 2.5 --z_im 1"},
        {"beta_inc", "--x 0.3 --a 1.5 --b 2"},
        {"beta_inc_reg", "--x 0.3 --a 1.5 --b 2"},
        {"hyp2f1", "--a 0.5 --b 1 --c 2.5 --z 0.3"},
        {"char_exponent", "--alpha 1.5 --rho 0.6 --theta 2"},
        {"levy_density", "--alpha 1.5 --rho 0.6 --x -0.7"},
        {"transition_density", "--alpha 1.5 --rho 0.6 --t 1 --x 0.3"},
        {"free_potential_density", "--alpha 1.5 --dim 3 --x 0 --y 1,1,0"},
        {"classify", "--alpha 1.5"},
        {"overshoot_density", "--alpha 1.5 --rho 0.6 --a 1 --u 0.5"},
        {"overshoot_cdf", "--alpha 1.5 --rho 0.6 --a 1 --u 0.5"},
        {"ladder_quantities", "--alpha 1.5 --rho 0.6 --x 0.5 --side up"},
        {"levy_exponent", "--alpha 1.3 --rho 0.6 --z_re 1 --z_im -0.2 --kind killed_half_line"},
        {"levy_exponent_factors", "--alpha 1.3 --rho 0.6 --z_re 1 --kind censored"},
        {"lamperti_stable_jump_density", "--alpha 1.5 --rho 0.6 --x 1"},
        {"map_exponent", "--alpha 1.3 --rho 0.6 --z_re 1 --kind conditioned"},
        {"leading_eig", "--alpha 1.3 --rho 0.6 --gamma 0.1 --kind stable"},
        {"esscher", "--alpha 1.3 --rho 0.6 --gamma 0.3 --z_re 1 --kind stable"},
        {"map_jump_kernel", "--alpha 1.5 --dim 2 --theta 1,0 --y 0.4 --phi 0,1"},
        {"lamperti_time_change", "--alpha 1.5 --times 0,0.5,1 --path 1,1.2,0.9 --direction forward"},
        {"h_transform_weight", "--alpha 1.5 --dim 2 --x 0.5,0.5"},
        {"exit_up_prob", "--alpha 1.5 --x 0.2"},
        {"triple_law_density", "--alpha 1.5 --x 0.2 --u 0.3 --v 0.6 --y 0.4"},
        {"resolvent_interval", "--alpha 1.5 --x 0.2 --y -0.4"},
        {"hit_point_before_exit", "--alpha 1.5 --x 0.2 --y -0.4"},
        {"entrance_density", "--alpha 1.5 --x 2 --y -0.4"},
        {"avoid_interval_prob", "--alpha 0.8 --x 2"},
        {"resolvent_exterior", "--alpha 1.5 --x 2 --y -3"},
        {"censored_potential_density", "--alpha 1.5 --x 0.5"},
        {"two_point_hit_prob", "--alpha 1.5 --x 0.2"},
        {"resolvent_origin_killed", "--alpha 1.5 --x 0.2 --y -0.4"},
        {"hit_before_origin_prob", "--alpha 1.5 --x 0.2 --y -0.4"},
        {"resolvent_exterior_by_inversion", "--alpha 1.5 --x 2 --y -3"},
        {"invert_sphere", "--x 2,1 --center 0,0 --radius 1 --variant star"},
        {"riesz_sphere_constant", "--alpha 1.5 --dim 3"},
        {"sphere_hit_prob", "--alpha 1.5 --dim 3 --x 2"},
        {"sphere_hit_density", "--alpha 1.5 --dim 3 --x 2 --y 0,1,0"},
        {"sphere_resolvent_density", "--alpha 1.5 --dim 3 --x 2 --y 0,3,0"},
        {"ball_passage_density", "--alpha 1.5 --dim 3 --x 0.5 --y 0,2,0"},
        {"never_enter_ball_prob", "--alpha 1.5 --dim 3 --x 2"},
        {"ball_resolvent_density", "--alpha 1.5 --dim 3 --x 0.5 --y 0,0.3,0 --region interior"},
    };
    for (const auto& id : sfl::registry::all()) {
        const auto it = args.find(id.name);
        ASSERT_NE(it, args.end()) << "no test point for " << id.name;
        const auto r = run("eval --identity " + id.name + " " + it->second);
        ASSERT_EQ(r.code, 0) << id.name;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j["identity"], id.name);
        if (j["value"].is_object()) {
            for (const auto& v : j["value"]["values"]) EXPECT_TRUE(v.is_number()) << id.name;
        } else {
            EXPECT_TRUE(j["value"].is_number()) << id.name;
        }
        // tabulate reaches it too when it has a scalar input to vary
        if (!id.inputs.empty() && id.name != "lamperti_time_change" && id.name != "invert_sphere") {
            const auto& k = id.inputs.front();
            std::string rest = it->second, val;
            const auto pos = rest.find("--" + k + " ");
            ASSERT_NE(pos, std::string::npos) << id.name;
            std::stringstream ss(rest.substr(pos + k.size() + 3));
            ss >> val;
            if (val.find(',') != std::string::npos) continue;
            const auto t = run("tabulate --identity " + id.name + " " + it->second + " --grid \"" + k + "=" + val +
                               ":" + val + ":1\"");
            EXPECT_EQ(t.code, 0) << id.name;
            EXPECT_EQ(csv(t.out).size(), 2u) << id.name;
        }
    }
}

TEST(Verify, FastSuitePassesQuickly) {
    const auto path = tmp("fast.json");
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run("verify --suite fast --out " + path);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(r.code, 0);
    EXPECT_LT(secs, 60.0);
    const auto j = nlohmann::json::parse(slurp(path));
    ASSERT_TRUE(j.is_array());
    ASSERT_GT(j.size(), 20u);
    for (const auto& rep : j) {
        EXPECT_TRUE(rep["pass"].get<bool>()) << rep["name"];
        for (const char* k : {"name", "closed_form", "estimate", "std_err", "ks_stat", "ks_critical", "tolerance_rule"})
            EXPECT_TRUE(rep.contains(k)) << k;
    }
}

TEST(Verify, DeterministicOutputAndBadSuite) {
    const auto a = run("verify --suite fast"), b = run("verify --suite fast");
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run_err("verify --suite medium").code, 2);
    EXPECT_EQ(run_err("verify --suite full --paths 10").code, 2);
}

TEST(Simulate, SummaryAndRecords) {
    const auto r = run("simulate --scenario interval_exit --alpha 1.5 --x0 0 --kappa 0.2 --paths 500 --seed 3");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["events"].get<int>(), 500);
    const auto c = csv(run("simulate --scenario ball_exit --alpha 1.5 --dim 2 --x0 0.2,0.1 --kappa 0.2 --paths 50 "
                           "--format csv").out);
    ASSERT_EQ(c.size(), 51u);
    EXPECT_EQ(c[0].size(), 9u);
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GE(std::hypot(std::stod(c[i][7]), std::stod(c[i][8])), 1.0);
    EXPECT_EQ(run_err("simulate --scenario nowhere --alpha 1.5").code, 2);
    EXPECT_EQ(run_err("simulate --scenario interval_exit --alpha 1.5 --x0 4 --kappa 0.1").code, 2);
}

// stablefluct: command-line front end.
//
//   stablefluct eval      --identity NAME --alpha A [--rho R] [--dim D] [--x ...] [--format json|csv] [--out PATH]
//   stablefluct tabulate  --identity NAME --grid "var=a:b:step" [--grid ...] ...
//   stablefluct verify    --suite fast|full [--seed S] [--paths N] [--out PATH]
//   stablefluct simulate  --scenario NAME --alpha A --x0 ... [--kappa K | --dt H] ...
//   stablefluct list
//
// Every subcommand also takes --config FILE (a flat JSON object, optionally
// with "params"/"inputs" sub-objects); flags given on the command line win.
// Exit codes: 0 ok, 1 a verification check failed, 2 bad configuration or
// a library error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablefluct/montecarlo.hpp"
#include "stablefluct/registry.hpp"
#include "verify_suite.hpp"

namespace {

using sfl::errc;
using sfl::require;
using sfl::vec;

// ---------------------------------------------------------------- text output

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string jnum(double v) { return std::isfinite(v) ? num(v) : "null"; }

std::string jstr(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        switch (c) {
        case '"': o += "\\\""; break;
        case '\\': o += "\\\\"; break;
        case '\n': o += "\\n"; break;
        case '\t': o += "\\t"; break;
        default:
            if ((unsigned char)c < 0x20) {
                char b[8];
                std::snprintf(b, sizeof b, "\\u%04x", c);
                o += b;
            } else {
                o += c;
            }
        }
    }
    return o + "\"";
}

std::string jvec(const vec& v) {
    std::string o = "[";
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? ", " : "") + jnum(v[i]);
    return o + "]";
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    require(bool(f), errc::config, "cannot open output file '" + path + "'");
    f << text;
    require(bool(f), errc::config, "failed writing '" + path + "'");
}

// ---------------------------------------------------------------- settings

// Flat key -> text map merged from the config file and the command line.
struct Settings {
    std::map<std::string, std::string> kv;
    std::vector<std::string> grids;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string get(const std::string& k, const std::string& def = "") const {
        const auto it = kv.find(k);
        return it == kv.end() ? def : it->second;
    }
};

double parse_double(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    while (used < s.size() && std::isspace((unsigned char)s[used])) ++used;
    require(used == s.size() && !s.empty(), errc::config, "'" + key + "': not a number: '" + s + "'");
    return v;
}

vec parse_list(const std::string& key, const std::string& s) {
    vec out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t[]"), e = tok.find_last_not_of(" \t[]");
        require(b != std::string::npos, errc::config, "'" + key + "': empty component");
        out.push_back(parse_double(key, tok.substr(b, e - b + 1)));
    }
    require(!out.empty(), errc::config, "'" + key + "': no value");
    return out;
}

std::uint64_t parse_count(const std::string& key, const std::string& s) {
    const double v = parse_double(key, s);
    require(v >= 0 && v == std::floor(v) && v < 1.8e19, errc::config, "'" + key + "' must be a non-negative integer");
    return (std::uint64_t)v;
}

std::string json_scalar_text(const std::string& key, const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_number()) return num(j.get<double>());
    if (j.is_array()) {
        std::string o;
        for (const auto& e : j) {
            require(e.is_number(), errc::config, "config '" + key + "': arrays must hold numbers");
            o += (o.empty() ? "" : ",") + num(e.get<double>());
        }
        return o;
    }
    sfl::fail(errc::config, "config '" + key + "': unsupported value type");
}

void load_config(const std::string& path, Settings& s) {
    std::ifstream f(path);
    require(bool(f), errc::config, "cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const std::exception& e) {
        sfl::fail(errc::config, "config file '" + path + "': " + e.what());
    }
    require(j.is_object(), errc::config, "config file must hold a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (k == "grid") {
            if (v.is_string()) s.grids.push_back(v.get<std::string>());
            else {
                require(v.is_array(), errc::config, "config 'grid' must be a string or an array of strings");
                for (const auto& g : v) {
                    require(g.is_string(), errc::config, "config 'grid' entries must be strings");
                    s.grids.push_back(g.get<std::string>());
                }
            }
        } else if (v.is_object() && (k == "params" || k == "inputs")) {
            for (const auto& [k2, v2] : v.items()) s.kv[k2] = json_scalar_text(k2, v2);
        } else if (k != "value") {
            s.kv[k] = json_scalar_text(k, v);
        }
    }
}

// CLI11 front: every known key is a string option; parsed values are
// layered over the config file afterwards.
struct Front {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> store;
    std::map<std::string, CLI::Option*> opts;
    std::vector<std::string> grids;
    CLI::Option* grid_opt = nullptr;
    std::string config;

    void add(const std::string& key, const std::string& help, const std::string& alias = "") {
        auto* o = app->add_option("--" + key + (alias.empty() ? "" : ",--" + alias), store[key], help);
        o->allow_extra_args(false);
        opts[key] = o;
    }

    Settings settings() const {
        Settings s;
        if (!config.empty()) load_config(config, s);
        for (const auto& [k, o] : opts)
            if (o->count()) s.kv[k] = store.at(k);
        if (grid_opt && grid_opt->count()) s.grids = grids;
        return s;
    }
};

void add_params(Front& f) {
    f.add("alpha", "stability index in (0, 2)");
    f.add("rho", "positivity parameter (default 0.5)");
    f.add("dim", "dimension (default 1)", "d");
}

void add_identity_inputs(Front& f) {
    std::set<std::string> nums, strs;
    for (const auto& id : sfl::registry::all()) {
        nums.insert(id.inputs.begin(), id.inputs.end());
        strs.insert(id.options.begin(), id.options.end());
    }
    for (const auto& k : nums) f.add(k, "numeric input (comma-separated for vectors)");
    for (const auto& k : strs) f.add(k, "option input");
}

// ---------------------------------------------------------------- eval

sfl::StableParams params_of(const Settings& s) {
    require(s.has("alpha"), errc::config, "missing --alpha");
    const double a = parse_double("alpha", s.get("alpha"));
    const double r = s.has("rho") ? parse_double("rho", s.get("rho")) : 0.5;
    const double d = s.has("dim") ? parse_double("dim", s.get("dim")) : 1.0;
    require(d >= 1 && d == std::floor(d) && d < 1e6, errc::config, "dim must be a positive integer");
    return sfl::validate_params(a, r, (int)d);
}

sfl::registry::Inputs inputs_of(const sfl::registry::Identity& id, const Settings& s) {
    sfl::registry::Inputs in;
    for (const auto& k : id.inputs)
        if (s.has(k)) in.num[k] = parse_list(k, s.get(k));
    for (const auto& k : id.options)
        if (s.has(k)) in.str[k] = s.get(k);
    return in;
}

std::vector<std::string> value_labels(const sfl::registry::Identity& id, const vec& v) {
    if (!id.labels.empty()) return id.labels;
    if (v.size() == 1) return {id.name};
    std::vector<std::string> l;
    for (std::size_t i = 0; i < v.size(); ++i) l.push_back("value_" + std::to_string(i + 1));
    return l;
}

struct Point {
    sfl::StableParams p;
    sfl::registry::Inputs in;
    vec value;
};

Point evaluate(const sfl::registry::Identity& id, const Settings& s) {
    Point pt;
    if (id.uses_params) pt.p = params_of(s);
    pt.in = inputs_of(id, s);
    pt.value = id.fn(pt.p, pt.in);
    return pt;
}

std::string params_json(const sfl::registry::Identity& id, const sfl::StableParams& p) {
    if (!id.uses_params) return "{}";
    return "{\"alpha\": " + jnum(p.alpha) + ", \"rho\": " + jnum(p.rho) + ", \"dim\": " + std::to_string(p.dim) + "}";
}

std::string inputs_json(const sfl::registry::Inputs& in) {
    std::string o = "{";
    bool first = true;
    for (const auto& [k, v] : in.num) {
        o += (first ? "" : ", ") + jstr(k) + ": " + (v.size() == 1 ? jnum(v[0]) : jvec(v));
        first = false;
    }
    for (const auto& [k, v] : in.str) {
        o += (first ? "" : ", ") + jstr(k) + ": " + jstr(v);
        first = false;
    }
    return o + "}";
}

std::string eval_json(const sfl::registry::Identity& id, const Point& pt) {
    std::string o = "{\"identity\": " + jstr(id.name) + ", \"params\": " + params_json(id, pt.p) +
                    ", \"inputs\": " + inputs_json(pt.in) + ", \"value\": ";
    if (id.labels.empty() && pt.value.size() == 1) {
        o += jnum(pt.value[0]);
    } else {
        std::string labels = "[";
        const auto l = value_labels(id, pt.value);
        for (std::size_t i = 0; i < l.size(); ++i) labels += (i ? ", " : "") + jstr(l[i]);
        o += "{\"values\": " + jvec(pt.value) + ", \"labels\": " + labels + "]}";
    }
    return o + "}";
}

std::vector<std::string> input_columns(const sfl::registry::Inputs& in) {
    std::vector<std::string> c;
    for (const auto& [k, v] : in.num) {
        if (v.size() == 1) c.push_back(k);
        else
            for (std::size_t i = 0; i < v.size(); ++i) c.push_back(k + "_" + std::to_string(i + 1));
    }
    for (const auto& [k, v] : in.str) c.push_back(k);
    return c;
}

std::vector<std::string> input_cells(const sfl::registry::Inputs& in) {
    std::vector<std::string> c;
    for (const auto& [k, v] : in.num)
        for (double x : v) c.push_back(num(x));
    for (const auto& [k, v] : in.str) c.push_back(v);
    return c;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string o;
    for (std::size_t i = 0; i < cells.size(); ++i) o += (i ? "," : "") + cells[i];
    return o + "\n";
}

int run_eval(const Settings& s) {
    require(s.has("identity"), errc::config, "missing --identity");
    const auto& id = sfl::registry::find(s.get("identity"));
    const auto fmt = s.get("format", "json");
    require(fmt == "json" || fmt == "csv", errc::config, "format must be json or csv");
    const auto pt = evaluate(id, s);
    if (fmt == "json") {
        emit(eval_json(id, pt) + "\n", s.get("out"));
    } else {
        auto head = input_columns(pt.in), row = input_cells(pt.in);
        for (const auto& l : value_labels(id, pt.value)) head.push_back(l);
        for (double v : pt.value) row.push_back(num(v));
        emit(csv_line(head) + csv_line(row), s.get("out"));
    }
    return 0;
}

// ---------------------------------------------------------------- tabulate

struct Grid {
    std::string var;
    std::vector<double> values;
};

Grid parse_grid(const std::string& g) {
    const auto eq = g.find('=');
    require(eq != std::string::npos && eq > 0, errc::config, "malformed grid '" + g + "' (expected var=a:b:step)");
    Grid out;
    out.var = g.substr(0, eq);
    std::vector<std::string> parts;
    std::stringstream ss(g.substr(eq + 1));
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    require(parts.size() == 3, errc::config, "malformed grid '" + g + "' (expected var=a:b:step)");
    const double a = parse_double(out.var, parts[0]), b = parse_double(out.var, parts[1]),
                 h = parse_double(out.var, parts[2]);
    require(std::isfinite(a) && std::isfinite(b) && std::isfinite(h) && h > 0 && b >= a, errc::config,
            "malformed grid '" + g + "' (need a <= b and step > 0)");
    const double n = std::floor((b - a) / h * (1 + 1e-12) + 1e-9) + 1;
    require(n <= 1e6, errc::config, "grid '" + g + "' has too many points");
    for (int i = 0; i < (int)n; ++i) out.values.push_back(a + i * h);
    return out;
}

int run_tabulate(const Settings& s) {
    require(s.has("identity"), errc::config, "missing --identity");
    const auto& id = sfl::registry::find(s.get("identity"));
    require(!s.grids.empty(), errc::config, "missing --grid");
    const auto fmt = s.get("format", "csv");
    require(fmt == "json" || fmt == "csv", errc::config, "format must be json or csv");
    std::vector<Grid> grids;
    for (const auto& g : s.grids) {
        grids.push_back(parse_grid(g));
        const auto& v = grids.back().var;
        const bool ok = std::find(id.inputs.begin(), id.inputs.end(), v) != id.inputs.end() ||
                        (id.uses_params && (v == "alpha" || v == "rho"));
        require(ok, errc::config, "grid variable '" + v + "' is not an input of " + id.name);
        for (std::size_t i = 0; i + 1 < grids.size(); ++i)
            require(grids[i].var != v, errc::config, "grid variable '" + v + "' given twice");
    }
    std::string csv, json = "[\n";
    std::vector<std::size_t> at(grids.size(), 0);
    bool first = true;
    while (true) {
        Settings pt = s;
        for (std::size_t g = 0; g < grids.size(); ++g) {
            const auto& var = grids[g].var;
            const double t = grids[g].values[at[g]];
            // along the direction of a given vector input, else along e1
            if (s.has(var) && parse_list(var, s.get(var)).size() > 1) {
                vec dir = parse_list(var, s.get(var));
                const double n = sfl::norm(dir);
                require(n > 0, errc::config, "grid direction '" + var + "' is zero");
                std::string txt;
                for (double c : dir) txt += (txt.empty() ? "" : ",") + num(t * c / n);
                pt.kv[var] = txt;
            } else {
                pt.kv[var] = num(t);
            }
        }
        Point r;
        try {
            r = evaluate(id, pt);
        } catch (const sfl::error& e) {
            std::string where;
            for (std::size_t g = 0; g < grids.size(); ++g) where += " " + grids[g].var + "=" + num(grids[g].values[at[g]]);
            throw sfl::error(e.code(), std::string(e.what()) + " (at" + where + ")");
        }
        if (first) {
            std::vector<std::string> head;
            for (const auto& g : grids) head.push_back(g.var);
            for (const auto& l : value_labels(id, r.value)) head.push_back(l);
            csv += csv_line(head);
        }
        std::vector<std::string> row;
        for (std::size_t g = 0; g < grids.size(); ++g) row.push_back(num(grids[g].values[at[g]]));
        for (double v : r.value) row.push_back(num(v));
        csv += csv_line(row);
        json += std::string(first ? "" : ",\n") + "  " + eval_json(id, r);
        first = false;
        // odometer, last grid fastest
        bool carry = true;
        for (std::size_t g = grids.size(); carry && g-- > 0;) {
            carry = ++at[g] == grids[g].values.size();
            if (carry) at[g] = 0;
        }
        if (carry) break;
    }
    emit(fmt == "csv" ? csv : json + "\n]\n", s.get("out"));
    return 0;
}

// ---------------------------------------------------------------- verify

std::string reports_json(const sfl::verify::Reports& rs) {
    std::string o = "[\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        o += "  {\"name\": " + jstr(r.name) + ", \"closed_form\": " + jnum(r.closed_form) +
             ", \"estimate\": " + jnum(r.estimate) + ", \"std_err\": " + jnum(r.std_err) +
             ", \"ks_stat\": " + (r.ks_stat ? jnum(*r.ks_stat) : "null") +
             ", \"ks_critical\": " + (r.ks_critical ? jnum(*r.ks_critical) : "null") +
             ", \"pass\": " + (r.pass ? "true" : "false") + ", \"tolerance_rule\": " + jstr(r.tolerance_rule) + "}" +
             (i + 1 < rs.size() ? ",\n" : "\n");
    }
    return o + "]\n";
}

int run_verify(const Settings& s) {
    const auto suite = s.get("suite", "fast");
    require(suite == "fast" || suite == "full", errc::config, "suite must be fast or full");
    sfl::verify::McOptions o;
    if (s.has("seed")) o.seed = parse_count("seed", s.get("seed"));
    if (s.has("paths")) o.paths = parse_count("paths", s.get("paths"));
    require(o.paths >= 100, errc::config, "paths must be at least 100");
    const auto rs = suite == "fast" ? sfl::verify::fast_suite() : sfl::verify::full_suite(o);
    emit(reports_json(rs), s.get("out"));
    std::size_t bad = 0;
    for (const auto& r : rs) {
        if (!r.pass) {
            ++bad;
            std::cerr << "FAIL " << r.name << ": " << num(r.estimate) << " vs " << num(r.closed_form) << " ("
                      << r.tolerance_rule << ")\n";
        }
    }
    std::cerr << rs.size() - bad << "/" << rs.size() << " checks passed\n";
    return bad ? 1 : 0;
}

// ---------------------------------------------------------------- simulate

sfl::mc::Scenario scenario_of(const std::string& s) {
    using sfl::mc::Scenario;
    for (auto c : {Scenario::interval_exit, Scenario::interval_entrance, Scenario::ball_exit, Scenario::ball_entrance,
                   Scenario::occupation, Scenario::point_hit_proxy})
        if (s == sfl::mc::to_string(c)) return c;
    sfl::fail(errc::config, "unknown scenario '" + s + "'");
}

const char* outcome_name(sfl::mc::Outcome o) {
    switch (o) {
    case sfl::mc::Outcome::event: return "event";
    case sfl::mc::Outcome::escaped: return "escaped";
    case sfl::mc::Outcome::censored: return "censored";
    }
    return "?";
}

int run_simulate(const Settings& s) {
    const auto p = params_of(s);
    sfl::mc::SimConfig c;
    require(s.has("scenario"), errc::config, "missing --scenario");
    c.scenario = scenario_of(s.get("scenario"));
    c.x0 = s.has("x0") ? parse_list("x0", s.get("x0")) : vec{0.0};
    if (c.x0.size() == 1 && p.dim > 1) c.x0.resize(p.dim, 0.0);
    auto dbl = [&](const char* k, double& dst) {
        if (s.has(k)) dst = parse_double(k, s.get(k));
    };
    dbl("dt", c.dt);
    dbl("kappa", c.kappa);
    dbl("horizon", c.horizon);
    dbl("lo", c.lo);
    dbl("hi", c.hi);
    dbl("eps", c.eps);
    dbl("escape_radius", c.escape_radius);
    if (s.has("paths")) c.n_paths = parse_count("paths", s.get("paths"));
    if (s.has("seed")) c.seed = parse_count("seed", s.get("seed"));
    if (s.has("max_steps")) c.max_steps = parse_count("max_steps", s.get("max_steps"));
    if (s.has("threads")) c.threads = (unsigned)parse_count("threads", s.get("threads"));
    const auto fmt = s.get("format", "json");
    require(fmt == "json" || fmt == "csv", errc::config, "format must be json or csv");
    const auto recs = sfl::mc::simulate_event(p, c);
    if (fmt == "csv") {
        std::vector<std::string> head = {"path", "outcome", "time", "steps", "excess"};
        for (const char* w : {"before", "after"})
            for (int i = 0; i < p.dim; ++i) head.push_back(std::string(w) + "_" + std::to_string(i + 1));
        std::string o = csv_line(head);
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto& r = recs[i];
            std::vector<std::string> row = {std::to_string(i), outcome_name(r.outcome), num(r.time),
                                            std::to_string(r.steps), num(r.excess)};
            for (const vec* v : {&r.before, &r.after})
                for (int k = 0; k < p.dim; ++k) row.push_back(k < (int)v->size() ? num((*v)[k]) : "nan");
            o += csv_line(row);
        }
        emit(o, s.get("out"));
        return 0;
    }
    std::size_t n[3] = {0, 0, 0};
    double tsum = 0;
    for (const auto& r : recs) {
        ++n[(int)r.outcome];
        if (r.outcome != sfl::mc::Outcome::censored) tsum += r.time;
    }
    const double done = double(n[0] + n[1]);
    std::string o = "{\"scenario\": " + jstr(sfl::mc::to_string(c.scenario)) + ", \"params\": {\"alpha\": " +
                    jnum(p.alpha) + ", \"rho\": " + jnum(p.rho) + ", \"dim\": " + std::to_string(p.dim) +
                    "}, \"x0\": " + jvec(c.x0) + ", \"paths\": " + std::to_string(c.n_paths) +
                    ", \"seed\": " + std::to_string(c.seed) + ", \"events\": " + std::to_string(n[0]) +
                    ", \"escaped\": " + std::to_string(n[1]) + ", \"censored\": " + std::to_string(n[2]) +
                    ", \"event_fraction\": " + jnum(done > 0 ? n[0] / done : NAN) +
                    ", \"mean_time\": " + jnum(done > 0 ? tsum / done : NAN) + "}\n";
    emit(o, s.get("out"));
    return 0;
}

// ---------------------------------------------------------------- list

int run_list(const Settings& s) {
    std::string o = "identity,module,inputs,options,values\n";
    auto join = [](const std::vector<std::string>& v) {
        std::string r;
        for (const auto& x : v) r += (r.empty() ? "" : ";") + x;
        return r;
    };
    for (const auto& id : sfl::registry::all())
        o += csv_line({id.name, id.module, join(id.inputs), join(id.options), id.labels.empty() ? id.name : join(id.labels)});
    emit(o, s.get("out"));
    return 0;
}

int report_error(const std::string& code, const std::string& msg) {
    std::cerr << "{\"error\": " << jstr(code) << ", \"message\": " << jstr(msg) << "}\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fluctuation identities for stable processes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Settings&);
    };
    const Sub subs[] = {{"eval", "evaluate one identity", run_eval},
                        {"tabulate", "evaluate an identity over a grid (CSV)", run_tabulate},
                        {"verify", "run a verification suite", run_verify},
                        {"simulate", "simulate paths for a first-passage scenario", run_simulate},
                        {"list", "list registered identities", run_list}};
    std::vector<Front> fronts(std::size(subs));
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        auto& f = fronts[i];
        const std::string name = subs[i].name;
        f.app = app.add_subcommand(name, subs[i].help);
        f.app->add_option("--config", f.config, "JSON settings file; flags override it");
        f.add("out", "output path (default stdout)");
        if (name == "eval" || name == "tabulate") {
            f.add("identity", "registered identity name");
            f.add("format", "json or csv");
            add_params(f);
            add_identity_inputs(f);
            if (name == "tabulate")
                f.grid_opt = f.app->add_option("--grid", f.grids, "var=a:b:step (repeatable)")->allow_extra_args(false);
        } else if (name == "verify") {
            f.add("suite", "fast or full");
            f.add("seed", "simulation seed (default 42)");
            f.add("paths", "paths per simulation (default 100000)");
        } else if (name == "simulate") {
            add_params(f);
            f.add("format", "json (summary) or csv (one row per path)");
            for (const char* k : {"scenario", "x0", "dt", "kappa", "horizon", "lo", "hi", "eps", "escape_radius",
                                  "max_steps", "paths", "seed", "threads"})
                f.add(k, "simulation setting");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("config", e.what());
    }

    try {
        for (std::size_t i = 0; i < std::size(subs); ++i)
            if (fronts[i].app->parsed()) return subs[i].run(fronts[i].settings());
    } catch (const sfl::error& e) {
        return report_error(sfl::errc_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return report_error("internal", e.what());
    }
    return 2;
}

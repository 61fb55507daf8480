#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "mcycle/algorithms.hpp"
#include "mcycle/bounds.hpp"
#include "mcycle/combinatorics.hpp"
#include "mcycle/families.hpp"
#include "mcycle/kset.hpp"
#include "mcycle/montecarlo.hpp"
#include "mcycle/report.hpp"

namespace mcycle::cli {

namespace {

using nlohmann::json;

// Exit 1 carrier for failed checks.
struct VerificationFailure {};

// --output target, falling back to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) fail(ErrorCode::InvalidArgument, "cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ostream* os_;
    std::unique_ptr<std::ofstream> file_;
};

Rational rational_opt(const std::string& text, const char* name) {
    try {
        return parse_rational(text);
    } catch (const Error& e) {
        fail(ErrorCode::Parse, std::string("--") + name + ": " + e.what());
    }
}

Real real_opt(const std::string& text, const char* name) { return to_real(rational_opt(text, name)); }

void echo(std::ostream& os, const std::string& sub, const json& cfg) { os << "# mcycle " << sub << ' ' << cfg.dump() << '\n'; }

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (auto a : allowed)
        if (f == a) return;
    fail(ErrorCode::InvalidArgument, "unsupported --format '" + f + "'");
}

// ---- trace ---------------------------------------------------------------

struct TraceOpts {
    std::string perm, kset, line, output, format = "text";
    std::size_t n = 0;
    std::uint64_t cap = 0;
};

void cmd_trace(const TraceOpts& o, std::ostream& out) {
    check_format(o.format, {"text", "json"});
    std::optional<LineParams> line;
    if (!o.line.empty()) line = parse_line_selector(o.line);
    std::optional<std::size_t> deg;
    if (o.n) deg = o.n;
    else if (line) deg = line->n;
    const Permutation g = parse_permutation(o.perm, deg);
    const KSubset gamma = parse_ksubset(o.kset, g.degree());
    const BigInt ord = order(g);
    std::uint64_t cap = o.cap;
    if (!cap) {
        if (ord > std::numeric_limits<std::uint64_t>::max()) fail(ErrorCode::TooLarge, "order of g exceeds 64 bits; pass --cap");
        cap = static_cast<std::uint64_t>(ord);
    }
    const auto traced = cycle_length_trace(gamma, g, cap);
    const BigInt exact = cycle_length_exact(gamma, g);
    json j{{"perm", to_cycle_string(g)}, {"n", g.degree()},    {"kset", to_string(gamma)},
           {"cap", cap},                {"order", to_string(ord)}, {"exact_length", to_string(exact)}};
    j["trace_length"] = traced ? json(*traced) : json(nullptr);
    if (line && exact <= std::numeric_limits<std::uint64_t>::max()) {
        const auto r0 = matched_r0(*line, static_cast<std::uint64_t>(exact));
        j["line"] = to_selector(*line);
        j["r0"] = r0 ? json(*r0) : json(nullptr);
    }
    Sink sink(o.output, out);
    if (o.format == "json") {
        *sink << j.dump(2) << '\n';
        return;
    }
    echo(*sink, "trace", json{{"perm", o.perm}, {"kset", o.kset}, {"n", g.degree()}, {"cap", cap}, {"line", o.line}});
    *sink << "trace_length " << (traced ? std::to_string(*traced) : ">" + std::to_string(cap)) << '\n';
    *sink << "exact_length " << to_string(exact) << '\n';
    if (j.contains("r0")) *sink << "target_length " << (j["r0"].is_null() ? "no" : "yes r0=" + std::to_string(j["r0"].get<std::uint64_t>())) << '\n';
}

// ---- classify ------------------------------------------------------------

struct ClassifyOpts {
    std::string line, s, perm, output, format = "text";
};

void cmd_classify(const ClassifyOpts& o, std::ostream& out) {
    check_format(o.format, {"text", "json"});
    const LineParams p = parse_line_selector(o.line);
    const Rational s = rational_opt(o.s, "s");
    const Permutation g = parse_permutation(o.perm, p.n);
    const FamilyLabel label = classify(g, p, s);
    const auto ds = delta_sigma(g, p);
    json type = json::array();
    for (auto len : cycle_type(g)) type.push_back(len);
    json j{{"line", to_selector(p)}, {"line_number", p.line}, {"m", p.m},         {"r", p.r},        {"s", to_string(s)},
           {"perm", to_cycle_string(g)}, {"cycle_type", type}, {"family", to_string(label)}, {"in_N", in_N(g, p)}, {"in_Ngood", in_Ngood(g, p)},
           {"v", ds.v},                  {"u", ds.u}};
    Sink sink(o.output, out);
    if (o.format == "json") {
        *sink << j.dump(2) << '\n';
        return;
    }
    echo(*sink, "classify", json{{"line", o.line}, {"s", o.s}, {"perm", o.perm}});
    *sink << "family " << to_string(label) << '\n'
          << "cycle_type " << type.dump() << '\n'
          << "in_N " << (j["in_N"].get<bool>() ? "true" : "false") << '\n'
          << "in_Ngood " << (j["in_Ngood"].get<bool>() ? "true" : "false") << '\n'
          << "v " << ds.v << "\nu " << ds.u << '\n';
}

// ---- experiment options shared with find-mcycle ---------------------------

struct ExperimentOpts {
    std::string line, s = "17/24", delta = "1/6", eps = "1/5", cdelta = "138.32", adelta = "25/4";
    std::string mode = "conditional", stream = "uniform", engine = "exact", route = "classes";
    std::size_t k = 2;
    unsigned M = 4;
    std::uint64_t trials = 1000, budget = 100'000'000;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    bool trivial = false, serial = false;
    std::string output, format = "csv", find_format = "text", transcript;
};

ExperimentConfig to_config(const ExperimentOpts& o) {
    ExperimentConfig c;
    if (o.line.empty()) fail(ErrorCode::InvalidArgument, "--line is required");
    c.line = parse_line_selector(o.line);
    c.k = o.k;
    c.M = o.M;
    c.s = rational_opt(o.s, "s");
    c.delta = rational_opt(o.delta, "delta");
    c.eps = rational_opt(o.eps, "eps");
    c.c_delta = real_opt(o.cdelta, "cdelta");
    c.a_delta = real_opt(o.adelta, "adelta");
    c.mode = parse_mode(o.mode);
    c.trials = o.trials;
    c.seed = o.seed.value_or(0);
    c.workers = o.workers;
    c.budget = o.budget;
    c.stream = parse_stream(o.stream);
    c.engine = parse_engine(o.engine);
    c.trivial_group = o.trivial;
    return c;
}

void require_seed(const ExperimentOpts& o, const char* what) {
    if (!o.seed) fail(ErrorCode::InvalidArgument, std::string(what) + " is stochastic; pass --seed explicitly");
}

void write_exact(std::ostream& os, const ExactConditional& e, const std::string& format) {
    if (format == "json") {
        os << exact_json(e).dump(2) << '\n';
        return;
    }
    const json j = exact_json(e);
    for (const char* key : {"group_order", "prob_ngood", "rho_true", "accept", "p", "p1", "p2", "q", "accept_given_ngood", "n_given_accept"})
        os << key << ' ' << j[key].get<std::string>() << '\n';
    for (auto f : kAllLabels) os << "accept_and(" << to_string(f) << ") " << to_string(e.q_of(f)) << '\n';
}

void cmd_experiment(const ExperimentOpts& o, std::ostream& out) {
    check_format(o.format, {"csv", "json"});
    const ExperimentConfig c = to_config(o);
    const auto ex = o.serial ? kernels::Execution::Serial : kernels::Execution::Parallel;
    Sink sink(o.output, out);
    if (c.mode == Mode::ExactOracle) {
        const auto route = o.route == "elements" ? OracleRoute::Elements : o.route == "classes" ? OracleRoute::Classes
                                                                                              : (fail(ErrorCode::Parse, "--route is elements or classes"), OracleRoute::Classes);
        const auto e = exact_conditional(c.line, c.k, c.M, c.s, route, c.budget, ex);
        if (o.format == "csv") echo(*sink, "experiment", config_json(c));
        write_exact(*sink, e, o.format == "json" ? "json" : "text");
        return;
    }
    require_seed(o, "experiment");
    const SummaryStats st = run_experiment(c, ex);
    if (o.format == "json") {
        *sink << stats_json(st).dump(2) << '\n';
    } else {
        echo(*sink, "experiment", config_json(c));
        write_csv(*sink, st);
    }
}

void cmd_find(const ExperimentOpts& o, std::ostream& out) {
    check_format(o.find_format, {"text", "json"});
    require_seed(o, "find-mcycle");
    ExperimentConfig c = to_config(o);
    c.mode = Mode::FindMCycle;
    validate(c);
    KSetTestbed tb(c.line, c.k, c.trivial_group);
    Rng rng = stream(c.seed, 0);
    const auto res = find_m_cycle(c.line, to_double(c.eps), c.M, tb, rng, FindOptions{true, !o.transcript.empty()});
    const bool good = res.element && in_N(tb.natural(*res.element), c.line);
    const std::string outcome = !res.element ? "ugly" : good ? "good" : "bad";
    if (!o.transcript.empty()) {
        std::ofstream tf(o.transcript);
        if (!tf) fail(ErrorCode::InvalidArgument, "cannot open transcript file '" + o.transcript + "'");
        write_transcript(tf, res.transcript, good);
    }
    json j{{"config", config_json(c)}, {"outcome", outcome}, {"budget", res.budget}};
    j["element"] = res.element ? json(to_cycle_string(*res.element)) : json(nullptr);
    Sink sink(o.output, out);
    if (o.find_format == "json") {
        *sink << j.dump(2) << '\n';
        return;
    }
    echo(*sink, "find-mcycle", config_json(c));
    *sink << "outcome " << outcome << '\n' << "budget " << res.budget << '\n';
    if (res.element) *sink << "element " << to_cycle_string(*res.element) << '\n';
}

// ---- verify --------------------------------------------------------------

struct VerifyOpts {
    std::string suite = "all", lemma, output, format = "text";
    std::vector<std::string> args;
    std::optional<std::uint64_t> seed;
    bool exhaustive = false, verbose = false;
};

void cmd_verify(const VerifyOpts& o, std::ostream& out) {
    check_format(o.format, {"text", "json"});
    std::vector<std::pair<std::string, std::vector<Verdict>>> results;
    if (!o.lemma.empty()) {
        std::vector<Rational> a;
        for (const auto& s : o.args) a.push_back(rational_opt(s, "args"));
        results.emplace_back(o.lemma, std::vector<Verdict>{check_inequality(o.lemma, a)});
    } else {
        const std::vector<std::string> all = {"binom", "npk", "pc1", "corpc", "divisor", "inequalities"};
        std::vector<std::string> chosen;
        if (o.suite == "all") chosen = all;
        else if (std::find(all.begin(), all.end(), o.suite) != all.end()) chosen = {o.suite};
        else fail(ErrorCode::InvalidArgument, "unknown suite '" + o.suite + "' (binom, npk, pc1, corpc, divisor, inequalities, all)");
        for (const auto& name : chosen) {
            if (name == "binom") results.emplace_back(name, suite_binom());
            if (name == "npk") results.emplace_back(name, suite_npk());
            if (name == "pc1") results.emplace_back(name, suite_pc1());
            if (name == "corpc") {
                if (!o.seed) fail(ErrorCode::InvalidArgument, "suite corpc draws random structures; pass --seed");
                results.emplace_back(name, suite_corpc(1000, 14, *o.seed));
            }
            if (name == "divisor") results.emplace_back(name, suite_divisor());
            if (name == "inequalities") results.emplace_back(name, suite_inequalities());
        }
    }
    std::size_t violations = 0;
    json j = json::array();
    Sink sink(o.output, out);
    if (o.format == "text") echo(*sink, "verify", json{{"suite", o.suite}, {"lemma", o.lemma}, {"args", o.args}, {"seed", o.seed ? json(*o.seed) : json(nullptr)}});
    // A single lemma always shows its verdict.
    const bool verbose = o.verbose || !o.lemma.empty();
    for (const auto& [name, verdicts] : results) {
        std::size_t bad = 0;
        json rows = json::array();
        for (const auto& v : verdicts) {
            if (!v.holds) ++bad;
            if (o.format == "text" && (verbose || !v.holds))
                *sink << (v.holds ? "ok   " : "FAIL ") << v.lemma_id << ' ' << v.args_string() << ": " << v.lhs << ' ' << v.relation << ' ' << v.rhs << '\n';
            if (verbose || !v.holds)
                rows.push_back({{"lemma", v.lemma_id}, {"args", v.args_string()}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"relation", v.relation}, {"holds", v.holds}});
        }
        violations += bad;
        if (o.format == "text") *sink << "suite " << name << ": " << verdicts.size() << " checks, " << bad << " violations\n";
        j.push_back({{"suite", name}, {"checks", verdicts.size()}, {"violations", bad}, {"rows", rows}});
    }
    if (o.format == "json") *sink << j.dump(2) << '\n';
    if (violations) throw VerificationFailure{};
}

// ---- bounds --------------------------------------------------------------

struct BoundsOpts {
    unsigned M = 4;
    std::string s = "17/24", delta = "1/6", cdelta, adelta = "25/4", eps = "1", line, output, format = "text";
    std::optional<std::uint64_t> r, cdelta_search, n;
    std::size_t k = 2;
};

void cmd_bounds(const BoundsOpts& o, std::ostream& out) {
    check_format(o.format, {"text", "json"});
    const Rational s = rational_opt(o.s, "s"), delta = rational_opt(o.delta, "delta");
    const Real eps = real_opt(o.eps, "eps");
    const auto pc = validate_params(o.M, s, delta);
    json j{{"M", o.M}, {"s", to_string(s)}, {"delta", to_string(delta)}, {"eps", o.eps}, {"params_ok", pc.ok}, {"ell", to_string(pc.ell)},
           {"violations", pc.violations}};
    Sink sink(o.output, out);
    if (!pc.ok) {
        if (o.format == "json") *sink << j.dump(2) << '\n';
        else {
            *sink << "params rejected\n";
            for (const auto& v : pc.violations) *sink << "  " << v << '\n';
        }
        throw VerificationFailure{};
    }
    Real c_delta;
    if (o.cdelta_search) {
        const auto cs = c_delta_search(delta, *o.cdelta_search);
        c_delta = cs.value;
        j["c_delta_search"] = {{"value", to_string(cs.value)}, {"argmax", cs.argmax}, {"candidates", cs.candidates}, {"x_limit", *o.cdelta_search}};
    } else if (!o.cdelta.empty()) {
        c_delta = real_opt(o.cdelta, "cdelta");
    } else {
        fail(ErrorCode::InvalidArgument, "pass --cdelta or --cdelta-search");
    }
    j["c_delta"] = to_string(c_delta);
    const std::vector<std::uint64_t> rs = o.r ? std::vector<std::uint64_t>{*o.r} : std::vector<std::uint64_t>{1, 2, 3};
    auto a_for = [&](std::uint64_t) -> Real {
        if (o.adelta == "at150") return a_delta_eval(c_delta, s, delta, ADeltaVariant::At150).value;
        if (o.adelta == "table") return a_delta_eval(c_delta, s, delta, ADeltaVariant::Table).value;
        return real_opt(o.adelta, "adelta");
    };
    json per_r = json::array();
    for (auto r : rs) {
        const auto bp = make_bound_params(o.M, s, delta, r, c_delta, a_for(r), eps);
        const auto th = n_threshold(bp);
        per_r.push_back({{"r", r},
                         {"a_delta", to_string(bp.a_delta)},
                         {"b_M", to_string(bp.b_M)},
                         {"log10_n_threshold", to_string(th.log10_n, 6)},
                         {"log10_parts", {to_string(th.log10_parts[0], 6), to_string(th.log10_parts[1], 6), to_string(th.log10_parts[2], 6)}},
                         {"binding_constraint", th.binding + 1}});
    }
    j["by_r"] = per_r;
    if (o.n) {
        if (o.line.empty()) fail(ErrorCode::InvalidArgument, "--n needs --line");
        // A selector without n= takes --n.
        std::string sel = o.line;
        bool has_n = false;
        for (std::size_t pos = 0; pos <= sel.size();) {
            const auto next = std::min(sel.find(':', pos), sel.size());
            if (sel.compare(pos, 2, "n=") == 0) has_n = true;
            pos = next + 1;
        }
        if (!has_n) sel += ":n=" + std::to_string(*o.n);
        const LineParams p = line_params_for_line(parse_line_selector(sel).line, *o.n);
        const auto bp = make_bound_params(o.M, s, delta, p.r, c_delta, a_for(p.r), eps);
        const auto rep = family_bounds(*o.n, o.k, bp, p);
        j["family_bounds"] = {{"n", *o.n},
                              {"k", o.k},
                              {"line", p.line},
                              {"R", to_string(rep.R, 10)},
                              {"S0", to_string(rep.S0, 10)},
                              {"S1plus", to_string(rep.S1plus, 10)},
                              {"S1minus", to_string(rep.S1minus, 10)},
                              {"S1minus_per_element", to_string(rep.S1minus_per_element, 10)},
                              {"Sge2", to_string(rep.Sge2, 10)},
                              {"success_floor", to_string(rep.success_floor, 10)},
                              {"mcyc_ceiling", to_string(rep.mcyc_ceiling, 10)},
                              {"constraints", {rep.flags.first, rep.flags.second, rep.flags.third}},
                              {"M_upper", rep.M_upper}};
        if (o.adelta == "table")
            j["family_bounds"]["a_delta_table_condition"] = *a_delta_eval(c_delta, s, delta, ADeltaVariant::Table, p.rm()).condition;
    }
    if (o.format == "json") {
        *sink << j.dump(2) << '\n';
        return;
    }
    echo(*sink, "bounds", json{{"M", o.M}, {"s", o.s}, {"delta", o.delta}, {"cdelta", o.cdelta}, {"adelta", o.adelta}, {"eps", o.eps}});
    *sink << "ell " << to_string(pc.ell) << '\n' << "c_delta " << to_string(c_delta) << '\n';
    for (const auto& row : per_r) {
        *sink << "r=" << row["r"].get<std::uint64_t>() << " a_delta " << row["a_delta"].get<std::string>() << " b_M " << row["b_M"].get<std::string>()
              << " log10_n_threshold " << row["log10_n_threshold"].get<std::string>() << " binding " << row["binding_constraint"].get<int>() << '\n';
    }
    if (j.contains("family_bounds")) *sink << "family_bounds " << j["family_bounds"].dump() << '\n';
}

// ---- oracle --------------------------------------------------------------

struct OracleOpts {
    std::string what, line, s = "17/24", route = "classes", output, format = "text";
    std::size_t k = 2;
    unsigned M = 4;
    std::uint64_t v = 0, rm = 0, rn = 0, budget = 100'000'000;
    bool serial = false;
};

void cmd_oracle(const OracleOpts& o, std::ostream& out) {
    check_format(o.format, {"text", "json"});
    const auto ex = o.serial ? kernels::Execution::Serial : kernels::Execution::Parallel;
    json j{{"what", o.what}};
    if (o.what == "rho") {
        const LineParams p = parse_line_selector(o.line);
        const Rational rho = rho_oracle(p, ex);
        j.update({{"line", to_selector(p)}, {"line_number", p.line}, {"m", p.m}, {"rho", to_string(rho)}, {"rho_table", to_string(p.rho)}, {"match", rho == p.rho}});
    } else if (o.what == "yield") {
        const LineParams p = parse_line_selector(o.line);
        std::uint64_t total = 0, hits = 0;
        enumerate_group(p.group, p.n, [&](const Permutation& g) {
            if (!in_Ngood(g, p)) return;
            ++total;
            const auto t = extract_target(g, p);
            if (t.kind == TargetExtraction::TwoCycle || t.kind == TargetExtraction::ThreeCycle) ++hits;
        });
        j.update({{"line", to_selector(p)}, {"ngood", total}, {"yield", hits}, {"fraction", to_string(Rational(hits, total ? total : 1))}});
    } else if (o.what == "conditional") {
        const LineParams p = parse_line_selector(o.line);
        const auto route = o.route == "elements" ? OracleRoute::Elements : OracleRoute::Classes;
        j = exact_json(exact_conditional(p, o.k, o.M, rational_opt(o.s, "s"), route, o.budget, ex));
        j["what"] = o.what;
    } else if (o.what == "small-v") {
        const auto r = small_v_proportions(o.v, o.rm, o.rn, rational_opt(o.s, "s"));
        j.update({{"v", o.v}, {"rm", o.rm}, {"rn", o.rn}, {"s", o.s}, {"P", to_string(r.P)}, {"P0", to_string(r.P0)}, {"P1plus", to_string(r.P1plus)},
                  {"P1plus_recursion", to_string(r.P1plus_recursion)}});
    } else {
        fail(ErrorCode::InvalidArgument, "oracle target must be rho, yield, conditional or small-v");
    }
    Sink sink(o.output, out);
    if (o.format == "json") {
        *sink << j.dump(2) << '\n';
    } else {
        echo(*sink, "oracle", json{{"what", o.what}, {"line", o.line}, {"k", o.k}, {"M", o.M}, {"s", o.s}, {"v", o.v}, {"rm", o.rm}, {"rn", o.rn}});
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!it.value().is_object()) *sink << it.key() << ' ' << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << '\n';
    }
    if (o.what == "rho" && !j["match"].get<bool>()) throw VerificationFailure{};
    if (o.what == "small-v" && j["P1plus"] != j["P1plus_recursion"]) throw VerificationFailure{};
}

// CLI11 only reads a config file given before the subcommand; move --config forward.
std::vector<std::string> hoist_config(int argc, const char* const* argv) {
    std::vector<std::string> front, rest;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            front.push_back(a);
            front.push_back(argv[++i]);
        } else if (a.rfind("--config=", 0) == 0) {
            front.push_back(a);
        } else {
            rest.push_back(a);
        }
    }
    front.insert(front.end(), rest.begin(), rest.end());
    return front;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Long-cycle finding in k-set actions of symmetric and alternating groups"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file; one [subcommand] table, keys are long option names");
    app.allow_config_extras(false);

    TraceOpts to;
    auto* trace = app.add_subcommand("trace", "Orbit length of a k-subset under <g>, traced and exact");
    trace->add_option("--perm", to.perm, "Permutation, cycle form \"(1 2 3)(4 5)\" or images \"[2,3,1]\"")->required();
    trace->add_option("--kset", to.kset, "k-subset such as {1,4,7}")->required();
    trace->add_option("--n", to.n, "Degree (default: inferred, or from --line)");
    trace->add_option("--cap", to.cap, "Give up after this many steps (default: order of g)");
    trace->add_option("--line", to.line, "Line selector; reports whether the length is r0*m");
    trace->add_option("--format", to.format, "text or json");
    trace->add_option("--output", to.output, "Write here instead of stdout");

    ClassifyOpts co;
    auto* cls = app.add_subcommand("classify", "Family of a permutation for a line and s");
    cls->add_option("--line", co.line, "Line selector, e.g. sym:n=12:goal=long-cycle or line=3:n=8")->required();
    cls->add_option("--s", co.s, "Exponent s in (1/2, 1)")->required();
    cls->add_option("--perm", co.perm, "Permutation in cycle or image form")->required();
    cls->add_option("--format", co.format, "text or json");
    cls->add_option("--output", co.output, "Write here instead of stdout");

    ExperimentOpts eo;
    auto add_experiment_opts = [&](CLI::App* sub, bool full) {
        sub->add_option("--line", eo.line, "Line selector")->required();
        sub->add_option("--k", eo.k, "Subset size, 2 <= k <= n/2");
        sub->add_option("--M", eo.M, "Points per TraceCycle call");
        sub->add_option("--eps", eo.eps, "Error parameter of FindMCycle");
        sub->add_option("--seed", eo.seed, "Random seed (required)");
        sub->add_option("--engine", eo.engine, "Orbit engine: exact or trace");
        sub->add_flag("--trivial-group", eo.trivial, "Replace the group by the identity");
        sub->add_option("--output", eo.output, "Write here instead of stdout");
        if (!full) return;
        sub->add_option("--s", eo.s, "Exponent s");
        sub->add_option("--delta", eo.delta, "delta");
        sub->add_option("--cdelta", eo.cdelta, "c_delta for the bound columns");
        sub->add_option("--adelta", eo.adelta, "a_delta for the bound columns");
        sub->add_option("--mode", eo.mode, "conditional, findmcycle, family-census or exact-oracle");
        sub->add_option("--trials", eo.trials, "Trials (runs for findmcycle)");
        sub->add_option("--workers", eo.workers, "OpenMP threads (0: default); results do not depend on it");
        sub->add_option("--budget", eo.budget, "Enumeration budget for exact-oracle");
        sub->add_option("--stream", eo.stream, "uniform or ngood");
        sub->add_option("--route", eo.route, "exact-oracle route: classes or elements");
        sub->add_flag("--serial", eo.serial, "Use the serial reference kernels");
    };
    auto* find = app.add_subcommand("find-mcycle", "Run FindMCycle once on the k-set action");
    add_experiment_opts(find, false);
    find->add_option("--transcript", eo.transcript, "Write the per-trial transcript (CSV) here");
    find->add_option("--format", eo.find_format, "text or json");
    auto* exper = app.add_subcommand("experiment", "Monte Carlo and exact experiments");
    add_experiment_opts(exper, true);
    exper->add_option("--format", eo.format, "csv or json");

    VerifyOpts vo;
    auto* ver = app.add_subcommand("verify", "Exhaustive checks of the counting lemmas and inequalities");
    ver->add_option("--suite", vo.suite, "binom, npk, pc1, corpc, divisor, inequalities or all");
    ver->add_flag("--exhaustive", vo.exhaustive, "Run the full documented ranges (the only mode)");
    ver->add_option("--lemma", vo.lemma, "Check one inequality: lem:Z-a, lem:Z-a-alpha, lem:Z-b, lem:ZZ, lem:simple, lem:ns-a, lem:ns-b, lem:eps");
    ver->add_option("--args", vo.args, "Arguments for --lemma, rationals in the documented order");
    ver->add_option("--seed", vo.seed, "Seed for the corpc suite");
    ver->add_flag("--verbose", vo.verbose, "List every verdict");
    ver->add_option("--format", vo.format, "text or json");
    ver->add_option("--output", vo.output, "Write here instead of stdout");

    BoundsOpts bo;
    auto* bnd = app.add_subcommand("bounds", "Constants, n thresholds and per-family bounds");
    bnd->add_option("--M", bo.M, "Points per TraceCycle call");
    bnd->add_option("--s", bo.s, "Exponent s");
    bnd->add_option("--delta", bo.delta, "delta");
    bnd->add_option("--cdelta", bo.cdelta, "c_delta value");
    bnd->add_option("--cdelta-search", bo.cdelta_search, "Search sup d(x)/x^delta over x <= this (at most 1e9) instead");
    bnd->add_option("--adelta", bo.adelta, "a_delta value, or at150 / table");
    bnd->add_option("--r", bo.r, "Only this r (default: 1, 2 and 3)");
    bnd->add_option("--eps", bo.eps, "epsilon");
    bnd->add_option("--n", bo.n, "Also evaluate the per-family bounds at this n");
    bnd->add_option("--k", bo.k, "k for the per-family bounds");
    bnd->add_option("--line", bo.line, "Line for the per-family bounds (line=N or a selector)");
    bnd->add_option("--format", bo.format, "text or json");
    bnd->add_option("--output", bo.output, "Write here instead of stdout");

    OracleOpts oo;
    auto* orc = app.add_subcommand("oracle", "Exact small-n computations");
    orc->add_option("what", oo.what, "rho, yield, conditional or small-v")->required();
    orc->add_option("--line", oo.line, "Line selector");
    orc->add_option("--k", oo.k, "Subset size");
    orc->add_option("--M", oo.M, "Points per TraceCycle call");
    orc->add_option("--s", oo.s, "Exponent s");
    orc->add_option("--route", oo.route, "classes or elements");
    orc->add_option("--budget", oo.budget, "Enumeration budget");
    orc->add_option("--v", oo.v, "small-v: degree v <= 12");
    orc->add_option("--rm", oo.rm, "small-v: rm");
    orc->add_option("--rn", oo.rn, "small-v: rn");
    orc->add_flag("--serial", oo.serial, "Use the serial reference kernels");
    orc->add_option("--format", oo.format, "text or json");
    orc->add_option("--output", oo.output, "Write here instead of stdout");

    const auto args = hoist_config(argc, argv);
    // CLI11 takes a vector of arguments in reverse order.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (trace->parsed()) cmd_trace(to, out);
        else if (cls->parsed()) cmd_classify(co, out);
        else if (find->parsed()) cmd_find(eo, out);
        else if (exper->parsed()) cmd_experiment(eo, out);
        else if (ver->parsed()) cmd_verify(vo, out);
        else if (bnd->parsed()) cmd_bounds(bo, out);
        else if (orc->parsed()) cmd_oracle(oo, out);
    } catch (const VerificationFailure&) {
        return kVerificationFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace mcycle::cli

#include "qchar/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "qchar/acceptance.hpp"
#include "qchar/characters.hpp"
#include "qchar/toda.hpp"

namespace qchar {

namespace {

using json = nlohmann::ordered_json;

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, "expected a comma-separated integer list, got '" + text + "'");
        }
    }
    if (out.empty()) throw Error(ErrorKind::Parse, "empty integer list");
    return out;
}

TruncSpec parse_window(const std::string& text) {
    const auto v = parse_ints(text);
    if (v.size() != 3 || v[0] < 0 || v[1] > v[2]) throw Error(ErrorKind::Parse, "window must be D,vmin,vmax");
    return TruncSpec{v[0], v[1], v[2], {}};
}

struct Interval {
    int r = 0;
    std::optional<int> s;
};

Interval parse_interval(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "interval must be r:s or r:inf");
    Interval iv;
    iv.r = parse_ints(text.substr(0, colon)).at(0);
    const std::string hi = text.substr(colon + 1);
    if (hi != "inf") iv.s = parse_ints(hi).at(0);
    if (iv.s && *iv.s < iv.r) throw Error(ErrorKind::Parse, "empty interval");
    return iv;
}

RootVec degree_vector(const std::string& text, int n) {
    RootVec d = parse_ints(text);
    if (static_cast<int>(d.size()) != n) throw Error(ErrorKind::Precondition, "--d needs exactly n entries");
    if (!in_qplus(d)) throw Error(ErrorKind::Precondition, "--d entries must be non-negative");
    return d;
}

json diff_json(const std::optional<SeriesDiff>& d) {
    if (!d) return nullptr;
    return json{{"z", d->z.e}, {"vpow", d->vpow}, {"lhs", d->lhs}, {"rhs", d->rhs}};
}

json text_witness(const std::optional<std::string>& w) {
    if (!w) return nullptr;
    return json{{"detail", *w}};
}

json window_json(const TruncSpec& t) { return json{{"D", t.max_degree}, {"vmin", t.vmin}, {"vmax", t.vmax}}; }

// Everything the subcommands read; filled by CLI11.
struct Options {
    int n = 1;
    int k = 1;
    int cutoff = 0;
    std::string d;
    std::string r;
    std::string lambda;
    std::string interval = "0:inf";
    std::string window;
    std::string source;
    std::string method = "fermionic";
    std::string identity;
    std::string profile = "quick";
    long valuation = 8;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool json_flag = false;
    std::string output;
};

struct Outcome {
    json doc;
    int code = 0;
};

Outcome cmd_jd(const Options& o) {
    const RootVec d = degree_vector(o.d, o.n);
    const std::string src = o.source.empty() ? "explicit" : o.source;
    TermSum t;
    if (src == "explicit") t = jd_explicit(o.n, d);
    else if (src == "gz") t = scalar_product_J(o.n, d);
    else if (src == "solve") t = toda_solve(o.n, d);
    else throw Error(ErrorKind::Parse, "--source must be explicit, gz or solve");
    return {json::parse(termsum_to_json(t)), 0};
}

Outcome cmd_fermi(const Options& o) {
    const RootVec d = degree_vector(o.d, o.n);
    const Interval iv = parse_interval(o.interval);
    if (iv.s && o.window.empty()) return {json::parse(termsum_to_json(fermionic_sum(o.n, d, iv.r, *iv.s))), 0};
    if (o.window.empty()) throw Error(ErrorKind::Precondition, "an infinite interval needs --window");
    TruncSpec spec = parse_window(o.window);
    if (iv.r < 0) {
        spec.zmin.assign(o.n, 0);
        for (int i = 0; i < o.n; ++i) spec.zmin[i] = iv.r * d[i];
    }
    if (iv.s) return {json::parse(expand(fermionic_sum(o.n, d, iv.r, *iv.s), spec).to_json()), 0};
    return {json::parse(tower_sum(TowerSpec::uniform(o.n, iv.r), {}, d, spec).to_json()), 0};
}

JSource source_named(const std::string& name) {
    if (name.empty() || name == "explicit") return [](int n, const RootVec& d) { return jd_explicit(n, d); };
    if (name == "gz") return [](int n, const RootVec& d) { return scalar_product_J(n, d); };
    if (name == "solve") return [](int n, const RootVec& d) { return toda_solve(n, d); };
    throw Error(ErrorKind::Parse, "--source must be gz, explicit or solve");
}

json eigen_json(const EigenReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back({{"d", r.d}, {"pass", r.pass}, {"witness", text_witness(r.witness)}});
    return json{{"n", rep.n}, {"cutoff", rep.cutoff}, {"seed", rep.seed}, {"pass", rep.pass()}, {"rows", rows}};
}

Outcome cmd_toda(const Options& o) {
    const auto rep = verify_eigen(o.n, o.cutoff, source_named(o.source), o.seed);
    return {eigen_json(rep), rep.pass() ? 0 : 1};
}

Outcome cmd_char(const Options& o) {
    const TruncSpec spec = parse_window(o.window.empty() ? "4,-20,60" : o.window);
    const CharSpec cs{o.n, o.k, spec};
    if (o.method == "fermionic") return {json::parse(char_fermionic(cs).to_json()), 0};
    if (o.method == "bosonic") return {json::parse(char_bosonic(cs).to_json()), 0};
    throw Error(ErrorKind::Parse, "--method must be fermionic or bosonic");
}

Outcome cmd_verify(const Options& o) {
    json params;
    json witness = nullptr;
    json bounds = json::object();
    bool pass = false;
    const std::string& id = o.identity;
    auto window_or = [&](const std::string& def) { return parse_window(o.window.empty() ? def : o.window); };
    if (id == "toda") {
        params = {{"n", o.n}, {"cutoff", o.cutoff}, {"source", o.source.empty() ? "explicit" : o.source}, {"seed", o.seed}};
        const auto rep = verify_eigen(o.n, o.cutoff, source_named(o.source), o.seed);
        pass = rep.pass();
        for (const auto& r : rep.rows)
            if (!r.pass) {
                witness = {{"d", r.d}, {"detail", r.witness.value_or("")}};
                break;
            }
        bounds["cutoff"] = o.cutoff;
    } else if (id == "prop24") {
        const RootVec d = degree_vector(o.d, o.n);
        const TruncSpec spec = window_or("4,-20,60");
        params = {{"n", o.n}, {"d", d}, {"window", window_json(spec)}};
        const auto diff = fermionic_sum_series(o.n, d, 0, spec).compare(expand(jd_explicit(o.n, d), spec));
        pass = !diff;
        witness = diff_json(diff);
    } else if (id == "theorem31") {
        const TruncSpec spec = window_or("4,-20,60");
        params = {{"n", o.n}, {"k", o.k}, {"window", window_json(spec)}};
        TruncationBounds tb;
        const auto diff = char_fermionic({o.n, o.k, spec}).compare(char_bosonic({o.n, o.k, spec}, &tb));
        pass = !diff;
        witness = diff_json(diff);
        for (const auto& [k, v] : tb) bounds[k] = v;
    } else if (id == "shift") {
        const RootVec d = degree_vector(o.d, o.n);
        const Interval iv = parse_interval(o.interval);
        if (!iv.s) throw Error(ErrorKind::Precondition, "shift needs a finite interval r:s");
        WeightExpr lambda = o.lambda.empty() ? WeightExpr::lambda(o.n) : WeightExpr(parse_ints(o.lambda));
        params = {{"n", o.n}, {"d", d}, {"r", iv.r}, {"s", *iv.s}, {"lambda_offsets", lambda.c}, {"seed", o.seed}};
        const auto res = shift_check(o.n, d, iv.r, *iv.s, lambda, o.seed);
        pass = res.equal;
        witness = text_witness(res.witness);
    } else if (id == "convolution") {
        const RootVec d = degree_vector(o.d, o.n);
        params = {{"n", o.n}, {"k", o.k}, {"beta", d}, {"seed", o.seed}};
        const auto res = convolution_check(o.n, o.k, d, o.seed);
        pass = res.equal;
        witness = text_witness(res.witness);
        bounds["alpha_terms"] = roots_below(d).size();
    } else if (id == "sumJ1inf") {
        const TruncSpec spec = window_or("4,-20,60");
        params = {{"n", o.n}, {"window", window_json(spec)}};
        const auto diff = product_check(o.n, spec);
        pass = !diff;
        witness = diff_json(diff);
        bounds["max_gamma_height"] = spec.max_degree;
    } else if (id == "lemma43") {
        const RootVec g = degree_vector(o.d, o.n);
        const int r = o.r.empty() ? 0 : parse_ints(o.r).at(0);
        const GradedSpec spec = lemma_dj_region(o.n, r, g, 17 * 2 * o.valuation);
        params = {{"n", o.n}, {"r", r}, {"gamma", g}, {"region_weight", spec.weight}, {"region_denom", spec.denom},
                  {"max_valuation", spec.max_valuation}};
        const auto res = lemma_dj_check(o.n, r, g, spec);
        pass = res.pass;
        witness = text_witness(res.witness);
        for (const auto& [k, v] : res.bounds) bounds[k] = v;
    } else if (id == "theorem44") {
        const RootVec d = degree_vector(o.d, o.n);
        const std::vector<int> r = o.r.empty() ? std::vector<int>(o.n, 0) : parse_ints(o.r);
        const TruncSpec spec = window_or("3,-20,60");
        params = {{"n", o.n}, {"r", r}, {"beta", d}, {"window", window_json(spec)}};
        const auto res = quasi_classical_check(r, d, spec.max_degree, spec.vmin, spec.vmax);
        pass = res.pass;
        witness = text_witness(res.witness);
        for (const auto& [k, v] : res.bounds) bounds[k] = v;
    } else {
        throw Error(ErrorKind::Parse, "unknown identity '" + id + "'");
    }
    json doc{{"identity", id}, {"params", params}, {"pass", pass}, {"witness", witness}, {"truncation_bounds", bounds}};
    return {doc, pass ? 0 : 1};
}

Outcome cmd_suite(const Options& o, std::ostream& err) {
    Profile p;
    if (o.profile == "quick") p = Profile::Quick;
    else if (o.profile == "full") p = Profile::Full;
    else throw Error(ErrorKind::Parse, "--profile must be quick or full");
    const auto results = run_acceptance(p, &err);
    json rows = json::array();
    bool all = true;
    err << "\n  #  result  seconds  title\n";
    for (const auto& r : results) {
        all = all && r.pass;
        rows.push_back({{"criterion", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
        err << std::setw(3) << r.id << "  " << (r.pass ? "PASS  " : "FAIL  ") << std::setw(7) << std::fixed
            << std::setprecision(2) << r.seconds << "  " << r.title << "\n";
    }
    return {json{{"profile", o.profile}, {"pass", all}, {"criteria", rows}}, all ? 0 : 1};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    if (const char* env = std::getenv("QCHAR_JOBS")) o.jobs = std::max(1, std::atoi(env));
    CLI::App app{"Exact q-series computations for Whittaker vectors and principal-subspace characters"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "seed for randomized equality checks");
    app.add_option("--jobs", o.jobs, "worker count (results do not depend on it)");
    app.add_option("--output", o.output, "write JSON to this file instead of stdout");

    auto json_flag = [&](CLI::App* s) { s->add_flag("--json", o.json_flag, "emit JSON (the default output format)"); };

    auto* jd = app.add_subcommand("jd", "J_d as a sum of factored terms");
    jd->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    jd->add_option("--d", o.d, "comma-separated degrees")->required();
    jd->add_option("--source", o.source, "explicit|gz|solve");
    json_flag(jd);

    auto* fermi = app.add_subcommand("fermi", "fermionic configuration sum");
    fermi->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    fermi->add_option("--d", o.d)->required();
    fermi->add_option("--interval", o.interval, "r:s or r:inf");
    fermi->add_option("--window", o.window, "D,vmin,vmax");
    json_flag(fermi);

    auto* toda = app.add_subcommand("toda-verify", "eigen-equation of the Toda Hamiltonian");
    toda->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    toda->add_option("--cutoff", o.cutoff)->required()->check(CLI::NonNegativeNumber);
    toda->add_option("--source", o.source, "gz|explicit|solve");
    json_flag(toda);

    auto* chr = app.add_subcommand("char", "principal subspace character");
    chr->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    chr->add_option("--k", o.k)->required()->check(CLI::NonNegativeNumber);
    chr->add_option("--method", o.method, "fermionic|bosonic");
    chr->add_option("--window", o.window, "D,vmin,vmax");
    json_flag(chr);

    auto* verify = app.add_subcommand("verify", "check one identity and report");
    verify->add_option("--identity", o.identity,
                       "toda|prop24|theorem31|shift|convolution|sumJ1inf|lemma43|theorem44")
        ->required();
    verify->add_option("--n", o.n)->check(CLI::PositiveNumber);
    verify->add_option("--k", o.k)->check(CLI::PositiveNumber);
    verify->add_option("--d,--beta,--gamma", o.d);
    verify->add_option("--r", o.r, "boundary or comma-separated boundaries");
    verify->add_option("--lambda", o.lambda, "integer offsets c_0..c_n of lambda - c");
    verify->add_option("--interval", o.interval);
    verify->add_option("--cutoff", o.cutoff)->check(CLI::NonNegativeNumber);
    verify->add_option("--source", o.source);
    verify->add_option("--window", o.window);
    verify->add_option("--valuation", o.valuation, "graded window in powers of q")->check(CLI::PositiveNumber);
    json_flag(verify);

    auto* suite = app.add_subcommand("suite", "run the verification matrix");
    suite->add_option("--profile", o.profile, "quick|full");
    json_flag(suite);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        Outcome res;
        if (jd->parsed()) res = cmd_jd(o);
        else if (fermi->parsed()) res = cmd_fermi(o);
        else if (toda->parsed()) res = cmd_toda(o);
        else if (chr->parsed()) res = cmd_char(o);
        else if (verify->parsed()) res = cmd_verify(o);
        else res = cmd_suite(o, err);
        const std::string text = res.doc.dump(2) + "\n";
        if (o.output.empty()) {
            out << text;
        } else {
            std::ofstream f(o.output);
            if (!f) throw Error(ErrorKind::Precondition, "cannot write " + o.output);
            f << text;
        }
        return res.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qchar

#include "lstar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lstar/integral.hpp"
#include "lstar/inverse.hpp"
#include "lstar/limits.hpp"
#include "lstar/order.hpp"
#include "lstar/series.hpp"
#include "lstar/verify.hpp"

namespace lstar::cli {
namespace {

using json = nlohmann::ordered_json;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json enclosure(const Enclosure& e)
{
    return {{"lo", num(e.lo)}, {"hi", num(e.hi)}, {"width", num(e.width())}};
}

json rationals(std::span<const Rational> v)
{
    json a = json::array();
    for (const auto& r : v)
        a.push_back(r.str());
    return a;
}

struct Reply {
    json inputs = json::object();
    json result = json::object();
    std::vector<std::string> text;
    int status = Ok;
};

/// Flattens a result object into "key: value" lines.
void render(const json& j, const std::string& prefix, std::vector<std::string>& lines)
{
    for (const auto& [key, value] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            render(value, name, lines);
        } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const json& v) {
                       return v.is_primitive();
                   })) {
            std::string s;
            for (const auto& v : value)
                s += (s.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
            lines.push_back(name + ": " + s);
        } else if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i)
                render(value[i], name + "[" + std::to_string(i) + "]", lines);
        } else {
            lines.push_back(name + ": " + (value.is_string() ? value.get<std::string>() : value.dump()));
        }
    }
}

std::vector<int> parse_ints(const std::string& text)
{
    const auto k = Index::parse(text);
    return {k.entries().begin(), k.entries().end()};
}

std::vector<Rational> parse_rationals(const std::string& text)
{
    std::vector<Rational> out;
    std::string_view s = text;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(Rational::parse(s.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<double> parse_point(const std::string& text)
{
    std::vector<double> out;
    for (const auto& r : parse_rationals(text))
        out.push_back(r.to_double());
    return out;
}

/// Options shared by several subcommands; unset ones keep their defaults.
struct Options {
    std::string index;
    std::string weights;
    std::string fn = "lstar";
    std::string a, b;
    std::optional<int> a_tail, b_tail;
    std::string method = "mc";
    std::string point;
    std::string blocks;
    std::string kind;
    std::string z;
    std::string z_next;
    int tail_k = 1;
    std::string tail_z;
    std::size_t r = 1;
    std::int64_t terms = 1000;
    std::int64_t trace = 0;
    double target = 0.0;
    std::size_t max_len = 4096;
    bool classify_only = false;
    double alpha = 0.0;
    int m = 1;
    std::string suite = "all";
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    EvalConfig cfg;
};

CompositeArg composite(const Options& o)
{
    if (o.index.empty() || o.weights.empty())
        throw Error(ErrorCode::InvalidArgument, "--index and --weights are required");
    const auto k = parse_ints(o.index);
    const auto z = parse_rationals(o.weights);
    validate(k, z);
    return CompositeArg(Index(k), WeightSeq(z));
}

Rational required_rational(const std::string& text, const char* flag)
{
    if (text.empty())
        throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
    return Rational::parse(text);
}

void echo_arg(Reply& r, const CompositeArg& a)
{
    r.inputs["index"] = a.index().str();
    r.inputs["weights"] = a.weights().str();
}

// --- commands ---------------------------------------------------------------

Reply cmd_inspect(const Options& o)
{
    Reply r;
    const auto a = composite(o);
    echo_arg(r, a);
    r.result["valid"] = true;
    r.result["ratios"] = rationals(ratios_exact(a.weights()));
    r.result["arrow_right"] = arrow_right(a.index()).str();
    r.result["arrow_up"] = arrow_up(a.index()).str();
    r.result["weight"] = a.index().total_weight();
    return r;
}

Reply cmd_eval(const Options& o)
{
    Reply r;
    Enclosure e;
    if (o.fn == "mzsv") {
        if (!o.weights.empty())
            throw Error(ErrorCode::InvalidArgument, "mzsv takes no --weights");
        const Index k(parse_ints(o.index));
        r.inputs["index"] = k.str();
        e = eval_mzsv(k, o.cfg);
    } else {
        const auto a = composite(o);
        echo_arg(r, a);
        if (o.fn == "lstar")
            e = eval_lstar(a, o.cfg);
        else if (o.fn == "li-star")
            e = eval_li_shuffle_star(a, o.cfg);
        else
            throw Error(ErrorCode::InvalidArgument, "unknown --fn '" + o.fn + "'");
        if (o.trace > 0) {
            std::vector<std::int64_t> at;
            for (std::int64_t t = 32; t < o.trace; t *= 2)
                at.push_back(t);
            at.push_back(o.trace);
            json rows = json::array();
            for (const auto& c : trace_series(NestedSeries::of(a), at))
                rows.push_back({{"terms", c.terms},
                                {"partial_sum", num(static_cast<double>(c.partial_sum))},
                                {"enclosure", enclosure(c.enclosure)}});
            r.result["trace"] = rows;
        }
    }
    r.inputs["fn"] = o.fn;
    r.inputs["tol"] = num(o.cfg.tol);
    r.result["enclosure"] = enclosure(e);
    r.result["midpoint"] = num(e.mid());
    return r;
}

Reply cmd_tail(const Options& o)
{
    Reply r;
    const auto a = composite(o);
    echo_arg(r, a);
    r.inputs["terms"] = o.terms;
    const auto t = tail_bounds(a.index(), a.weights(), o.terms);
    r.result["lower"] = num(static_cast<double>(t.lower));
    r.result["upper"] = num(static_cast<double>(t.upper));
    return r;
}

Reply cmd_compare(const Options& o)
{
    Reply r;
    if (o.a.empty() || o.b.empty())
        throw Error(ErrorCode::InvalidArgument, "--a and --b are required");
    r.inputs["a"] = o.a;
    r.inputs["b"] = o.b;
    if (o.a_tail || o.b_tail) {
        if (!o.a_tail || !o.b_tail)
            throw Error(ErrorCode::InvalidArgument, "give both --a-tail and --b-tail");
        // weights do not enter the order; any admissible constant will do
        auto spec = [](const std::string& text, int tail) {
            auto k = text == "-" ? std::vector<int>{} : parse_ints(text);
            std::vector<Rational> z(k.size(), Rational(1, 2));
            return InfiniteSpec(std::move(k), std::move(z), tail, Rational(1, 2));
        };
        const auto sa = spec(o.a, *o.a_tail);
        const auto sb = spec(o.b, *o.b_tail);
        r.inputs["a_tail"] = *o.a_tail;
        r.inputs["b_tail"] = *o.b_tail;
        r.result["order"] = std::string(to_string(compare_infinite(sa, sb)));
        return r;
    }
    const Index a(parse_ints(o.a));
    const Index b(parse_ints(o.b));
    r.result["order"] = std::string(to_string(compare_finite(a, b)));
    if (!o.weights.empty()) {
        const auto z = parse_rationals(o.weights);
        const std::size_t n = std::max(a.size(), b.size());
        if (z.size() < n)
            throw Error(ErrorCode::LengthMismatch, "--weights needs one weight per position of the longer index");
        auto take = [&](const Index& k) {
            return CompositeArg(k, WeightSeq(std::vector<Rational>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(k.size()))));
        };
        const auto ca = take(a);
        const auto cb = take(b);
        r.inputs["weights"] = WeightSeq(z).str();
        r.result["value_a"] = enclosure(eval_lstar(ca, o.cfg));
        r.result["value_b"] = enclosure(eval_lstar(cb, o.cfg));
        r.result["consistent"] = check_order_value_consistency(ca, cb, o.cfg);
    }
    return r;
}

Reply cmd_counterexample(const Options& o)
{
    Reply r;
    const auto ce = counterexample_li_shuffle(o.cfg);
    r.inputs["lhs"] = "(2,1;2/3,1/3)";
    r.inputs["rhs"] = "(2;2/3)";
    r.result["li_star_lhs"] = enclosure(ce.lhs);
    r.result["li_star_rhs"] = enclosure(ce.rhs);
    r.result["verdict"] = ce.verdict;
    r.result["lstar_lhs"] = enclosure(ce.lstar_lhs);
    r.result["lstar_rhs"] = enclosure(ce.lstar_rhs);
    r.result["lstar_consistent"] = ce.lstar_consistent;
    r.result["inner_sup"] = enclosure(ce.inner_sup);
    r.result["inner_below_one"] = ce.inner_below_one;
    return r;
}

json estimate(const McEstimate& e)
{
    return {{"mean", num(e.mean)}, {"std_error", num(e.std_error)}, {"samples", e.samples}};
}

/// |mean - series| <= 4 stderr + width; a failure sets status 4.
void statistical_check(Reply& r, const McEstimate& est, const Enclosure& series)
{
    const double deviation = std::fabs(est.mean - series.mid());
    const double allowance = 4 * est.std_error + series.width();
    r.result["deviation"] = num(deviation);
    r.result["allowance"] = num(allowance);
    r.result["passed"] = deviation <= allowance;
    if (deviation > allowance)
        r.status = StatisticalFailure;
}

Reply cmd_integral(const Options& o)
{
    Reply r;
    r.inputs["method"] = o.method;
    if (o.method == "blocks") {
        if (o.blocks.empty())
            throw Error(ErrorCode::InvalidArgument, "--blocks is required");
        const auto blocks = parse_ints(o.blocks);
        const auto k = index_from_blocks(blocks);
        int dim = 0;
        for (int b : blocks)
            dim += b;
        r.inputs["blocks"] = o.blocks;
        r.inputs["samples"] = o.samples;
        r.inputs["seed"] = o.seed;
        r.result["index"] = k.str();
        const auto est = mc_estimate(
            dim, [&](std::span<const double> x) { return alternating_product_integrand(blocks, x); }, o.samples,
            o.seed);
        const auto series = eval_mzsv(k, o.cfg);
        r.result["estimate"] = estimate(est);
        r.result["series"] = enclosure(series);
        statistical_check(r, est, series);
        return r;
    }
    const auto a = composite(o);
    echo_arg(r, a);
    if (o.method == "word") {
        const auto w = word_of_index(a.index());
        r.result["symbols"] = w.str();
        r.result["depth"] = w.depth;
    } else if (o.method == "point") {
        const CubeKernel kernel(a);
        const auto x = parse_point(o.point);
        if (static_cast<int>(x.size()) != kernel.dimension())
            throw Error(ErrorCode::LengthMismatch, "--point needs " + std::to_string(kernel.dimension()) + " coordinates");
        for (double xi : x)
            if (!(xi >= 0.0 && xi <= 1.0))
                throw Error(ErrorCode::OutOfRange, "--point coordinates must lie in [0, 1]");
        r.inputs["point"] = o.point;
        r.result["p_form"] = num(cube_integrand(kernel, x));
        r.result["q_form"] = num(q_form_integrand(kernel, x));
    } else if (o.method == "quadrature") {
        const double q = quadrature_iterated(a);
        const auto series = eval_lstar(a, o.cfg);
        r.result["quadrature"] = num(q);
        r.result["series"] = enclosure(series);
        r.result["difference"] = num(q - series.mid());
    } else if (o.method == "mc") {
        EvalConfig cfg = o.cfg;
        cfg.mc_samples = o.samples;
        cfg.rng_seed = o.seed;
        r.inputs["samples"] = o.samples;
        r.inputs["seed"] = o.seed;
        const auto est = mc_cube_estimate(CubeKernel(a), cfg);
        const auto series = eval_lstar(a, o.cfg);
        r.result["estimate"] = estimate(est);
        r.result["series"] = enclosure(series);
        statistical_check(r, est, series);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown --method '" + o.method + "'");
    }
    return r;
}

Reply cmd_averaging(const Options& o)
{
    Reply r;
    if (!(o.alpha >= 0.0 && o.alpha <= 1.0))
        throw Error(ErrorCode::OutOfRange, "--alpha must lie in [0, 1]");
    r.inputs["alpha"] = num(o.alpha);
    r.inputs["m"] = o.m;
    r.result["residual"] = num(averaging_residual(o.alpha, o.m));
    return r;
}

Reply cmd_limit(const Options& o)
{
    Reply r;
    r.inputs["kind"] = o.kind;
    if (o.kind == "ones") {
        const auto z = required_rational(o.z, "--z");
        r.inputs["z"] = z.str();
        r.result["limit"] = num(limit_all_ones(z));
    } else if (o.kind == "same-z") {
        const auto a = composite(o);
        echo_arg(r, a);
        r.result["limit"] = enclosure(limit_ones_tail_same_z(a, o.cfg));
    } else if (o.kind == "smaller-z" || o.kind == "ones-series" || o.kind == "gap") {
        const auto a = composite(o);
        const auto zn = required_rational(o.z_next, "--z-next");
        echo_arg(r, a);
        r.inputs["z_next"] = zn.str();
        if (o.kind == "smaller-z") {
            r.result["limit"] = enclosure(limit_ones_tail_smaller_z(a, zn, o.cfg));
        } else if (o.kind == "ones-series") {
            r.result["limit"] = enclosure(eval_ones_tail(a, zn, o.cfg));
        } else {
            r.result["certificate"] = gap_certificate_exact(a, zn).str();
            r.result["certificate_value"] = num(gap_certificate(a, zn));
        }
    } else if (o.kind == "infinite") {
        const auto k = o.index.empty() ? std::vector<int>{} : parse_ints(o.index);
        const auto z = o.weights.empty() ? std::vector<Rational>{} : parse_rationals(o.weights);
        const InfiniteSpec spec(k, z, o.tail_k, required_rational(o.tail_z, "--tail-z"));
        r.inputs["sequence"] = spec.str();
        r.result["value"] = enclosure(eval_infinite(spec, o.cfg, o.max_len));
    } else if (o.kind == "delta") {
        const Index k(parse_ints(o.index));
        const auto z = required_rational(o.z, "--z");
        r.inputs["index"] = k.str();
        r.inputs["z"] = z.str();
        r.inputs["r"] = o.r;
        r.result["delta"] = enclosure(delta_r(k, z, o.r, o.cfg));
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown --kind '" + o.kind + "'");
    }
    return r;
}

Reply cmd_invert(const Options& o)
{
    Reply r;
    r.inputs["target"] = num(o.target);
    if (!o.weights.empty() && !o.z.empty())
        throw Error(ErrorCode::InvalidArgument, "give either --z or --weights");
    const auto weights = o.weights.empty() ? std::vector<Rational>{required_rational(o.z, "--z")}
                                           : parse_rationals(o.weights);
    r.inputs["weights"] = rationals(weights);
    if (weights.front() >= Rational(1) || weights.front() <= Rational(0))
        throw Error(ErrorCode::OutOfRange, "inversion needs 0 < z < 1");
    r.result["class"] = std::string(to_string(classify_target(o.target, weights.front())));
    if (o.classify_only)
        return r;
    r.inputs["tol"] = num(o.cfg.tol);
    const auto inv = weights.size() == 1 ? invert(o.target, weights.front(), o.cfg.tol, o.max_len)
                                         : invert(o.target, weights, o.cfg.tol, o.max_len);
    r.result["index"] = inv.index.str();
    r.result["length"] = inv.index.size();
    r.result["value"] = enclosure(inv.value);
    r.result["exact_hit"] = inv.exact_hit;
    r.result["evaluations"] = inv.evaluations;
    return r;
}

Reply cmd_verify(const Options& o)
{
    Reply r;
    r.inputs["suite"] = o.suite;
    r.inputs["seed"] = o.seed;
    const auto report = run_verify(o.suite, o.seed);
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        r.text.push_back(std::string(c.passed ? "PASS " : "FAIL ") + c.suite + "/" + c.name + "  " + c.detail);
    }
    r.result["checks"] = checks;
    r.result["passed"] = report.passed();
    r.result["failed"] = report.failed();
    r.text.push_back(std::to_string(report.passed()) + " passed, " + std::to_string(report.failed()) + " failed");
    if (!report.ok())
        r.status = StatisticalFailure;
    return r;
}

json error_payload(const Error& e)
{
    json j = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* t = dynamic_cast<const ToleranceNotReached*>(&e))
        j["best"] = enclosure(t->best());
    if (const auto* m = dynamic_cast<const MaxLengthExceeded*>(&e)) {
        j["best_index"] = m->best().index.str();
        j["best_value"] = enclosure(m->best().value);
    }
    if (const auto* d = dynamic_cast<const NotDenseWeights*>(&e)) {
        j["position"] = d->position();
        j["gap"] = num(d->gap());
    }
    return j;
}

double default_tol()
{
    const char* env = std::getenv(kTolEnv);
    if (!env || !*env)
        return 1e-10;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (*end != '\0' || !(v > 0.0))
        throw CLI::ValidationError(kTolEnv, "must be a positive number");
    return v;
}

} // namespace

const std::vector<Route>& routes()
{
    static const std::vector<Route> table = {
        {"validate", "inspect", {"inspect", "--index", "2,1", "--weights", "1,1/2"}},
        {"ratios", "inspect", {"inspect", "--index", "2,1", "--weights", "1,1/2"}},
        {"arrow_right", "inspect", {"inspect", "--index", "2,1", "--weights", "1,1/2"}},
        {"arrow_up", "inspect", {"inspect", "--index", "2,1", "--weights", "1,1/2"}},
        {"eval_lstar", "eval", {"eval", "--index", "2", "--weights", "1"}},
        {"eval_li_shuffle_star", "eval", {"eval", "--index", "2,1", "--weights", "2/3,1/3", "--fn", "li-star"}},
        {"eval_mzsv", "eval", {"eval", "--index", "2,1", "--fn", "mzsv"}},
        {"tail_bound", "tail", {"tail", "--index", "2,1", "--weights", "1,1", "--terms", "1000"}},
        {"word_of_index", "integral", {"integral", "--index", "2,1", "--weights", "1,1", "--method", "word"}},
        {"cube_integrand", "integral",
         {"integral", "--index", "2,1", "--weights", "1,1", "--method", "point", "--point", "0.5,0.5,0.5"}},
        {"q_form_integrand", "integral",
         {"integral", "--index", "2,1", "--weights", "1,1", "--method", "point", "--point", "0.5,0.5,0.5"}},
        {"mc_cube_estimate", "integral",
         {"integral", "--index", "2", "--weights", "1", "--samples", "20000", "--seed", "7"}},
        {"quadrature_iterated", "integral",
         {"integral", "--index", "2,1", "--weights", "1,1", "--method", "quadrature"}},
        {"alternating_product_integrand", "integral",
         {"integral", "--method", "blocks", "--blocks", "1,1", "--samples", "20000"}},
        {"averaging_residual", "averaging", {"averaging", "--alpha", "0.3", "--m", "5"}},
        {"compare_finite", "compare", {"compare", "--a", "2,1", "--b", "2"}},
        {"compare_infinite", "compare", {"compare", "--a", "2", "--a-tail", "1", "--b", "-", "--b-tail", "1"}},
        {"check_order_value_consistency", "compare", {"compare", "--a", "2,1", "--b", "2", "--weights", "1/2,1/3"}},
        {"counterexample_li_shuffle", "counterexample", {"counterexample"}},
        {"limit_all_ones", "limit", {"limit", "--kind", "ones", "--z", "1/2"}},
        {"limit_ones_tail_same_z", "limit", {"limit", "--kind", "same-z", "--index", "2", "--weights", "1/2"}},
        {"limit_ones_tail_smaller_z", "limit",
         {"limit", "--kind", "smaller-z", "--index", "1", "--weights", "1/2", "--z-next", "1/4"}},
        {"eval_ones_tail", "limit", {"limit", "--kind", "ones-series", "--index", "1", "--weights", "1/2", "--z-next", "1/4"}},
        {"eval_infinite", "limit",
         {"limit", "--kind", "infinite", "--index", "2", "--weights", "1/2", "--tail-k", "2", "--tail-z", "1/2"}},
        {"delta_r", "limit", {"limit", "--kind", "delta", "--index", "2", "--z", "1/2", "--r", "1"}},
        {"gap_certificate", "limit", {"limit", "--kind", "gap", "--index", "1", "--weights", "4/5", "--z-next", "1/2"}},
        {"classify_target", "invert", {"invert", "--target", "1.5", "--z", "1/2", "--classify-only"}},
        {"invert", "invert", {"invert", "--target", "1.7", "--z", "1/2", "--tol", "1e-6"}},
        {"run_verify", "verify", {"verify", "--suite", "identities"}},
    };
    return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Star multi-polylogarithm calculator", "lstar"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    bool timing = false;
    app.add_flag("--json", as_json, "Structured output");
    app.add_flag("--timing", timing, "Report elapsed milliseconds");

    Options o;
    double tol_default = 1e-10;
    try {
        tol_default = default_tol();
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    o.cfg.tol = tol_default;

    using Handler = Reply (*)(const Options&);
    std::vector<std::pair<CLI::App*, Handler>> handlers;

    auto add = [&](const char* name, const char* help, Handler h) {
        auto* sub = app.add_subcommand(name, help);
        handlers.emplace_back(sub, h);
        return sub;
    };
    auto arg_opts = [&](CLI::App* sub) {
        sub->add_option("--index", o.index, "Comma-separated positive integers");
        sub->add_option("--weights", o.weights, "Comma-separated weights, rational (2/3) or decimal");
    };
    auto eval_opts = [&](CLI::App* sub) {
        sub->add_option("--tol", o.cfg.tol, "Enclosure width target")->check(CLI::PositiveNumber);
        sub->add_option("--max-terms", o.cfg.max_terms, "Truncation limit of the series");
    };

    auto* inspect = add("inspect", "Validate an argument and show its ratios and neighbours", cmd_inspect);
    arg_opts(inspect);

    auto* eval = add("eval", "Enclose l*, Li^{sh,*} or a multiple zeta star value", cmd_eval);
    arg_opts(eval);
    eval_opts(eval);
    eval->add_option("--fn", o.fn, "lstar | li-star | mzsv")->check(CLI::IsMember({"lstar", "li-star", "mzsv"}));
    eval->add_option("--trace", o.trace, "Report partial sums up to this many terms");

    auto* tail = add("tail", "Remainder bounds after a number of outer terms", cmd_tail);
    arg_opts(tail);
    tail->add_option("--terms", o.terms, "Truncation M")->check(CLI::PositiveNumber);

    auto* compare = add("compare", "Compare two indices in the total order", cmd_compare);
    compare->add_option("--a", o.a, "First index ('-' for an empty prefix)");
    compare->add_option("--b", o.b, "Second index ('-' for an empty prefix)");
    compare->add_option("--a-tail", o.a_tail, "Repeat this entry forever after --a");
    compare->add_option("--b-tail", o.b_tail, "Repeat this entry forever after --b");
    compare->add_option("--weights", o.weights, "Shared weights; also checks the value order");
    eval_opts(compare);

    add("counterexample", "Order reversal of Li^{sh,*} at (2,1;2/3,1/3) vs (2;2/3)", cmd_counterexample);

    auto* integral = add("integral", "Integral representations", cmd_integral);
    arg_opts(integral);
    eval_opts(integral);
    integral->add_option("--method", o.method, "mc | quadrature | word | point | blocks")
        ->check(CLI::IsMember({"mc", "quadrature", "word", "point", "blocks"}));
    integral->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    integral->add_option("--seed", o.seed, "Monte Carlo seed");
    integral->add_option("--point", o.point, "Point of the unit cube for --method point");
    integral->add_option("--blocks", o.blocks, "Even number of block lengths for --method blocks");

    auto* averaging = add("averaging", "Residual of the averaging identity", cmd_averaging);
    averaging->add_option("--alpha", o.alpha, "alpha in [0, 1]")->required();
    averaging->add_option("--m", o.m, "m >= 1")->required();

    auto* limit = add("limit", "Limits and infinite-length values", cmd_limit);
    arg_opts(limit);
    eval_opts(limit);
    limit->add_option("--kind", o.kind, "ones | same-z | smaller-z | ones-series | infinite | delta | gap")
        ->required()
        ->check(CLI::IsMember({"ones", "same-z", "smaller-z", "ones-series", "infinite", "delta", "gap"}));
    limit->add_option("--z", o.z, "Constant weight");
    limit->add_option("--z-next", o.z_next, "Weight of the appended ones");
    limit->add_option("--tail-k", o.tail_k, "Repeated entry of an infinite index");
    limit->add_option("--tail-z", o.tail_z, "Repeated weight of an infinite index");
    limit->add_option("--r", o.r, "Prefix length for --kind delta");
    limit->add_option("--max-len", o.max_len, "Longest truncation for --kind infinite");

    auto* inv = add("invert", "Find an index whose value approximates a target", cmd_invert);
    inv->add_option("--target", o.target, "Target value")->required();
    inv->add_option("--z", o.z, "Constant weight");
    inv->add_option("--weights", o.weights, "Weight pattern (only constant patterns invert)");
    inv->add_option("--tol", o.cfg.tol, "Distance to the target")->check(CLI::PositiveNumber);
    inv->add_option("--max-len", o.max_len, "Longest index");
    inv->add_flag("--classify-only", o.classify_only, "Only classify the target");

    auto* verify = add("verify", "Built-in verification suites", cmd_verify);
    std::vector<std::string> suites{"all"};
    for (auto s : verify_suites())
        suites.emplace_back(s);
    verify->add_option("--suite", o.suite, "Suite name or all")->check(CLI::IsMember(suites));
    verify->add_option("--seed", o.seed, "Seed of the random instances");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    if (inv->parsed() && inv->count("--tol") == 0)
        o.cfg.tol = 1e-6;

    CLI::App* chosen = nullptr;
    Handler handler = nullptr;
    for (const auto& [sub, h] : handlers)
        if (sub->parsed()) {
            chosen = sub;
            handler = h;
        }
    const std::string command = chosen->get_name();

    json doc = {{"schema", 1}, {"command", command}};
    int status = Ok;
    std::vector<std::string> text;
    const auto start = std::chrono::steady_clock::now();
    try {
        Reply r = handler(o);
        doc["inputs"] = r.inputs;
        doc["result"] = r.result;
        status = r.status;
        text = std::move(r.text);
        if (text.empty())
            render(r.result, "", text);
    } catch (const Error& e) {
        status = is_validation_error(e.code()) ? Validation : Tolerance;
        doc["error"] = error_payload(e);
    } catch (const std::exception& e) {
        status = Internal;
        doc["error"] = {{"code", "Internal"}, {"message", e.what()}};
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (timing)
        doc["elapsed_ms"] = num(elapsed);

    if (as_json) {
        out << doc.dump(2) << "\n";
    } else if (doc.contains("error")) {
        err << "error: " << doc["error"]["message"].get<std::string>() << "\n";
        std::vector<std::string> lines;
        render(doc["error"], "", lines);
        for (const auto& l : lines)
            if (l.rfind("code:", 0) != 0 && l.rfind("message:", 0) != 0)
                err << l << "\n";
    } else {
        for (const auto& line : text)
            out << line << "\n";
        if (timing)
            out << "elapsed_ms: " << num(elapsed) << "\n";
    }
    return status;
}

} // namespace lstar::cli

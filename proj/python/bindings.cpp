#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lstar/cli.hpp"
#include "lstar/integral.hpp"
#include "lstar/inverse.hpp"
#include "lstar/limits.hpp"
#include "lstar/order.hpp"
#include "lstar/series.hpp"
#include "lstar/verify.hpp"

namespace py = pybind11;
using namespace lstar;

namespace {

// Weights arrive as "2/3", ints, floats or fractions.Fraction.
Rational to_rational(const py::handle& h)
{
    if (py::isinstance<py::str>(h))
        return Rational::parse(h.cast<std::string>());
    if (py::isinstance<py::bool_>(h))
        throw Error(ErrorCode::InvalidArgument, "booleans are not weights");
    if (py::isinstance<py::int_>(h))
        return Rational(h.cast<std::int64_t>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h))
        return Rational(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
    if (py::isinstance<py::float_>(h)) {
        // the shortest repr, so 0.1 means 1/10 rather than its binary expansion
        const auto f = py::module_::import("fractions").attr("Fraction")(py::repr(h));
        return Rational(f.attr("numerator").cast<std::int64_t>(), f.attr("denominator").cast<std::int64_t>());
    }
    throw Error(ErrorCode::InvalidArgument, "unsupported weight type");
}

Rational to_rational(const py::object& o)
{
    return to_rational(py::handle(o));
}

std::vector<Rational> to_rationals(const py::sequence& s)
{
    std::vector<Rational> out;
    for (const auto& h : s)
        out.push_back(to_rational(h));
    return out;
}

CompositeArg make_arg(const std::vector<int>& k, const py::sequence& z)
{
    return CompositeArg(Index(k), WeightSeq(to_rationals(z)));
}

std::vector<int> entries(const Index& k)
{
    return {k.entries().begin(), k.entries().end()};
}

EvalConfig config(double tol, std::int64_t max_terms)
{
    EvalConfig c;
    c.tol = tol;
    c.max_terms = max_terms;
    return c;
}

constexpr std::int64_t kMaxTerms = std::int64_t{1} << 26;

} // namespace

PYBIND11_MODULE(_lstar, m)
{
    m.doc() = "Enclosures of star multi-polylogarithms";

    py::register_exception<Error>(m, "LStarError", PyExc_ValueError);

    py::class_<Enclosure>(m, "Enclosure")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &Enclosure::lo)
        .def_readonly("hi", &Enclosure::hi)
        .def_property_readonly("width", &Enclosure::width)
        .def_property_readonly("mid", &Enclosure::mid)
        .def("contains", py::overload_cast<double>(&Enclosure::contains, py::const_), py::arg("x"))
        .def("overlaps", &Enclosure::overlaps)
        .def("below", &Enclosure::below)
        .def("__repr__", [](const Enclosure& e) {
            std::ostringstream os;
            os.precision(17);
            os << "Enclosure(" << e.lo << ", " << e.hi << ")";
            return os.str();
        });

    m.def("validate", [](const std::vector<int>& k, const py::sequence& z) {
        const auto w = to_rationals(z);
        validate(k, w);
    }, py::arg("index"), py::arg("weights"));
    m.def("ratios", [](const py::sequence& z) {
        std::vector<std::string> out;
        for (const auto& r : ratios_exact(WeightSeq(to_rationals(z))))
            out.push_back(r.str());
        return out;
    }, py::arg("weights"), "Exact ratios z_i / z_{i-1} as strings.");
    m.def("arrow_right", [](const std::vector<int>& k) { return entries(arrow_right(Index(k))); });
    m.def("arrow_up", [](const std::vector<int>& k) { return entries(arrow_up(Index(k))); });

    m.def("eval_lstar", [](const std::vector<int>& k, const py::sequence& z, double tol, std::int64_t max_terms) {
        return eval_lstar(make_arg(k, z), config(tol, max_terms));
    }, py::arg("index"), py::arg("weights"), py::arg("tol") = 1e-10, py::arg("max_terms") = kMaxTerms);
    m.def("eval_li_shuffle_star", [](const std::vector<int>& k, const py::sequence& z, double tol, std::int64_t max_terms) {
        return eval_li_shuffle_star(make_arg(k, z), config(tol, max_terms));
    }, py::arg("index"), py::arg("weights"), py::arg("tol") = 1e-10, py::arg("max_terms") = kMaxTerms);
    m.def("eval_mzsv", [](const std::vector<int>& k, double tol) {
        return eval_mzsv(Index(k), config(tol, kMaxTerms));
    }, py::arg("index"), py::arg("tol") = 1e-10);
    m.def("tail_bounds", [](const std::vector<int>& k, const py::sequence& z, std::int64_t terms) {
        const auto t = tail_bounds(Index(k), WeightSeq(to_rationals(z)), terms);
        return py::make_tuple(static_cast<double>(t.lower), static_cast<double>(t.upper));
    }, py::arg("index"), py::arg("weights"), py::arg("terms"));

    m.def("word_of_index", [](const std::vector<int>& k) { return word_of_index(Index(k)).symbols; });
    m.def("cube_integrand", [](const std::vector<int>& k, const py::sequence& z, const std::vector<double>& x) {
        return cube_integrand(CubeKernel(make_arg(k, z)), x);
    }, py::arg("index"), py::arg("weights"), py::arg("x"));
    m.def("q_form_integrand", [](const std::vector<int>& k, const py::sequence& z, const std::vector<double>& x) {
        return q_form_integrand(CubeKernel(make_arg(k, z)), x);
    }, py::arg("index"), py::arg("weights"), py::arg("x"));
    m.def("mc_cube_estimate", [](const std::vector<int>& k, const py::sequence& z, std::int64_t samples, std::uint64_t seed) {
        EvalConfig c;
        c.mc_samples = samples;
        c.rng_seed = seed;
        const auto arg = make_arg(k, z);
        McEstimate e;
        {
            py::gil_scoped_release release;
            e = mc_cube_estimate(CubeKernel(arg), c);
        }
        return py::make_tuple(e.mean, e.std_error, e.samples);
    }, py::arg("index"), py::arg("weights"), py::arg("samples") = 1'000'000, py::arg("seed") = 42);
    m.def("quadrature_iterated", [](const std::vector<int>& k, const py::sequence& z, double tol) {
        return quadrature_iterated(make_arg(k, z), tol);
    }, py::arg("index"), py::arg("weights"), py::arg("tol") = 1e-11);
    m.def("averaging_residual", &averaging_residual, py::arg("alpha"), py::arg("m"));
    m.def("index_from_blocks", [](const std::vector<int>& b) { return entries(index_from_blocks(b)); });

    m.def("compare_finite", [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::string(to_string(compare_finite(Index(a), Index(b))));
    });
    m.def("compare_infinite", [](const std::vector<int>& a, int a_tail, const std::vector<int>& b, int b_tail) {
        const Rational h(1, 2);
        const InfiniteSpec sa(a, std::vector<Rational>(a.size(), h), a_tail, h);
        const InfiniteSpec sb(b, std::vector<Rational>(b.size(), h), b_tail, h);
        return std::string(to_string(compare_infinite(sa, sb)));
    }, py::arg("a"), py::arg("a_tail"), py::arg("b"), py::arg("b_tail"));
    m.def("check_order_value_consistency", [](const std::vector<int>& a, const std::vector<int>& b, const py::sequence& z, double tol) {
        auto w = to_rationals(z);
        auto take = [&](const std::vector<int>& k) {
            if (w.size() < k.size())
                throw Error(ErrorCode::LengthMismatch, "not enough weights");
            return CompositeArg(Index(k), WeightSeq(std::vector<Rational>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k.size()))));
        };
        return check_order_value_consistency(take(a), take(b), config(tol, kMaxTerms));
    }, py::arg("a"), py::arg("b"), py::arg("weights"), py::arg("tol") = 1e-10);
    m.def("counterexample_li_shuffle", [] {
        const auto c = counterexample_li_shuffle();
        py::dict d;
        d["lhs"] = c.lhs;
        d["rhs"] = c.rhs;
        d["verdict"] = c.verdict;
        d["lstar_lhs"] = c.lstar_lhs;
        d["lstar_rhs"] = c.lstar_rhs;
        d["lstar_consistent"] = c.lstar_consistent;
        d["inner_sup"] = c.inner_sup;
        d["inner_below_one"] = c.inner_below_one;
        return d;
    });

    m.def("limit_all_ones", [](const py::object& z) { return limit_all_ones(to_rational(z)); });
    m.def("limit_ones_tail_same_z", [](const std::vector<int>& k, const py::sequence& z) {
        return limit_ones_tail_same_z(make_arg(k, z));
    });
    m.def("limit_ones_tail_smaller_z", [](const std::vector<int>& k, const py::sequence& z, const py::object& zn) {
        return limit_ones_tail_smaller_z(make_arg(k, z), to_rational(zn));
    });
    m.def("eval_ones_tail", [](const std::vector<int>& k, const py::sequence& z, const py::object& zn) {
        return eval_ones_tail(make_arg(k, z), to_rational(zn));
    });
    m.def("eval_infinite", [](const std::vector<int>& prefix, const py::sequence& z, int tail_k, const py::object& tail_z, double tol) {
        return eval_infinite(InfiniteSpec(prefix, to_rationals(z), tail_k, to_rational(tail_z)), config(tol, kMaxTerms));
    }, py::arg("prefix"), py::arg("prefix_weights"), py::arg("tail_k"), py::arg("tail_z"), py::arg("tol") = 1e-10);
    m.def("delta_r", [](const std::vector<int>& k, const py::object& z, std::size_t r) {
        return delta_r(Index(k), to_rational(z), r);
    });
    m.def("gap_certificate", [](const std::vector<int>& k, const py::sequence& z, const py::object& zn) {
        return gap_certificate(make_arg(k, z), to_rational(zn));
    });

    m.def("classify_target", [](double x, const py::object& z) {
        return std::string(to_string(classify_target(x, to_rational(z))));
    });
    m.def("invert", [](double x, const py::object& z, double tol, std::size_t max_len) {
        const auto r = invert(x, to_rational(z), tol, max_len);
        return py::make_tuple(entries(r.index), r.value, r.exact_hit);
    }, py::arg("x"), py::arg("z"), py::arg("tol") = 1e-6, py::arg("max_len") = 4096);

    m.def("run_verify", [](const std::string& suite, std::uint64_t seed) {
        py::list out;
        for (const auto& c : run_verify(suite, seed).checks) {
            py::dict d;
            d["suite"] = c.suite;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["detail"] = c.detail;
            out.append(d);
        }
        return out;
    }, py::arg("suite") = "all", py::arg("seed") = 42);
    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command line tool in-process; returns (exit code, stdout, stderr).");
}

#include "lstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "lstar/integral.hpp"
#include "lstar/inverse.hpp"
#include "lstar/limits.hpp"
#include "lstar/order.hpp"
#include "lstar/series.hpp"

namespace lstar {
namespace {

constexpr double kZeta3 = 1.2020569031595942853997381615114;
constexpr double kZeta5 = 1.0369277551433699263313654864570;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string show(const Enclosure& e)
{
    return "[" + num(e.lo) + ", " + num(e.hi) + "]";
}

/// Small deterministic generator; avoids the implementation-defined
/// standard distributions so reports match across standard libraries.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : gen_(seed) {}

    int integer(int lo, int hi)
    {
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Non-increasing rationals in (0, cap], denominators up to 10.
    std::vector<Rational> weights(std::size_t n, const Rational& cap)
    {
        std::vector<Rational> z;
        for (std::size_t i = 0; i < n; ++i) {
            const int q = integer(2, 10);
            Rational w(integer(1, q), q);
            z.push_back(w > cap ? cap : w);
        }
        std::sort(z.begin(), z.end(), [](const Rational& a, const Rational& b) { return b < a; });
        return z;
    }

    std::vector<int> entries(std::size_t n, int max_entry)
    {
        std::vector<int> k;
        for (std::size_t i = 0; i < n; ++i)
            k.push_back(integer(1, max_entry));
        return k;
    }

private:
    std::mt19937_64 gen_;
};

class Recorder {
public:
    Recorder(VerifyReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}

    void add(std::string name, bool passed, std::string detail)
    {
        report_.checks.push_back({suite_, std::move(name), passed, std::move(detail)});
    }

    /// Runs `body`; library errors become a failed check.
    void guard(const std::string& name, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, false, std::string("error: ") + e.what());
        }
    }

    void contains(const std::string& name, const Enclosure& e, double expected, double max_width)
    {
        add(name, e.contains(expected) && e.width() <= max_width,
            show(e) + " expected " + num(expected));
    }

private:
    VerifyReport& report_;
    std::string suite_;
};

CompositeArg arg(std::vector<int> k, std::vector<Rational> z)
{
    return CompositeArg(Index(std::move(k)), WeightSeq(std::move(z)));
}

std::vector<Index> compositions_up_to(int weight)
{
    std::vector<Index> out;
    std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& cur, int left) {
        if (!cur.empty())
            out.emplace_back(cur);
        for (int a = 1; a <= left; ++a) {
            cur.push_back(a);
            grow(cur, left - a);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    grow(cur, weight);
    return out;
}

void identities(VerifyReport& report, std::uint64_t seed)
{
    Recorder rec(report, "identities");
    Draw draw(seed);
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    const double zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
    const Rational one(1), half(1, 2);

    rec.guard("zeta_star_2", [&] { rec.contains("zeta_star_2", eval_mzsv(Index{2}), pi2_6, 1e-8); });
    rec.guard("zeta_star_3", [&] { rec.contains("zeta_star_3", eval_mzsv(Index{3}), kZeta3, 1e-8); });
    rec.guard("zeta_star_2_1", [&] { rec.contains("zeta_star_2_1", eval_mzsv(Index{2, 1}), 2 * kZeta3, 1e-8); });
    rec.guard("zeta_star_2_1_1", [&] { rec.contains("zeta_star_2_1_1", eval_mzsv(Index{2, 1, 1}), 3 * zeta4, 1e-8); });
    rec.guard("zeta_star_2_1_1_1",
              [&] { rec.contains("zeta_star_2_1_1_1", eval_mzsv(Index{2, 1, 1, 1}), 4 * kZeta5, 1e-8); });
    rec.guard("lstar_1_half",
              [&] { rec.contains("lstar_1_half", eval_lstar(arg({1}, {half})), 2 * std::numbers::ln2, 1e-8); });
    rec.guard("lstar_1_1_half",
              [&] { rec.contains("lstar_1_1_half", eval_lstar(arg({1, 1}, {half, half})), pi2_6, 1e-8); });

    rec.guard("li_shuffle_scaling", [&] {
        int bad = 0;
        for (int t = 0; t < 10; ++t) {
            const auto n = static_cast<std::size_t>(draw.integer(1, 3));
            const auto a = arg(draw.entries(n, 3), draw.weights(n, Rational(9, 10)));
            const auto l = eval_lstar(a);
            const auto s = eval_li_shuffle_star(a);
            const double z = a.weights().back().to_double();
            if (!s.overlaps({l.lo * z * (1 - 1e-15), l.hi * z * (1 + 1e-15)}))
                ++bad;
        }
        rec.add("li_shuffle_scaling", bad == 0, std::to_string(bad) + " of 10 mismatched");
    });

    rec.guard("ratio_reconstruction", [&] {
        int bad = 0;
        for (int t = 0; t < 50; ++t) {
            const WeightSeq z(draw.weights(static_cast<std::size_t>(draw.integer(1, 6)), one));
            const auto rho = ratios_exact(z);
            Rational p(1);
            for (std::size_t i = 0; i < z.size(); ++i) {
                p = p * rho[i];
                if (p != z[i])
                    ++bad;
            }
        }
        rec.add("ratio_reconstruction", bad == 0, std::to_string(bad) + " mismatches");
    });

    rec.guard("arrow_order", [&] {
        int bad = 0;
        for (const auto& k : compositions_up_to(6)) {
            if (compare_finite(arrow_right(k), k) != Ordering::Greater)
                ++bad;
            if (compare_finite(arrow_up(k), k) != Ordering::Less)
                ++bad;
        }
        rec.add("arrow_order", bad == 0, std::to_string(bad) + " violations");
    });

    rec.guard("p_q_forms", [&] {
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            const auto n = static_cast<std::size_t>(draw.integer(1, 3));
            const CubeKernel kernel(arg(draw.entries(n, 3), draw.weights(n, Rational(9, 10))));
            std::vector<double> x(static_cast<std::size_t>(kernel.dimension()));
            for (int s = 0; s < 1000; ++s) {
                for (auto& xi : x)
                    xi = draw.unit();
                const double p = cube_integrand(kernel, x);
                const double q = q_form_integrand(kernel, x);
                worst = std::max(worst, std::fabs(p - q) / std::fabs(p));
            }
        }
        rec.add("p_q_forms", worst <= 1e-12, "max relative difference " + num(worst));
    });

    rec.guard("averaging", [&] {
        double worst = 0.0;
        for (double alpha : {0.0, 0.3, 0.5, 1.0})
            for (int m = 1; m <= 10; ++m)
                worst = std::max(worst, averaging_residual(alpha, m));
        rec.add("averaging", worst < 1e-12, "max residual " + num(worst));
    });
}

void order(VerifyReport& report, std::uint64_t seed)
{
    Recorder rec(report, "order");
    Draw draw(seed ^ 0x6f72646572ULL);

    rec.guard("total_order", [&] {
        const auto all = compositions_up_to(5);
        int bad = 0;
        for (const auto& a : all)
            for (const auto& b : all) {
                const auto ab = compare_finite(a, b);
                const auto ba = compare_finite(b, a);
                const bool eq = a == b;
                if ((ab == Ordering::Equal) != eq)
                    ++bad;
                if (!eq && ab == ba)
                    ++bad;
                for (const auto& c : all)
                    if (ab == Ordering::Greater && compare_finite(b, c) == Ordering::Greater &&
                        compare_finite(a, c) != Ordering::Greater)
                        ++bad;
            }
        rec.add("total_order", bad == 0,
                std::to_string(all.size()) + " indices, " + std::to_string(bad) + " violations");
    });

    rec.guard("value_consistency", [&] {
        int bad = 0;
        const int pairs = 40;
        for (int t = 0; t < pairs; ++t) {
            const auto na = static_cast<std::size_t>(draw.integer(1, 3));
            const auto nb = static_cast<std::size_t>(draw.integer(1, 3));
            const auto z = draw.weights(std::max(na, nb), Rational(9, 10));
            const auto a = arg(draw.entries(na, 3), {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(na)});
            const auto b = arg(draw.entries(nb, 3), {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(nb)});
            try {
                if (!check_order_value_consistency(a, b))
                    ++bad;
            } catch (const Error&) {
                ++bad;
            }
        }
        rec.add("value_consistency", bad == 0, std::to_string(bad) + " of " + std::to_string(pairs) + " inconsistent");
    });

    rec.guard("infinite_order", [&] {
        const Rational h(1, 2);
        const InfiniteSpec ones({}, {}, 1, h);
        const InfiniteSpec two_ones({2}, {h}, 1, h);
        const InfiniteSpec twos({}, {}, 2, h);
        const bool ok = compare_infinite(ones, two_ones) == Ordering::Greater &&
                        compare_infinite(two_ones, twos) == Ordering::Greater &&
                        compare_infinite(InfiniteSpec({1, 1}, {h, h}, 1, h), ones) == Ordering::Equal;
        rec.add("infinite_order", ok, "{1}^inf > (2,{1}^inf) > {2}^inf");
    });

    rec.guard("shuffle_counterexample", [&] {
        const auto ce = counterexample_li_shuffle();
        rec.add("shuffle_counterexample", ce.verdict && ce.lstar_consistent && ce.inner_below_one,
                "li-star " + show(ce.lhs) + " < " + show(ce.rhs) + "; l* " + show(ce.lstar_lhs) + " > " +
                    show(ce.lstar_rhs));
    });
}

void integrals(VerifyReport& report, std::uint64_t seed)
{
    Recorder rec(report, "integrals");
    const Rational one(1), half(1, 2);

    EvalConfig mc;
    mc.mc_samples = std::int64_t{1} << 17;
    mc.rng_seed = seed;
    const std::vector<CompositeArg> cases = {
        arg({2}, {one}),
        arg({2, 1}, {one, one}),
        arg({1}, {half}),
        arg({1, 2}, {Rational(4, 5), Rational(1, 3)}),
        arg({3, 1, 1}, {Rational(9, 10), Rational(1, 2), Rational(1, 2)}),
    };
    for (const auto& a : cases) {
        const std::string name = "mc_" + a.str();
        rec.guard(name, [&] {
            const auto est = mc_cube_estimate(CubeKernel(a), mc);
            const auto v = eval_lstar(a);
            const double dev = std::fabs(est.mean - v.mid());
            rec.add(name, dev <= 4 * est.std_error + v.width(),
                    "mean " + num(est.mean) + " se " + num(est.std_error) + " series " + num(v.mid()));
        });
    }

    rec.guard("alternating_blocks", [&] {
        const std::vector<int> blocks{1, 1, 1, 1};
        const auto k = index_from_blocks(blocks);
        const auto est = mc_estimate(
            4, [&](std::span<const double> x) { return alternating_product_integrand(blocks, x); },
            std::int64_t{1} << 17, seed + 1);
        const auto v = eval_mzsv(k);
        rec.add("alternating_blocks", std::fabs(est.mean - v.mid()) <= 4 * est.std_error + v.width(),
                "index " + k.str() + " mean " + num(est.mean) + " se " + num(est.std_error) + " series " +
                    num(v.mid()));
    });

    for (const auto& a : {arg({1}, {half}), arg({2}, {Rational(9, 10)}), arg({1, 1}, {half, Rational(1, 3)}),
                          arg({2, 1}, {one, one}), arg({1, 1, 1}, {Rational(9, 10), half, half})}) {
        const std::string name = "quadrature_" + a.str();
        rec.guard(name, [&] {
            const double q = quadrature_iterated(a);
            const auto v = eval_lstar(a);
            rec.add(name, std::fabs(q - v.mid()) <= 1e-8 + v.width(),
                    "quadrature " + num(q) + " series " + num(v.mid()));
        });
    }

    rec.guard("word_shape", [&] {
        int bad = 0;
        for (const auto& k : compositions_up_to(6)) {
            const auto w = word_of_index(k);
            if (static_cast<int>(w.symbols.size()) != k.total_weight() || w.symbols.back() != w.depth)
                ++bad;
        }
        rec.add("word_shape", bad == 0, std::to_string(bad) + " malformed words");
    });
}

void limits(VerifyReport& report, std::uint64_t seed)
{
    Recorder rec(report, "limits");
    Draw draw(seed ^ 0x6c696d6974ULL);
    const Rational half(1, 2), quarter(1, 4);

    rec.guard("all_ones", [&] {
        double prev = 0.0;
        bool monotone = true;
        Enclosure last;
        for (std::size_t n = 1; n <= 30; ++n) {
            last = eval_lstar(CompositeArg(Index(std::vector<int>(n, 1)), WeightSeq::constant(half, n)));
            monotone = monotone && last.lo > prev;
            prev = last.hi;
        }
        const double limit = limit_all_ones(half);
        rec.add("all_ones", monotone && std::fabs(last.mid() - limit) <= 1e-3 && last.hi < limit,
                "n=30 " + show(last) + " limit " + num(limit));
    });

    rec.guard("same_z", [&] {
        int bad = 0;
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const auto n = static_cast<std::size_t>(draw.integer(1, 2));
            auto k = draw.entries(n, 3);
            k.back() = std::max(k.back(), 2);
            const auto z = draw.weights(n, Rational(4, 5));
            const auto closed = limit_ones_tail_same_z(arg(k, z));
            auto kk = k;
            auto zz = z;
            kk.insert(kk.end(), 40, 1);
            zz.insert(zz.end(), 40, z.back());
            const auto v = eval_lstar(arg(kk, zz));
            const double d = closed.mid() - v.mid();
            worst = std::max(worst, std::fabs(d));
            if (!(v.lo <= closed.hi && d <= 1e-4))
                ++bad;
        }
        rec.add("same_z", bad == 0, "max gap at n=40 " + num(worst));
    });

    rec.guard("smaller_z", [&] {
        int bad = 0;
        for (int t = 0; t < 5; ++t) {
            const auto n = static_cast<std::size_t>(draw.integer(1, 2));
            const auto z = draw.weights(n + 1, Rational(4, 5));
            if (z[n] == z[n - 1])
                continue;
            const auto a = arg(draw.entries(n, 3), {z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)});
            if (!limit_ones_tail_smaller_z(a, z[n]).overlaps(eval_ones_tail(a, z[n])))
                ++bad;
        }
        const auto c = limit_ones_tail_smaller_z(arg({1}, {half}), quarter);
        const double expected = 4 * std::log(1.5);
        rec.add("smaller_z", bad == 0 && c.contains(expected) && c.width() <= 1e-8,
                std::to_string(bad) + " mismatches; (1;1/2) to 1/4 " + show(c) + " expected " + num(expected));
    });

    rec.guard("delta_r", [&] {
        const auto d = delta_r(Index{2}, half, 1);
        const auto a = eval_lstar(arg({2, 1}, {half, half}));
        const auto b = eval_lstar(arg({2}, {half}));
        const auto diff = affine_difference(Rational(1), a, Rational(1), b);
        rec.add("delta_r", d.overlaps(diff) && d.lo > 0.0, show(d) + " vs " + show(diff));
    });

    rec.guard("gap_certificate", [&] {
        const auto a = arg({1}, {Rational(4, 5)});
        const auto value = eval_lstar(a);
        const auto tail = eval_infinite(InfiniteSpec({2}, {Rational(4, 5)}, 1, half));
        const double gap = gap_certificate(a, half);
        rec.add("gap_certificate", value.lo - tail.hi >= gap,
                "difference >= " + num(value.lo - tail.hi) + " certificate " + num(gap));
    });

    rec.guard("infinite_sandwich", [&] {
        const InfiniteSpec spec({3, 1}, {Rational(3, 4), half}, 2, half);
        const auto v = eval_infinite(spec);
        const auto lower = eval_lstar(spec.truncation(2));
        const auto upper = eval_lstar(arg({3, 1, 1}, {Rational(3, 4), half, half}));
        rec.add("infinite_sandwich", lower.hi < v.lo + 1e-9 && v.hi < upper.lo && v.width() <= 1e-8,
                show(v) + " between " + num(lower.hi) + " and " + num(upper.lo));
    });
}

void inverse(VerifyReport& report, std::uint64_t seed)
{
    Recorder rec(report, "inverse");
    Draw draw(seed ^ 0x696e76ULL);
    const Rational half(1, 2);

    rec.guard("classify", [&] {
        const bool ok = classify_target(2.0, half) == TargetClass::AtMax &&
                        classify_target(1.5, half) == TargetClass::Interior &&
                        classify_target(1.0, half) == TargetClass::OutOfRange;
        rec.add("classify", ok, "2 at max, 1.5 interior, 1 out of range");
    });

    rec.guard("round_trip", [&] {
        int bad = 0;
        std::size_t longest = 0;
        for (int t = 0; t < 10; ++t) {
            const double x = 1.001 + 0.998 * draw.unit();
            const auto inv = invert(x, half, 1e-6);
            const auto again = eval_lstar(CompositeArg(inv.index, WeightSeq::constant(half, inv.index.size())));
            longest = std::max(longest, inv.index.size());
            if (std::fabs(again.mid() - x) > 1e-6)
                ++bad;
        }
        rec.add("round_trip", bad == 0, std::to_string(bad) + " misses, longest index " + std::to_string(longest));
    });

    rec.guard("exact_hit", [&] {
        const auto inv = invert(std::numbers::pi * std::numbers::pi / 6.0, half, 1e-8);
        rec.add("exact_hit", inv.index == Index{1, 1}, "index " + inv.index.str());
    });

    rec.guard("non_constant_weights", [&] {
        const std::vector<Rational> z{Rational(4, 5), half};
        try {
            invert(1.5, z, 1e-6);
            rec.add("non_constant_weights", false, "accepted");
        } catch (const NotDenseWeights& e) {
            rec.add("non_constant_weights", e.position() == 1, "refused at position " + std::to_string(e.position()) +
                                                                   ", gap " + num(e.gap()));
        }
    });
}

using SuiteFn = void (*)(VerifyReport&, std::uint64_t);

struct Suite {
    std::string_view name;
    SuiteFn run;
};

constexpr Suite kSuites[] = {
    {"identities", identities}, {"order", order}, {"integrals", integrals},
    {"limits", limits},         {"inverse", inverse},
};

} // namespace

std::size_t VerifyReport::passed() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
}

std::size_t VerifyReport::failed() const
{
    return checks.size() - passed();
}

const std::vector<std::string_view>& verify_suites()
{
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> n;
        for (const auto& s : kSuites)
            n.push_back(s.name);
        return n;
    }();
    return names;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed)
{
    VerifyReport report;
    bool found = false;
    for (const auto& s : kSuites)
        if (suite == "all" || suite == s.name) {
            s.run(report, seed);
            found = true;
        }
    if (!found)
        throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
    return report;
}

} // namespace lstar

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "lstar/limits.hpp"
#include "oracles.hpp"

using namespace lstar;

namespace {

CompositeArg arg(std::vector<int> k, std::vector<Rational> z)
{
    return CompositeArg(Index(std::move(k)), WeightSeq(std::move(z)));
}

CompositeArg with_ones(const CompositeArg& a, std::size_t n, const Rational& z_next)
{
    std::vector<int> k(a.index().entries().begin(), a.index().entries().end());
    std::vector<Rational> z(a.weights().entries().begin(), a.weights().entries().end());
    k.insert(k.end(), n, 1);
    z.insert(z.end(), n, z_next);
    return arg(k, z);
}

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

struct Random {
    std::mt19937_64 gen;

    Rational weight(std::int64_t max_den, const Rational& cap)
    {
        const auto q = static_cast<std::int64_t>(2 + gen() % static_cast<std::uint64_t>(max_den - 1));
        Rational w(static_cast<std::int64_t>(1 + gen() % static_cast<std::uint64_t>(q)), q);
        return w > cap ? cap : w;
    }

    CompositeArg instance(const Rational& cap, bool last_at_least_two)
    {
        const auto r = 1 + gen() % 2;
        std::vector<int> k;
        std::vector<Rational> z;
        for (std::size_t i = 0; i < r; ++i) {
            k.push_back(static_cast<int>(1 + gen() % 3));
            z.push_back(weight(10, cap));
        }
        if (last_at_least_two)
            k.back() = std::max(k.back(), 2);
        std::sort(z.begin(), z.end(), [](const Rational& a, const Rational& b) { return b < a; });
        return arg(k, z);
    }
};

} // namespace

TEST(AllOnes, Limit)
{
    EXPECT_DOUBLE_EQ(limit_all_ones(Rational(1, 2)), 2.0);
    EXPECT_DOUBLE_EQ(limit_all_ones(Rational(3, 4)), 4.0);
    EXPECT_EQ(code_of([] { limit_all_ones(Rational(1)); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { limit_all_ones(Rational(0)); }), ErrorCode::OutOfRange);
}

TEST(AllOnes, TruncationsIncreaseTowardsTheLimit)
{
    const Rational h(1, 2);
    double prev_hi = 1.0;
    Enclosure e;
    for (std::size_t n = 1; n <= 30; ++n) {
        e = eval_lstar(CompositeArg(Index(std::vector<int>(n, 1)), WeightSeq::constant(h, n)));
        EXPECT_GT(e.lo, prev_hi == 1.0 ? 0.0 : prev_hi - 1e-15) << n;
        EXPECT_LT(e.hi, 2.0);
        prev_hi = e.hi;
    }
    EXPECT_LE(std::fabs(e.mid() - 2.0), 1e-3);
}

TEST(SameZ, ClosedFormIsTheDecrementedIndex)
{
    const Rational h(1, 2), t(2, 3);
    EXPECT_TRUE(limit_ones_tail_same_z(arg({2}, {h}), {}).overlaps(eval_lstar(arg({1}, {h}))));
    EXPECT_TRUE(limit_ones_tail_same_z(arg({3, 2}, {t, h})).overlaps(eval_lstar(arg({3, 1}, {t, h}))));
    EXPECT_EQ(code_of([&] { limit_ones_tail_same_z(arg({2, 1}, {h, h})); }), ErrorCode::LastEntryIsOne);
    // (2;1) would need the divergent (1;1)
    EXPECT_EQ(code_of([&] { limit_ones_tail_same_z(arg({2}, {Rational(1)})); }), ErrorCode::DivergentArg);
}

TEST(SameZ, FiniteAppendedOnesConverge)
{
    Random rnd{std::mt19937_64(41)};
    for (int t = 0; t < 10; ++t) {
        const auto a = rnd.instance(Rational(4, 5), true);
        const auto limit = limit_ones_tail_same_z(a);
        double prev_gap = 1e300;
        for (std::size_t n : {5u, 10u, 20u, 40u}) {
            const auto v = eval_lstar(with_ones(a, n, a.weights().back()));
            const double gap = limit.mid() - v.mid();
            EXPECT_TRUE(v.below(limit) || gap < 1e-9) << a.str() << " n=" << n;
            EXPECT_LT(gap, prev_gap);
            prev_gap = gap;
        }
        EXPECT_LE(prev_gap, 1e-4) << a.str();
    }
}

TEST(SmallerZ, HandDerivedInstance)
{
    const auto v = limit_ones_tail_smaller_z(arg({1}, {Rational(1, 2)}), Rational(1, 4));
    EXPECT_TRUE(v.contains(4 * std::log(1.5)));
    EXPECT_LE(v.width(), 1e-8);
}

TEST(SmallerZ, Errors)
{
    const Rational h(1, 2);
    EXPECT_EQ(code_of([&] { limit_ones_tail_smaller_z(arg({2}, {h}), h); }), ErrorCode::WeightsEqual);
    EXPECT_EQ(code_of([&] { limit_ones_tail_smaller_z(arg({2}, {h}), Rational(3, 4)); }), ErrorCode::WeightIncrease);
}

TEST(SmallerZ, CombinationMatchesDirectSeries)
{
    Random rnd{std::mt19937_64(43)};
    for (int t = 0; t < 10; ++t) {
        const auto a = rnd.instance(Rational(9, 10), false);
        const Rational zr = a.weights().back();
        const Rational zn = zr * Rational(static_cast<std::int64_t>(1 + rnd.gen() % 4), 5);
        const auto combo = limit_ones_tail_smaller_z(a, zn);
        const auto direct = eval_ones_tail(a, zn);
        EXPECT_TRUE(combo.overlaps(direct)) << a.str() << " -> " << zn.str();
        // finite appended ones approach the limit from below
        const auto v = eval_lstar(with_ones(a, 40, zn));
        EXPECT_LE(v.lo, direct.hi) << a.str();
        EXPECT_LE(direct.mid() - v.mid(), 1e-4) << a.str();
    }
}

TEST(OnesTail, EqualWeightFoldsIntoTheExponent)
{
    const Rational h(1, 2);
    const auto a = arg({3, 2}, {Rational(3, 4), h});
    EXPECT_TRUE(eval_ones_tail(a, h).overlaps(limit_ones_tail_same_z(a)));
    EXPECT_EQ(ones_tail_series(a, h).depth(), 2u);
    // (1;1/2) with ones at 1/2: all ones, limit 2
    EXPECT_TRUE(eval_ones_tail(arg({1}, {h}), h).contains(2.0));
}

TEST(Infinite, OnesTailUsesClosedForms)
{
    const Rational h(1, 2), q(1, 4);
    EXPECT_TRUE(eval_infinite(InfiniteSpec({}, {}, 1, h)).contains(2.0));
    EXPECT_TRUE(eval_infinite(InfiniteSpec({1}, {h}, 1, q)).contains(4 * std::log(1.5)));
    EXPECT_TRUE(eval_infinite(InfiniteSpec({2}, {h}, 1, h)).overlaps(eval_lstar(arg({1}, {h}))));
}

TEST(Infinite, LargerTailsSitBetweenTruncations)
{
    const Rational h(1, 2), t(3, 4);
    for (const auto& spec : {InfiniteSpec({}, {}, 2, h), InfiniteSpec({3, 1}, {t, h}, 2, h),
                             InfiniteSpec({1}, {t}, 3, h)}) {
        const auto v = eval_infinite(spec);
        EXPECT_LE(v.width(), 1e-10);
        double prev = 0.0;
        for (std::size_t n = std::max<std::size_t>(spec.prefix().size(), 1); n <= 12; ++n) {
            const auto tr = eval_lstar(spec.truncation(n));
            EXPECT_GT(tr.lo, prev);
            EXPECT_LE(tr.lo, v.hi);
            EXPECT_LT(tr.hi, 1.0 / (1.0 - spec.weight(0).to_double()));
            prev = tr.hi;
        }
        // replacing the tail entry by 1 never lowers the value
        const InfiniteSpec replaced({spec.prefix().begin(), spec.prefix().end()},
                                    {spec.prefix_weights().begin(), spec.prefix_weights().end()}, 1, spec.tail_z());
        const auto ones = eval_infinite(replaced);
        EXPECT_GE(ones.hi, v.hi) << spec.str();
    }
}

TEST(Delta, MatchesTheDifferenceAndVanishes)
{
    const Rational h(1, 2);
    const auto d = delta_r(Index{2, 1}, h, 2);
    const auto diff = affine_difference(Rational(1), eval_lstar(arg({2, 1, 1}, {h, h, h})), Rational(1),
                                        eval_lstar(arg({2, 1}, {h, h})));
    EXPECT_TRUE(d.overlaps(diff));
    EXPECT_GT(d.lo, 0.0);

    const Index ones(std::vector<int>(40, 1));
    double prev = 1e300;
    std::size_t first_small = 0;
    for (std::size_t r = 1; r <= 40; ++r) {
        const auto e = delta_r(ones, h, r);
        // strictly decreasing until the values drown in the enclosure widths
        if (prev > 1e-8) {
            EXPECT_LT(e.hi, prev) << r;
        }
        prev = e.hi;
        if (first_small == 0 && e.hi < 1e-3)
            first_small = r;
        if (first_small) {
            EXPECT_LT(e.hi, 1e-3);
        }
    }
    EXPECT_GT(first_small, 0u);
    EXPECT_EQ(code_of([&] { delta_r(ones, Rational(1), 1); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { delta_r(ones, h, 41); }), ErrorCode::InvalidArgument);
}

TEST(Gap, CertificateHolds)
{
    const Rational e(4, 5), h(1, 2);
    EXPECT_EQ(gap_certificate_exact(arg({1}, {e}), h), Rational(3, 80));
    EXPECT_DOUBLE_EQ(gap_certificate(arg({1}, {e}), h), 0.0375);
    const auto value = eval_lstar(arg({1}, {e}));
    const auto tail = eval_infinite(InfiniteSpec({2}, {e}, 1, h));
    EXPECT_GE(value.lo - tail.hi, 0.0375);
    EXPECT_EQ(code_of([&] { gap_certificate(arg({1}, {e}), e); }), ErrorCode::WeightsEqual);

    Random rnd{std::mt19937_64(47)};
    for (int t = 0; t < 10; ++t) {
        const auto a = rnd.instance(Rational(4, 5), false);
        const Rational zr = a.weights().back();
        const Rational zn = zr * Rational(static_cast<std::int64_t>(1 + rnd.gen() % 3), 4);
        std::vector<int> up(a.index().entries().begin(), a.index().entries().end());
        ++up.back();
        const InfiniteSpec spec(up, {a.weights().entries().begin(), a.weights().entries().end()}, 1, zn);
        EXPECT_GE(eval_lstar(a).lo - eval_infinite(spec).hi, gap_certificate(a, zn)) << a.str();
    }
}

TEST(Affine, OutwardRounded)
{
    const auto e = affine_difference(Rational(2), {1.0, 1.0}, Rational(1, 3), {3.0, 3.0});
    EXPECT_TRUE(e.contains(1.0));
    EXPECT_LE(e.width(), 1e-15);
}

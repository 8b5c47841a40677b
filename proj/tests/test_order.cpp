#include <algorithm>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "lstar/limits.hpp"
#include "lstar/order.hpp"
#include "lstar/series.hpp"

using namespace lstar;

namespace {

std::vector<Index> all_indices(int max_weight)
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
    grow(cur, max_weight);
    return out;
}

} // namespace

TEST(CompareFinite, Examples)
{
    EXPECT_EQ(compare_finite(Index{2, 1}, Index{2}), Ordering::Greater);
    EXPECT_EQ(compare_finite(Index{2}, Index{2, 1}), Ordering::Less);
    EXPECT_EQ(compare_finite(Index{1, 3}, Index{2}), Ordering::Greater);
    EXPECT_EQ(compare_finite(Index{2, 2}, Index{2, 1, 5}), Ordering::Less);
    EXPECT_EQ(compare_finite(Index{3, 1}, Index{3, 1}), Ordering::Equal);
    EXPECT_EQ(to_string(Ordering::Greater), "greater");
}

TEST(CompareFinite, TotalOrderUpToWeightSix)
{
    const auto all = all_indices(6);
    ASSERT_EQ(all.size(), 63u);
    for (const auto& a : all)
        for (const auto& b : all) {
            const auto ab = compare_finite(a, b);
            const auto ba = compare_finite(b, a);
            ASSERT_EQ(ab == Ordering::Equal, a == b);
            if (ab == Ordering::Greater) {
                ASSERT_EQ(ba, Ordering::Less);
            }
            if (ab == Ordering::Less) {
                ASSERT_EQ(ba, Ordering::Greater);
            }
            for (const auto& c : all) {
                if (ab == Ordering::Greater && compare_finite(b, c) == Ordering::Greater) {
                    ASSERT_EQ(compare_finite(a, c), Ordering::Greater);
                }
            }
        }
}

TEST(CompareFinite, ArrowsMoveInOppositeDirections)
{
    for (const auto& k : all_indices(6)) {
        EXPECT_EQ(compare_finite(arrow_right(k), k), Ordering::Greater);
        EXPECT_EQ(compare_finite(arrow_up(k), k), Ordering::Less);
    }
}

TEST(CompareInfinite, TailsAndPrefixes)
{
    const Rational h(1, 2), q(1, 4);
    const InfiniteSpec ones({}, {}, 1, h);
    EXPECT_EQ(compare_infinite(ones, InfiniteSpec({1, 1, 1}, {h, h, h}, 1, h)), Ordering::Equal);
    EXPECT_EQ(compare_infinite(ones, InfiniteSpec({2}, {h}, 1, h)), Ordering::Greater);
    EXPECT_EQ(compare_infinite(InfiniteSpec({2}, {h}, 1, h), InfiniteSpec({2}, {h}, 2, h)), Ordering::Greater);
    EXPECT_EQ(compare_infinite(InfiniteSpec({2, 1, 1, 1}, {h, h, h, h}, 3, h), InfiniteSpec({2}, {h}, 1, q)),
              Ordering::Less);
    // weights do not enter
    EXPECT_EQ(compare_infinite(InfiniteSpec({2}, {h}, 1, h), InfiniteSpec({2}, {h}, 1, q)), Ordering::Equal);
}

TEST(CompareInfinite, InjectiveOnAFixedFamily)
{
    const Rational h(1, 2);
    std::vector<InfiniteSpec> family = {
        InfiniteSpec({}, {}, 1, h),          InfiniteSpec({2}, {h}, 1, h),       InfiniteSpec({1, 2}, {h, h}, 1, h),
        InfiniteSpec({3}, {h}, 1, h),        InfiniteSpec({2, 2}, {h, h}, 1, h), InfiniteSpec({2}, {h}, 2, h),
        InfiniteSpec({1, 1, 2}, {h, h, h}, 1, h),
    };
    std::vector<Enclosure> values;
    for (const auto& s : family)
        values.push_back(eval_infinite(s));
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (i == j)
                continue;
            const auto expected = compare_infinite(family[i], family[j]);
            ASSERT_NE(expected, Ordering::Equal);
            const auto got = compare_values(values[i], values[j]);
            ASSERT_TRUE(got.has_value()) << family[i].str() << " vs " << family[j].str();
            EXPECT_EQ(*got, expected) << family[i].str() << " vs " << family[j].str();
        }
}

TEST(CompareValues, RefusesOverlap)
{
    EXPECT_FALSE(compare_values({1.0, 2.0}, {1.5, 3.0}).has_value());
    EXPECT_EQ(compare_values({1.0, 2.0}, {2.5, 3.0}), Ordering::Less);
    EXPECT_EQ(compare_values({4.0, 5.0}, {2.5, 3.0}), Ordering::Greater);
}

TEST(ValueConsistency, RandomPairsAtSharedWeights)
{
    std::mt19937_64 gen(123);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        const auto na = 1 + gen() % 3;
        const auto nb = 1 + gen() % 3;
        std::vector<Rational> z;
        for (std::size_t i = 0; i < std::max(na, nb); ++i) {
            const auto q = static_cast<std::int64_t>(2 + gen() % 19);
            Rational w(static_cast<std::int64_t>(1 + gen() % static_cast<std::uint64_t>(q)), q);
            z.push_back(std::min(w, Rational(19, 20)));
        }
        std::sort(z.begin(), z.end(), [](const Rational& a, const Rational& b) { return b < a; });
        auto make = [&](std::size_t n) {
            std::vector<int> k;
            for (std::size_t i = 0; i < n; ++i)
                k.push_back(static_cast<int>(1 + gen() % 3));
            return CompositeArg(Index(k), WeightSeq(std::vector<Rational>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n))));
        };
        const auto a = make(na);
        const auto b = make(nb);
        EXPECT_TRUE(check_order_value_consistency(a, b)) << a.str() << " vs " << b.str();
        ++checked;
    }
    EXPECT_EQ(checked, 200);
}

TEST(ValueConsistency, RejectsDifferentWeights)
{
    const CompositeArg a(Index{2}, WeightSeq{Rational(1, 2)});
    const CompositeArg b(Index{2, 1}, WeightSeq{Rational(1, 3), Rational(1, 3)});
    EXPECT_THROW(check_order_value_consistency(a, b), Error);
}

TEST(Counterexample, ShuffleStarBreaksTheOrder)
{
    const auto ce = counterexample_li_shuffle();
    EXPECT_TRUE(ce.verdict);
    EXPECT_TRUE(ce.lhs.below(ce.rhs));
    EXPECT_TRUE(ce.lstar_consistent);
    EXPECT_TRUE(ce.lstar_rhs.below(ce.lstar_lhs));
    EXPECT_TRUE(ce.inner_below_one);
    EXPECT_TRUE(ce.inner_sup.contains(0.69314718055994530942));
}

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "lstar/core.hpp"

using namespace lstar;

namespace {

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

std::vector<Rational> rs(std::initializer_list<const char*> items)
{
    std::vector<Rational> out;
    for (auto s : items)
        out.push_back(Rational::parse(s));
    return out;
}

} // namespace

TEST(Rational, ParsesFractionsAndDecimals)
{
    EXPECT_EQ(Rational::parse("2/3"), Rational(2, 3));
    EXPECT_EQ(Rational::parse("4/6"), Rational(2, 3));
    EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
    EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("1"), Rational(1));
    EXPECT_EQ(Rational::parse(" 3 / 9 "), Rational(1, 3));
    EXPECT_EQ(Rational::parse("-0.5"), Rational(-1, 2));
    EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
    EXPECT_EQ(Rational(2, 3).str(), "2/3");
    EXPECT_EQ(Rational(4, 2).str(), "2");
}

TEST(Rational, RejectsMalformedInput)
{
    for (auto bad : {"", "abc", "1/0", "1.2.3", "/3", "0.123456789012345678", "1e5"})
        EXPECT_EQ(code_of([&] { Rational::parse(bad); }), ErrorCode::InvalidArgument) << bad;
}

TEST(Rational, ArithmeticAndOrder)
{
    const Rational a(2, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(5, 6));
    EXPECT_EQ(a - b, Rational(1, 2));
    EXPECT_EQ(a * b, Rational(1, 9));
    EXPECT_EQ(a / b, Rational(4));
    EXPECT_LT(b, a);
    EXPECT_TRUE(Rational(7, 7).is_one());
    EXPECT_DOUBLE_EQ(a.to_double(), 2.0 / 3.0);
}

TEST(Rational, OverflowThrows)
{
    const Rational big(std::numeric_limits<std::int64_t>::max() / 2, 1);
    EXPECT_THROW(big * big, Error);
}

TEST(Validate, AcceptsAdmissibleArguments)
{
    EXPECT_NO_THROW(validate(std::vector<int>{2, 1}, rs({"1", "1"})));
    EXPECT_NO_THROW(validate(std::vector<int>{1}, rs({"0.5"})));
    EXPECT_NO_THROW(validate(std::vector<int>{1, 3}, rs({"0.9", "0.9"})));
}

TEST(Validate, ReportsEachViolation)
{
    EXPECT_EQ(code_of([] { validate(std::vector<int>{1}, rs({"1"})); }), ErrorCode::DivergentArg);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{1, 1}, rs({"0.5", "0.7"})); }), ErrorCode::NotNonIncreasing);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{2}, rs({"0"})); }), ErrorCode::NonPositiveWeight);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{2}, rs({"-1/2"})); }), ErrorCode::NonPositiveWeight);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{2}, rs({"3/2"})); }), ErrorCode::WeightAboveOne);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{}, rs({})); }), ErrorCode::ZeroLength);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{0}, rs({"1/2"})); }), ErrorCode::NonPositiveEntry);
    EXPECT_EQ(code_of([] { validate(std::vector<int>{2, 1}, rs({"1/2"})); }), ErrorCode::LengthMismatch);
}

TEST(Validate, DivergenceOnlyAtFirstPosition)
{
    // (1, 1) is only excluded as the first pair
    EXPECT_NO_THROW(validate(std::vector<int>{2, 1}, rs({"1", "1"})));
    EXPECT_NO_THROW(validate(std::vector<int>{1}, rs({"0.999"})));
}

TEST(Index, ParseAndHelpers)
{
    const auto k = Index::parse("3, 1,2");
    EXPECT_EQ(k, (Index{3, 1, 2}));
    EXPECT_EQ(k.total_weight(), 6);
    EXPECT_EQ(k.prefix_sums(), (std::vector<int>{3, 4, 6}));
    EXPECT_EQ(k.str(), "3,1,2");
    EXPECT_EQ(code_of([] { Index::parse("2,,1"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Index::parse("2,x"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Index::parse("0"); }), ErrorCode::NonPositiveEntry);
}

TEST(Ratios, Examples)
{
    EXPECT_EQ(ratios_exact(WeightSeq(rs({"0.8", "0.4", "0.2"}))), rs({"4/5", "1/2", "1/2"}));
    EXPECT_EQ(ratios_exact(WeightSeq(rs({"1", "1"}))), rs({"1", "1"}));
    EXPECT_EQ(ratios_exact(WeightSeq(rs({"0.5", "0.5", "0.25"}))), rs({"1/2", "1", "1/2"}));
    const auto d = ratios(WeightSeq(rs({"0.8", "0.4", "0.2"})));
    EXPECT_DOUBLE_EQ(d[0], 0.8);
    EXPECT_DOUBLE_EQ(d[1], 0.5);
}

TEST(Ratios, ReconstructWeights)
{
    std::mt19937_64 gen(7);
    for (int t = 0; t < 500; ++t) {
        const auto n = 1 + gen() % 6;
        std::vector<Rational> z;
        for (std::size_t i = 0; i < n; ++i) {
            const auto q = static_cast<std::int64_t>(2 + gen() % 30);
            z.emplace_back(static_cast<std::int64_t>(1 + gen() % static_cast<std::uint64_t>(q)), q);
        }
        std::sort(z.begin(), z.end(), [](const Rational& a, const Rational& b) { return b < a; });
        const WeightSeq w(z);
        const auto rho = ratios_exact(w);
        Rational p(1);
        double pd = 1.0;
        const auto rd = ratios(w);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_GT(rho[i], Rational(0));
            EXPECT_LE(rho[i], Rational(1));
            p = p * rho[i];
            pd *= rd[i];
            EXPECT_EQ(p, z[i]);
            EXPECT_NEAR(pd, z[i].to_double(), 1e-14);
        }
    }
}

TEST(Arrows, Examples)
{
    EXPECT_EQ(arrow_right(Index{2, 1}), (Index{2, 1, 1}));
    EXPECT_EQ(arrow_up(Index{2, 1}), (Index{2, 2}));
    EXPECT_EQ(arrow_up(Index{3}), (Index{4}));
}

TEST(Arrows, Composition)
{
    for (const auto& k : {Index{1}, Index{2, 1}, Index{3, 1, 4}}) {
        const auto c = arrow_up(arrow_right(k));
        EXPECT_EQ(c.size(), k.size() + 1);
        EXPECT_EQ(c.back(), 2);
        EXPECT_EQ(arrow_right(k).total_weight(), k.total_weight() + 1);
        EXPECT_EQ(arrow_up(k).size(), k.size());
    }
}

TEST(InfiniteSpec, Construction)
{
    const Rational h(1, 2), q(1, 4);
    const InfiniteSpec s({2, 1}, {h, h}, 1, q);
    EXPECT_EQ(s.entry(0), 2);
    EXPECT_EQ(s.entry(5), 1);
    EXPECT_EQ(s.weight(7), q);
    EXPECT_EQ(s.truncation(3).str(), "(2,1,1;1/2,1/2,1/4)");
    EXPECT_EQ(code_of([&] { InfiniteSpec({2}, {Rational(1)}, 1, h); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { InfiniteSpec({}, {}, 1, Rational(1)); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { InfiniteSpec({2}, {q}, 1, h); }), ErrorCode::NotNonIncreasing);
    EXPECT_EQ(code_of([&] { InfiniteSpec({2}, {h}, 0, h); }), ErrorCode::NonPositiveEntry);
    EXPECT_EQ(code_of([&] { InfiniteSpec({2, 1}, {h}, 1, h); }), ErrorCode::LengthMismatch);
}

TEST(InfiniteSpec, CanonicalDropsRepeatsOfTheTail)
{
    const Rational h(1, 2), q(1, 4);
    EXPECT_EQ(InfiniteSpec({2, 1, 1}, {h, h, h}, 1, h).canonical(), InfiniteSpec({2}, {h}, 1, h));
    // same entry but a different weight is kept
    EXPECT_EQ(InfiniteSpec({2, 1}, {h, h}, 1, q).canonical(), InfiniteSpec({2, 1}, {h, h}, 1, q));
}

TEST(EvalConfig, Check)
{
    EvalConfig c;
    EXPECT_NO_THROW(c.check());
    c.tol = 0;
    EXPECT_THROW(c.check(), Error);
    c = {};
    c.max_terms = 1;
    EXPECT_THROW(c.check(), Error);
    c = {};
    c.mc_samples = 0;
    EXPECT_THROW(c.check(), Error);
}

TEST(Enclosure, OutwardRoundingContainsLongDoubleInterval)
{
    const long double lo = 1.0L / 3.0L, hi = 2.0L / 3.0L;
    const auto e = outward(lo, hi);
    EXPECT_LE(static_cast<long double>(e.lo), lo);
    EXPECT_GE(static_cast<long double>(e.hi), hi);
    EXPECT_LT(e.width(), 1.0 / 3.0 + 1e-15);
}

TEST(ErrorCodes, ValidationClassification)
{
    EXPECT_TRUE(is_validation_error(ErrorCode::DivergentArg));
    EXPECT_TRUE(is_validation_error(ErrorCode::NotDenseWeights));
    EXPECT_FALSE(is_validation_error(ErrorCode::ToleranceNotReached));
    EXPECT_FALSE(is_validation_error(ErrorCode::MaxLengthExceeded));
    EXPECT_EQ(to_string(ErrorCode::WeightsEqual), "WeightsEqual");
}

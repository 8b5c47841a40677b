#include "lstar/order.hpp"

#include <algorithm>
#include <vector>

#include "lstar/series.hpp"

namespace lstar {
namespace {

Ordering first_difference(int a, int b)
{
    return a < b ? Ordering::Greater : Ordering::Less;
}

} // namespace

std::string_view to_string(Ordering o)
{
    switch (o) {
    case Ordering::Less: return "less";
    case Ordering::Equal: return "equal";
    case Ordering::Greater: return "greater";
    }
    return "unknown";
}

Ordering compare_finite(const Index& a, const Index& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i])
            return first_difference(a[i], b[i]);
    if (a.size() == b.size())
        return Ordering::Equal;
    return a.size() > b.size() ? Ordering::Greater : Ordering::Less;
}

Ordering compare_infinite(const InfiniteSpec& a, const InfiniteSpec& b)
{
    // past both prefixes the two sequences are constant, so one tail position suffices
    const std::size_t n = std::max(a.prefix().size(), b.prefix().size()) + 1;
    for (std::size_t i = 0; i < n; ++i)
        if (a.entry(i) != b.entry(i))
            return first_difference(a.entry(i), b.entry(i));
    return Ordering::Equal;
}

std::optional<Ordering> compare_values(const Enclosure& a, const Enclosure& b)
{
    if (a.below(b))
        return Ordering::Less;
    if (b.below(a))
        return Ordering::Greater;
    if (a.lo == a.hi && b.lo == b.hi && a.lo == b.lo)
        return Ordering::Equal;
    return std::nullopt;
}

bool check_order_value_consistency(const CompositeArg& a, const CompositeArg& b, const EvalConfig& cfg)
{
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i)
        if (a.weights()[i] != b.weights()[i])
            throw Error(ErrorCode::InvalidArgument, "weights must agree on the common positions");

    const Ordering expected = compare_finite(a.index(), b.index());
    if (expected == Ordering::Equal)
        return a.weights() == b.weights();

    EvalConfig c = cfg;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const auto got = compare_values(eval_lstar(a, c), eval_lstar(b, c));
        if (got)
            return *got == expected;
        c.tol /= 1000.0;
    }
    throw Error(ErrorCode::EnclosuresOverlap, "values of " + a.str() + " and " + b.str() + " not separated");
}

ShuffleCounterexample counterexample_li_shuffle(const EvalConfig& cfg)
{
    const Rational two_thirds(2, 3), one_third(1, 3), half(1, 2);
    const CompositeArg longer(Index{2, 1}, WeightSeq{two_thirds, one_third});
    const CompositeArg shorter(Index{2}, WeightSeq{two_thirds});

    ShuffleCounterexample out;
    out.lhs = eval_li_shuffle_star(longer, cfg);
    out.rhs = eval_li_shuffle_star(shorter, cfg);
    out.verdict = compare_finite(longer.index(), shorter.index()) == Ordering::Greater && out.lhs.below(out.rhs);
    out.lstar_lhs = eval_lstar(longer, cfg);
    out.lstar_rhs = eval_lstar(shorter, cfg);
    out.lstar_consistent = out.lstar_rhs.below(out.lstar_lhs);
    out.inner_sup = eval_li_shuffle_star(CompositeArg(Index{1}, WeightSeq{half}), cfg);
    out.inner_below_one = out.inner_sup.hi < 1.0;
    return out;
}

} // namespace lstar

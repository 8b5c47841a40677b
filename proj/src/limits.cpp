#include "lstar/limits.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <vector>

namespace lstar {
namespace {

void check_next_weight(const CompositeArg& arg, const Rational& z_next)
{
    if (z_next <= Rational(0))
        throw Error(ErrorCode::NonPositiveWeight, "z_next must be positive");
    if (z_next > arg.weights().back())
        throw Error(ErrorCode::WeightIncrease, "z_next exceeds z_r");
}

CompositeArg with_last_weight(const CompositeArg& arg, const Rational& z)
{
    std::vector<Rational> w(arg.weights().entries().begin(), arg.weights().entries().end());
    w.back() = z;
    return CompositeArg(arg.index(), WeightSeq(std::move(w)));
}

CompositeArg with_last_entry(const CompositeArg& arg, int k)
{
    std::vector<int> e(arg.index().entries().begin(), arg.index().entries().end());
    e.back() = k;
    return CompositeArg(Index(std::move(e)), arg.weights());
}

std::vector<SeriesLayer> layers_of(const CompositeArg& arg)
{
    const auto rho = ratios_exact(arg.weights());
    std::vector<SeriesLayer> layers;
    for (std::size_t i = 0; i < arg.size(); ++i)
        layers.push_back({arg.index()[i], rho[i].to_long_double(), rho[i].is_one(), false});
    return layers;
}

} // namespace

double limit_all_ones(const Rational& z)
{
    if (z <= Rational(0) || z >= Rational(1))
        throw Error(ErrorCode::OutOfRange, "limit of all-ones values needs 0 < z < 1");
    return (Rational(1) / (Rational(1) - z)).to_double();
}

Enclosure limit_ones_tail_same_z(const CompositeArg& arg, const EvalConfig& cfg)
{
    if (arg.index().back() < 2)
        throw Error(ErrorCode::LastEntryIsOne, "the closed form needs k_r >= 2");
    return eval_lstar(with_last_entry(arg, arg.index().back() - 1), cfg);
}

Enclosure affine_difference(const Rational& a, const Enclosure& x, const Rational& b, const Enclosure& y)
{
    const long double ca = a.to_long_double();
    const long double cb = b.to_long_double();
    const long double lo = ca * x.lo - cb * y.hi;
    const long double hi = ca * x.hi - cb * y.lo;
    const long double mag = ca * std::max(std::fabs(x.lo), std::fabs(x.hi)) +
                            cb * std::max(std::fabs(y.lo), std::fabs(y.hi));
    const long double pad = 8 * LDBL_EPSILON * mag;
    return outward(lo - pad, hi + pad);
}

Enclosure limit_ones_tail_smaller_z(const CompositeArg& arg, const Rational& z_next, const EvalConfig& cfg)
{
    check_next_weight(arg, z_next);
    const Rational& zr = arg.weights().back();
    if (z_next == zr)
        throw Error(ErrorCode::WeightsEqual, "z_next equals z_r; use the equal-weight limit");
    const Rational gap = zr - z_next;
    const Rational a = zr / gap;
    const Rational b = z_next / gap;
    EvalConfig c = cfg;
    c.tol = cfg.tol / (a + b).to_double();
    return affine_difference(a, eval_lstar(arg, c), b, eval_lstar(with_last_weight(arg, z_next), c));
}

NestedSeries ones_tail_series(const CompositeArg& arg, const Rational& z_next)
{
    check_next_weight(arg, z_next);
    auto layers = layers_of(arg);
    const Rational q = z_next / arg.weights().back();
    layers.push_back({0, q.to_long_double(), q.is_one(), false});
    while (!layers.empty() && layers.back().exponent == 0 && layers.back().unit) {
        layers.pop_back();
        if (layers.empty())
            throw Error(ErrorCode::DivergentArg, "appended-ones limit diverges");
        --layers.back().exponent;
    }
    return NestedSeries(std::move(layers));
}

Enclosure eval_ones_tail(const CompositeArg& arg, const Rational& z_next, const EvalConfig& cfg)
{
    return sum_series(ones_tail_series(arg, z_next), cfg);
}

Enclosure eval_infinite(const InfiniteSpec& spec, const EvalConfig& cfg, std::size_t max_length)
{
    cfg.check();
    if (spec.tail_k() == 1) {
        const auto canon = spec.canonical();
        if (canon.prefix().empty())
            return eval_ones_tail(CompositeArg(Index{1}, WeightSeq{canon.tail_z()}), canon.tail_z(), cfg);
        const CompositeArg prefix(Index(std::vector<int>(canon.prefix().begin(), canon.prefix().end())),
                                  WeightSeq(std::vector<Rational>(canon.prefix_weights().begin(),
                                                                  canon.prefix_weights().end())));
        return eval_ones_tail(prefix, canon.tail_z(), cfg);
    }

    // truncation < value <= truncation with {1}^infinity appended at the tail weight
    EvalConfig c = cfg;
    c.tol = cfg.tol / 4;
    Enclosure best{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    std::size_t n = std::max<std::size_t>(spec.prefix().size() + 1, 2);
    while (true) {
        const auto trunc = spec.truncation(n);
        const auto lower = eval_lstar(trunc, c);
        const auto upper = eval_lstar(with_last_entry(trunc, spec.tail_k() - 1), c);
        best.lo = std::max(best.lo, lower.lo);
        best.hi = std::min(best.hi, upper.hi);
        if (best.width() <= cfg.tol)
            return best;
        if (n >= max_length)
            throw ToleranceNotReached(best, static_cast<std::int64_t>(n), cfg.tol);
        n = std::min(n * 2, max_length);
    }
}

Enclosure delta_r(const Index& k_prefix, const Rational& z, std::size_t r, const EvalConfig& cfg)
{
    if (z <= Rational(0) || z >= Rational(1))
        throw Error(ErrorCode::OutOfRange, "Delta_r needs 0 < z < 1");
    if (r < 1 || r > k_prefix.size())
        throw Error(ErrorCode::InvalidArgument, "r must lie in 1..prefix length");
    std::vector<int> k(k_prefix.entries().begin(), k_prefix.entries().begin() + static_cast<std::ptrdiff_t>(r));
    k.push_back(1);
    auto layers = layers_of(CompositeArg(Index(k), WeightSeq::constant(z, k.size())));
    layers.back().skip_first = true;
    return sum_series(NestedSeries(std::move(layers)), cfg);
}

Rational gap_certificate_exact(const CompositeArg& arg, const Rational& z_next)
{
    check_next_weight(arg, z_next);
    if (z_next == arg.weights().back())
        throw Error(ErrorCode::WeightsEqual, "no gap when z_next equals z_r");
    const int exponent = arg.index().total_weight() + 2;
    if (exponent > 62)
        throw Error(ErrorCode::InvalidArgument, "index weight too large for an exact certificate");
    return (arg.weights().back() - z_next) / Rational(std::int64_t{1} << exponent);
}

double gap_certificate(const CompositeArg& arg, const Rational& z_next)
{
    return gap_certificate_exact(arg, z_next).to_double();
}

} // namespace lstar

#include "lstar/series.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace lstar {
namespace {

constexpr long double kUnitRoundoff = LDBL_EPSILON / 2;

/// Neumaier compensated accumulator.
struct Accumulator {
    long double sum = 0.0L;
    long double comp = 0.0L;

    void add(long double x)
    {
        const long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double value() const { return sum + comp; }
};

long double factorial(int n)
{
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

/// sum_{m > M} a_1(m) h_t(M, m), where h_t is the complete homogeneous sum
/// of {1/j : M < j <= m} of degree t.
long double outer_moment(const SeriesLayer& outer, int t, std::int64_t terms)
{
    const long double M = static_cast<long double>(terms);
    const long double gamma = t > 1 ? 1.0L + (t - 1) / M : 1.0L;
    const long double gamma_t = std::pow(gamma, static_cast<long double>(t));
    if (outer.unit) {
        // integral comparison of m^{-k} (log(m/M) + t/M)^t
        const long double a = outer.exponent - 1;
        const long double delta = t / M;
        long double s = 0.0L;
        for (int l = 0; l <= t; ++l)
            s += std::pow(delta, static_cast<long double>(t - l)) / factorial(t - l) /
                 std::pow(a, static_cast<long double>(l + 1));
        return gamma_t * std::pow(M, -a) * s;
    }
    // geometric comparison with sum_n rho^{n-1} n^t <= t! / (1 - rho)^{t+1}
    const long double rho = outer.ratio;
    const long double head = std::pow(rho, M) * std::pow(M + 1.0L, -static_cast<long double>(outer.exponent));
    const long double poly = t == 0 ? 1.0L : std::pow(t / M, static_cast<long double>(t));
    return head * gamma_t * poly / std::pow(1.0L - rho, static_cast<long double>(t + 1));
}

/// sum_{n > M} ratio^{n-1} / n^{exponent} for a layer without log growth.
long double layer_tail(const SeriesLayer& layer, std::int64_t terms)
{
    const long double M = static_cast<long double>(terms);
    if (layer.unit)
        return 1.0L / ((layer.exponent - 1) * std::pow(M, static_cast<long double>(layer.exponent - 1)));
    return std::pow(layer.ratio, M) /
           ((1.0L - layer.ratio) * std::pow(M + 1.0L, static_cast<long double>(layer.exponent)));
}

/// Running state of the layer-by-layer recursion.
class SeriesState {
public:
    explicit SeriesState(const NestedSeries& series)
        : layers_(series.layers()), acc_(series.depth()), power_(series.depth(), 1.0L)
    {
        for (const auto& l : layers_)
            max_exponent_ = std::max(max_exponent_, l.exponent);
        inv_pow_.resize(max_exponent_ + 1);
    }

    void advance_to(std::int64_t target)
    {
        const std::size_t r = layers_.size();
        while (m_ < target) {
            ++m_;
            const long double inv = 1.0L / static_cast<long double>(m_);
            inv_pow_[0] = 1.0L;
            for (int e = 1; e <= max_exponent_; ++e)
                inv_pow_[e] = inv_pow_[e - 1] * inv;
            for (std::size_t i = r; i-- > 0;) {
                const auto& layer = layers_[i];
                const long double inner = i + 1 == r ? 1.0L : acc_[i + 1].value();
                if (!(layer.skip_first && m_ == 1))
                    acc_[i].add(power_[i] * inv_pow_[layer.exponent] * inner);
                power_[i] *= layer.ratio;
            }
        }
    }

    std::int64_t terms() const { return m_; }
    long double value(std::size_t layer) const { return acc_[layer].value(); }

    /// First-order bound on the relative rounding error of every F_i(M):
    /// running powers, inverse powers, products and compensated sums.
    long double relative_error() const
    {
        long double e = 0.0L;
        for (const auto& l : layers_)
            e += (2.0L * static_cast<long double>(m_) + l.exponent + 6.0L) * kUnitRoundoff;
        return 2.0L * e;
    }

    Enclosure enclosure(const NestedSeries& series) const
    {
        const long double rel = relative_error();
        std::vector<long double> hi_inner, lo_inner;
        for (std::size_t i = 1; i < layers_.size(); ++i) {
            hi_inner.push_back(value(i) * (1.0L + rel));
            lo_inner.push_back(value(i) * (1.0L - rel));
        }
        // pow() of a rounded ratio drifts by about M ulps
        const long double formula = (2.0L * static_cast<long double>(m_) + 128.0L) * kUnitRoundoff;
        const long double upper = nested_tail(series, hi_inner, m_).upper * (1.0L + formula);
        const long double lower = nested_tail(series, lo_inner, m_).lower * (1.0L - formula);
        const long double s = value(0);
        const long double tiny = std::numeric_limits<long double>::min() * 16;
        return outward(s * (1.0L - rel) + lower - tiny, s * (1.0L + rel) + upper + tiny);
    }

private:
    std::span<const SeriesLayer> layers_;
    std::vector<Accumulator> acc_;
    std::vector<long double> power_;
    std::vector<long double> inv_pow_;
    int max_exponent_ = 0;
    std::int64_t m_ = 0;
};

NestedSeries series_from(const Index& k, const WeightSeq& z)
{
    const auto rho = ratios_exact(z);
    std::vector<SeriesLayer> layers;
    for (std::size_t i = 0; i < k.size(); ++i)
        layers.push_back({k[i], rho[i].to_long_double(), rho[i].is_one(), false});
    return NestedSeries(std::move(layers));
}

} // namespace

NestedSeries::NestedSeries(std::vector<SeriesLayer> layers) : layers_(std::move(layers))
{
    if (layers_.empty())
        throw Error(ErrorCode::ZeroLength, "nested series needs at least one layer");
    for (const auto& l : layers_) {
        if (l.exponent < 0)
            throw Error(ErrorCode::InvalidArgument, "negative layer exponent");
        if (l.exponent == 0 && l.unit)
            throw Error(ErrorCode::InvalidArgument, "layer with exponent 0 and ratio 1");
        if (!(l.ratio > 0.0L) || l.ratio > 1.0L || (l.unit && l.ratio != 1.0L))
            throw Error(ErrorCode::InvalidArgument, "layer ratio outside (0, 1]");
    }
    if (layers_.front().unit && layers_.front().exponent < 2)
        throw Error(ErrorCode::DivergentArg, "outer layer with ratio 1 needs exponent >= 2");
}

NestedSeries NestedSeries::of(const CompositeArg& arg)
{
    return series_from(arg.index(), arg.weights());
}

TailBounds nested_tail(const NestedSeries& series, std::span<const long double> inner, std::int64_t terms)
{
    const auto layers = series.layers();
    const auto& outer = layers.front();
    if (inner.size() + 1 != layers.size())
        throw Error(ErrorCode::InvalidArgument, "inner layer values do not match the series depth");
    if (terms < 1)
        throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
    if (outer.unit && outer.exponent < 2)
        throw Error(ErrorCode::Unbounded, "outer sum diverges");

    // F_2(m) = sum_j F_j(M) * I_{2..j-1}(M, m) exactly, where I is the iterated
    // sum over M < n_{j-1} <= ... <= n_2 <= m. Log-growth layers keep their
    // ordering (h_t bound); every other layer is bounded by its own tail.
    auto value_at = [&](std::size_t j) { return j == layers.size() ? 1.0L : inner[j - 1]; };

    TailBounds out;
    long double conv = 1.0L;
    int t = 0;
    bool all_log = true;
    const long double M1 = static_cast<long double>(terms) + 1.0L;
    for (std::size_t j = 1; j <= layers.size(); ++j) {
        if (j >= 2) {
            const auto& layer = layers[j - 1];
            if (layer.log_growth()) {
                ++t;
            } else {
                conv *= layer_tail(layer, terms);
                all_log = false;
            }
        }
        out.upper += value_at(j) * conv * outer_moment(outer, t, terms);
        if (outer.unit && all_log) {
            // sum_{m>M} m^{-k} log((m+1)/(M+1))^t / t! >= integral from M+1
            const long double a = outer.exponent - 1;
            out.lower += value_at(j) * std::pow(M1, -a) / std::pow(a, static_cast<long double>(t + 1));
        }
    }
    return out;
}

Enclosure sum_series(const NestedSeries& series, const EvalConfig& cfg)
{
    cfg.check();
    SeriesState state(series);
    Enclosure best{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    std::int64_t target = std::min<std::int64_t>(32, cfg.max_terms);
    while (true) {
        state.advance_to(target);
        const Enclosure e = state.enclosure(series);
        best.lo = std::max(best.lo, e.lo);
        best.hi = std::min(best.hi, e.hi);
        if (best.width() <= cfg.tol)
            return best;
        if (target >= cfg.max_terms)
            throw ToleranceNotReached(best, target, cfg.tol);
        target = std::min(target * 2, cfg.max_terms);
    }
}

std::vector<SeriesCheckpoint> trace_series(const NestedSeries& series, std::span<const std::int64_t> terms)
{
    SeriesState state(series);
    std::vector<SeriesCheckpoint> out;
    for (auto t : terms) {
        if (t < state.terms() || t < 1)
            throw Error(ErrorCode::InvalidArgument, "checkpoints must be positive and increasing");
        state.advance_to(t);
        out.push_back({t, state.value(0), state.enclosure(series)});
    }
    return out;
}

Enclosure eval_lstar(const CompositeArg& arg, const EvalConfig& cfg)
{
    return sum_series(NestedSeries::of(arg), cfg);
}

Enclosure eval_li_shuffle_star(const CompositeArg& arg, const EvalConfig& cfg)
{
    return scale(eval_lstar(arg, cfg), arg.weights().back());
}

Enclosure eval_mzsv(const Index& k, const EvalConfig& cfg)
{
    if (k[0] < 2)
        throw Error(ErrorCode::DivergentArg, "multiple zeta star values need k_1 >= 2");
    return eval_lstar(CompositeArg(k, WeightSeq::constant(Rational(1), k.size())), cfg);
}

TailBounds tail_bounds(const Index& k, const WeightSeq& z, std::int64_t terms)
{
    validate(k.entries(), z.entries());
    if (terms < 1)
        throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
    const auto series = series_from(k, z);
    SeriesState state(series);
    state.advance_to(terms);
    std::vector<long double> inner;
    for (std::size_t i = 1; i < series.depth(); ++i)
        inner.push_back(state.value(i));
    return nested_tail(series, inner, terms);
}

long double tail_bound(const Index& k, const WeightSeq& z, std::int64_t terms)
{
    return tail_bounds(k, z, terms).upper;
}

Enclosure scale(const Enclosure& e, const Rational& factor)
{
    const long double f = factor.to_long_double();
    const long double pad = 4 * kUnitRoundoff;
    return outward(e.lo * f * (1.0L - pad), e.hi * f * (1.0L + pad));
}

} // namespace lstar

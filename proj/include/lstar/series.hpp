#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lstar/core.hpp"

namespace lstar {

/// One summation layer of a nested series
///
///   F_i(m) = sum_{j=1..m} ratio^{j-1} / j^{exponent} * F_{i+1}(j),  F_{r+1} = 1,
///
/// whose value is F_1(infinity). l* is the case exponent_i = k_i, ratio_i = z_i / z_{i-1}.
struct SeriesLayer {
    int exponent = 1;
    long double ratio = 1.0L;
    /// Exact "ratio == 1"; decides which tail estimates apply.
    bool unit = true;
    /// Drop the j = 1 term (used for increments such as l*(k,1) - l*(k)).
    bool skip_first = false;

    /// ratio == 1 and exponent == 1: partial sums grow like log m.
    bool log_growth() const { return unit && exponent == 1; }
};

/// Layer description of a convergent nested series.
///
/// Exponents may be zero only on layers with ratio < 1, and the outermost
/// layer needs ratio < 1 or exponent >= 2.
class NestedSeries {
public:
    explicit NestedSeries(std::vector<SeriesLayer> layers);

    static NestedSeries of(const CompositeArg& arg);

    std::span<const SeriesLayer> layers() const { return layers_; }
    std::size_t depth() const { return layers_.size(); }

private:
    std::vector<SeriesLayer> layers_;
};

struct TailBounds {
    long double lower = 0.0L;
    long double upper = 0.0L;
};

/// Bounds on sum_{m > M} a_1(m) F_2(m) given the layer values F_2(M), ..., F_r(M).
///
/// `inner` holds F_2(M), ..., F_r(M) (empty for a single layer). Both bounds
/// are rigorous for exact inputs; callers account for rounding.
TailBounds nested_tail(const NestedSeries& series, std::span<const long double> inner, std::int64_t terms);

struct SeriesCheckpoint {
    std::int64_t terms = 0;
    long double partial_sum = 0.0L;
    Enclosure enclosure;
};

/// Sums the series, doubling the truncation until the enclosure width is
/// at most cfg.tol. Throws ToleranceNotReached once cfg.max_terms is hit.
Enclosure sum_series(const NestedSeries& series, const EvalConfig& cfg);

/// Partial sums and enclosures at the requested (increasing) truncations.
std::vector<SeriesCheckpoint> trace_series(const NestedSeries& series, std::span<const std::int64_t> terms);

Enclosure eval_lstar(const CompositeArg& arg, const EvalConfig& cfg = {});

/// Li^{sh,*} = z_r * l*.
Enclosure eval_li_shuffle_star(const CompositeArg& arg, const EvalConfig& cfg = {});

/// Multiple zeta star value: l* with all weights 1; requires k_1 >= 2.
Enclosure eval_mzsv(const Index& k, const EvalConfig& cfg = {});

/// Upper bound on the remainder of the l* series after M outer terms.
long double tail_bound(const Index& k, const WeightSeq& z, std::int64_t terms);

/// Lower and upper remainder bounds after M outer terms.
TailBounds tail_bounds(const Index& k, const WeightSeq& z, std::int64_t terms);

/// Outward-rounded product of an enclosure with a positive rational.
Enclosure scale(const Enclosure& e, const Rational& factor);

} // namespace lstar

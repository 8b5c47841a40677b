#pragma once

#include <optional>
#include <string_view>

#include "lstar/core.hpp"

namespace lstar {

enum class Ordering { Less, Equal, Greater };

std::string_view to_string(Ordering o);

/// Total order on finite indices: a proper extension is greater, otherwise
/// the first differing entry decides and the smaller entry is greater.
Ordering compare_finite(const Index& a, const Index& b);

/// The same order on infinite sequences (weights are not part of the order).
Ordering compare_infinite(const InfiniteSpec& a, const InfiniteSpec& b);

/// Order of two enclosed values, or nullopt when the enclosures overlap.
std::optional<Ordering> compare_values(const Enclosure& a, const Enclosure& b);

/// Checks that compare_finite(a, b) matches the order of the l* values.
/// Both weight sequences must agree on their common positions. Retries with
/// tighter tolerances and throws EnclosuresOverlap if the values stay
/// unseparated.
bool check_order_value_consistency(const CompositeArg& a, const CompositeArg& b, const EvalConfig& cfg = {});

struct ShuffleCounterexample {
    /// Li^{sh,*}_{2,1}(2/3, 1/3) and Li^{sh,*}_2(2/3).
    Enclosure lhs;
    Enclosure rhs;
    /// lhs.hi < rhs.lo although (2,1) > (2).
    bool verdict = false;
    /// The same pair through l*.
    Enclosure lstar_lhs;
    Enclosure lstar_rhs;
    bool lstar_consistent = false;
    /// sup_m sum_{j<=m} 2^{-j}/j = log 2, enclosed.
    Enclosure inner_sup;
    bool inner_below_one = false;
};

ShuffleCounterexample counterexample_li_shuffle(const EvalConfig& cfg = {});

} // namespace lstar

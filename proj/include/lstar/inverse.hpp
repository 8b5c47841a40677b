#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lstar/core.hpp"

namespace lstar {

enum class TargetClass { AtMax, Interior, OutOfRange };

std::string_view to_string(TargetClass c);

/// Position of x relative to the value range (1, 1/(1-z)] of constant-weight l*.
TargetClass classify_target(double x, const Rational& z);

struct Inversion {
    Index index{1};
    Enclosure value;
    /// The target lies inside the enclosure of a finite-index value.
    bool exact_hit = false;
    /// Enclosures of the accepted prefixes, in order.
    std::vector<Enclosure> prefix_values;
    std::size_t evaluations = 0;
};

class MaxLengthExceeded : public Error {
public:
    explicit MaxLengthExceeded(Inversion best);
    const Inversion& best() const noexcept { return best_; }

private:
    Inversion best_;
};

class NotDenseWeights : public Error {
public:
    NotDenseWeights(std::size_t position, double gap);
    /// First r with z_r > z_{r+1} (1-based) and the certified gap below
    /// l*({1}^r; z_1..z_r).
    std::size_t position() const noexcept { return position_; }
    double gap() const noexcept { return gap_; }

private:
    std::size_t position_;
    double gap_;
};

/// Greedy inversion at constant weight z: appends the smallest entry whose
/// value stays below x until some candidate lies within tol of x.
Inversion invert(double x, const Rational& z, double tol, std::size_t max_len = 4096);

/// Inversion for a weight pattern; only constant patterns are accepted,
/// other patterns throw NotDenseWeights.
Inversion invert(double x, std::span<const Rational> weights, double tol, std::size_t max_len = 4096);

} // namespace lstar

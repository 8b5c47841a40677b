#pragma once

#include <cstddef>

#include "lstar/core.hpp"
#include "lstar/series.hpp"

namespace lstar {

/// lim_n l*({1}^n; {z}^n) = 1 / (1 - z) for 0 < z < 1.
double limit_all_ones(const Rational& z);

/// lim_n l*(k, {1}^n; z, {z_r}^n) = l*(k_1, ..., k_r - 1; z) for k_r >= 2.
Enclosure limit_ones_tail_same_z(const CompositeArg& arg, const EvalConfig& cfg = {});

/// lim_n l*(k, {1}^n; z, {z_next}^n) for z_next < z_r, as the combination
///   z_r/(z_r - z_next) l*(k; z) - z_next/(z_r - z_next) l*(k; z_1, ..., z_{r-1}, z_next).
Enclosure limit_ones_tail_smaller_z(const CompositeArg& arg, const Rational& z_next, const EvalConfig& cfg = {});

/// Nested series of lim_n l*(k, {1}^n; z, {z_next}^n): the r-fold sum with
/// the extra factor sum_{j=1..m_r} (z_next/z_r)^{j-1}. When z_next == z_r that
/// factor is m_r and is folded into the exponent of the last layer.
NestedSeries ones_tail_series(const CompositeArg& arg, const Rational& z_next);

/// Direct evaluation of the appended-ones limit through ones_tail_series; z_next <= z_r.
Enclosure eval_ones_tail(const CompositeArg& arg, const Rational& z_next, const EvalConfig& cfg = {});

/// l* of an eventually constant infinite index (limit of its truncations).
///
/// A tail of ones is summed in closed form through ones_tail_series. For a tail
/// entry >= 2 the value is bracketed between the truncation of length n and
/// the same truncation with its last entry decreased by one (the value after
/// appending {1}^infinity), doubling n up to max_length.
Enclosure eval_infinite(const InfiniteSpec& spec, const EvalConfig& cfg = {}, std::size_t max_length = 4096);

/// Delta_r = l*(k_1..k_r, 1; z..z) - l*(k_1..k_r; z..z), summed directly.
Enclosure delta_r(const Index& k_prefix, const Rational& z, std::size_t r, const EvalConfig& cfg = {});

/// (z_r - z_next) / 2^{K_r + 2}: lower bound on
/// l*(k; z) - l*(k_1, ..., k_r + 1, {1}^infinity; z, {z_next}^infinity).
Rational gap_certificate_exact(const CompositeArg& arg, const Rational& z_next);
double gap_certificate(const CompositeArg& arg, const Rational& z_next);

/// Outward-rounded a*x - b*y for positive rationals a, b.
Enclosure affine_difference(const Rational& a, const Enclosure& x, const Rational& b, const Enclosure& y);

} // namespace lstar

#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lstar/rational.hpp"

namespace lstar {

enum class ErrorCode {
    ZeroLength,
    NonPositiveEntry,
    LengthMismatch,
    NonPositiveWeight,
    WeightAboveOne,
    NotNonIncreasing,
    DivergentArg,
    ToleranceNotReached,
    Unbounded,
    DimensionTooLarge,
    LastEntryIsOne,
    WeightsEqual,
    WeightIncrease,
    EnclosuresOverlap,
    MaxLengthExceeded,
    NotDenseWeights,
    OutOfRange,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// True for the codes that signal malformed or inadmissible input.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Closed interval [lo, hi] that contains an exact value.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return lo + 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& other) const { return lo <= other.lo && other.hi <= hi; }
    bool overlaps(const Enclosure& other) const { return lo <= other.hi && other.lo <= hi; }
    bool below(const Enclosure& other) const { return hi < other.lo; }
};

/// Outward-rounded conversion of a long double interval to doubles.
Enclosure outward(long double lo, long double hi);

class ToleranceNotReached : public Error {
public:
    ToleranceNotReached(Enclosure best, std::int64_t terms, double tol);
    const Enclosure& best() const noexcept { return best_; }
    std::int64_t terms() const noexcept { return terms_; }

private:
    Enclosure best_;
    std::int64_t terms_;
};

/// Tuple (k_1, ..., k_r) of positive integers.
class Index {
public:
    Index(std::vector<int> entries);
    Index(std::initializer_list<int> entries) : Index(std::vector<int>(entries)) {}

    /// Comma-separated positive integers, e.g. "2,1,1".
    static Index parse(std::string_view text);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    int back() const { return entries_.back(); }
    std::span<const int> entries() const { return entries_; }

    /// k_1 + ... + k_r.
    int total_weight() const;
    /// K_i = k_1 + ... + k_i for i = 1..r.
    std::vector<int> prefix_sums() const;

    std::string str() const;

    friend bool operator==(const Index&, const Index&) = default;

private:
    std::vector<int> entries_;
};

/// Non-increasing weights 1 >= z_1 >= ... >= z_r > 0.
class WeightSeq {
public:
    WeightSeq(std::vector<Rational> entries);
    WeightSeq(std::initializer_list<Rational> entries) : WeightSeq(std::vector<Rational>(entries)) {}

    static WeightSeq parse(std::string_view text);
    static WeightSeq constant(const Rational& z, std::size_t n);

    std::size_t size() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    const Rational& back() const { return entries_.back(); }
    std::span<const Rational> entries() const { return entries_; }

    std::string str() const;

    friend bool operator==(const WeightSeq&, const WeightSeq&) = default;

private:
    std::vector<Rational> entries_;
};

/// Argument pair of l*: an index with matching weights, (k_1, z_1) != (1, 1).
class CompositeArg {
public:
    CompositeArg(Index index, WeightSeq weights);

    const Index& index() const { return index_; }
    const WeightSeq& weights() const { return weights_; }
    std::size_t size() const { return index_.size(); }

    std::string str() const;

private:
    Index index_;
    WeightSeq weights_;
};

/// Checks every invariant of Index, WeightSeq and CompositeArg; throws Error.
void validate(std::span<const int> index, std::span<const Rational> weights);
void validate(const CompositeArg& arg);

/// Layer ratios rho_1 = z_1, rho_i = z_i / z_{i-1}, computed exactly.
std::vector<Rational> ratios_exact(const WeightSeq& weights);
std::vector<double> ratios(const WeightSeq& weights);

/// (k_1, ..., k_r, 1)
Index arrow_right(const Index& k);
/// (k_1, ..., k_{r-1}, k_r + 1)
Index arrow_up(const Index& k);

/// Index of infinite length: a finite prefix followed by tail_k repeated
/// forever, with weights (prefix weights, tail_z, tail_z, ...).
///
/// The prefix may be empty. z_1 < 1 is required.
class InfiniteSpec {
public:
    InfiniteSpec(std::vector<int> prefix, std::vector<Rational> prefix_weights, int tail_k,
                 Rational tail_z);

    std::span<const int> prefix() const { return prefix_; }
    std::span<const Rational> prefix_weights() const { return prefix_weights_; }
    int tail_k() const { return tail_k_; }
    const Rational& tail_z() const { return tail_z_; }

    int entry(std::size_t i) const;
    const Rational& weight(std::size_t i) const;

    /// First n entries with their weights (n >= 1).
    CompositeArg truncation(std::size_t n) const;

    /// Drops trailing prefix entries that coincide with the tail in both
    /// entry and weight; two specs denote the same sequence iff their
    /// canonical forms are equal.
    InfiniteSpec canonical() const;

    std::string str() const;

    friend bool operator==(const InfiniteSpec&, const InfiniteSpec&) = default;

private:
    std::vector<int> prefix_;
    std::vector<Rational> prefix_weights_;
    int tail_k_;
    Rational tail_z_;
};

struct EvalConfig {
    double tol = 1e-10;
    std::int64_t max_terms = std::int64_t{1} << 26;
    std::int64_t mc_samples = 1'000'000;
    std::uint64_t rng_seed = 42;

    void check() const;
};

} // namespace lstar

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lstar {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Weights are carried as rationals so that equality branches such as
/// z_r == z_{r+1} are decided exactly. Arithmetic throws on overflow
/// instead of silently wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "p/q", integers and plain decimals ("0.25", "1", ".5").
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    long double to_long_double() const;
    double to_double() const;
    std::string str() const;

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace lstar

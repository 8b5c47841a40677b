#include "lstar/rational.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>

#include "lstar/core.hpp"

namespace lstar {
namespace {

std::int64_t narrow(__int128 v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorCode::InvalidArgument, "rational arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

Rational reduced(__int128 num, __int128 den)
{
    if (den == 0)
        throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(s) + "'");
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw Error(ErrorCode::InvalidArgument, "empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return reduced(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty())
        throw Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(text) + "'");
    if (frac.size() > 17)
        throw Error(ErrorCode::InvalidArgument, "too many decimal digits in '" + std::string(text) + "'");

    __int128 num = whole.empty() ? 0 : parse_int(whole);
    __int128 den = 1;
    for (char c : frac) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(text) + "'");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return reduced(negative ? -num : num, den);
}

long double Rational::to_long_double() const
{
    return static_cast<long double>(num_) / static_cast<long double>(den_);
}

double Rational::to_double() const
{
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return reduced(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return reduced(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_, __int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return reduced(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw Error(ErrorCode::InvalidArgument, "division by zero rational");
    return reduced(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    return __int128(a.num_) * b.den_ <=> __int128(b.num_) * a.den_;
}

} // namespace lstar

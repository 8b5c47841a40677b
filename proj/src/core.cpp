#include "lstar/core.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <limits>
#include <sstream>

namespace lstar {
namespace {

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ZeroLength: return "ZeroLength";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::WeightAboveOne: return "WeightAboveOne";
    case ErrorCode::NotNonIncreasing: return "NotNonIncreasing";
    case ErrorCode::DivergentArg: return "DivergentArg";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::LastEntryIsOne: return "LastEntryIsOne";
    case ErrorCode::WeightsEqual: return "WeightsEqual";
    case ErrorCode::WeightIncrease: return "WeightIncrease";
    case ErrorCode::EnclosuresOverlap: return "EnclosuresOverlap";
    case ErrorCode::MaxLengthExceeded: return "MaxLengthExceeded";
    case ErrorCode::NotDenseWeights: return "NotDenseWeights";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_validation_error(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ToleranceNotReached:
    case ErrorCode::EnclosuresOverlap:
    case ErrorCode::MaxLengthExceeded:
        return false;
    default:
        return true;
    }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

ToleranceNotReached::ToleranceNotReached(Enclosure best, std::int64_t terms, double tol)
    : Error(ErrorCode::ToleranceNotReached,
            "enclosure width " + short_num(best.width()) + " above tolerance " + short_num(tol) +
                " after " + std::to_string(terms) + " terms"),
      best_(best), terms_(terms)
{
}

Enclosure outward(long double lo, long double hi)
{
    double l = static_cast<double>(lo);
    double h = static_cast<double>(hi);
    if (static_cast<long double>(l) > lo)
        l = std::nextafter(l, -std::numeric_limits<double>::infinity());
    if (static_cast<long double>(h) < hi)
        h = std::nextafter(h, std::numeric_limits<double>::infinity());
    return {l, h};
}

// ---------------------------------------------------------------------------

void validate(std::span<const int> index, std::span<const Rational> weights)
{
    if (index.empty() || weights.empty())
        throw Error(ErrorCode::ZeroLength, "index and weights must be non-empty");
    for (int k : index)
        if (k < 1)
            throw Error(ErrorCode::NonPositiveEntry, "index entries must be >= 1");
    if (index.size() != weights.size())
        throw Error(ErrorCode::LengthMismatch, "index has " + std::to_string(index.size()) +
                                                   " entries but " + std::to_string(weights.size()) +
                                                   " weights were given");
    const Rational zero(0), one(1);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= zero)
            throw Error(ErrorCode::NonPositiveWeight, "weight " + weights[i].str() + " is not positive");
        if (weights[i] > one)
            throw Error(ErrorCode::WeightAboveOne, "weight " + weights[i].str() + " exceeds 1");
        if (i > 0 && weights[i] > weights[i - 1])
            throw Error(ErrorCode::NotNonIncreasing,
                        "weights must be non-increasing (" + weights[i - 1].str() + " < " + weights[i].str() + ")");
    }
    if (index[0] == 1 && weights[0].is_one())
        throw Error(ErrorCode::DivergentArg, "(k_1, z_1) = (1, 1) diverges");
}

void validate(const CompositeArg& arg)
{
    validate(arg.index().entries(), arg.weights().entries());
}

// ---------------------------------------------------------------------------

Index::Index(std::vector<int> entries) : entries_(std::move(entries))
{
    if (entries_.empty())
        throw Error(ErrorCode::ZeroLength, "index must be non-empty");
    for (int k : entries_)
        if (k < 1)
            throw Error(ErrorCode::NonPositiveEntry, "index entries must be >= 1");
}

Index Index::parse(std::string_view text)
{
    std::vector<int> out;
    while (true) {
        auto comma = text.find(',');
        auto token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ')
            token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ')
            token.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw Error(ErrorCode::InvalidArgument, "malformed index entry '" + std::string(token) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return Index(std::move(out));
}

int Index::total_weight() const
{
    int s = 0;
    for (int k : entries_)
        s += k;
    return s;
}

std::vector<int> Index::prefix_sums() const
{
    std::vector<int> out;
    out.reserve(entries_.size());
    int s = 0;
    for (int k : entries_)
        out.push_back(s += k);
    return out;
}

std::string Index::str() const
{
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(entries_[i]);
    }
    return s;
}

WeightSeq::WeightSeq(std::vector<Rational> entries) : entries_(std::move(entries))
{
    if (entries_.empty())
        throw Error(ErrorCode::ZeroLength, "weights must be non-empty");
    const Rational zero(0), one(1);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] <= zero)
            throw Error(ErrorCode::NonPositiveWeight, "weight " + entries_[i].str() + " is not positive");
        if (entries_[i] > one)
            throw Error(ErrorCode::WeightAboveOne, "weight " + entries_[i].str() + " exceeds 1");
        if (i > 0 && entries_[i] > entries_[i - 1])
            throw Error(ErrorCode::NotNonIncreasing, "weights must be non-increasing (" +
                                                         entries_[i - 1].str() + " < " + entries_[i].str() + ")");
    }
}

WeightSeq WeightSeq::parse(std::string_view text)
{
    std::vector<Rational> out;
    while (true) {
        auto comma = text.find(',');
        out.push_back(Rational::parse(text.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return WeightSeq(std::move(out));
}

WeightSeq WeightSeq::constant(const Rational& z, std::size_t n)
{
    return WeightSeq(std::vector<Rational>(n, z));
}

std::string WeightSeq::str() const
{
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            s += ',';
        s += entries_[i].str();
    }
    return s;
}

CompositeArg::CompositeArg(Index index, WeightSeq weights) : index_(std::move(index)), weights_(std::move(weights))
{
    validate(index_.entries(), weights_.entries());
}

std::string CompositeArg::str() const
{
    return "(" + index_.str() + ";" + weights_.str() + ")";
}

// ---------------------------------------------------------------------------

std::vector<Rational> ratios_exact(const WeightSeq& weights)
{
    std::vector<Rational> out;
    out.reserve(weights.size());
    out.push_back(weights[0]);
    for (std::size_t i = 1; i < weights.size(); ++i)
        out.push_back(weights[i] / weights[i - 1]);
    return out;
}

std::vector<double> ratios(const WeightSeq& weights)
{
    std::vector<double> out;
    for (const auto& q : ratios_exact(weights))
        out.push_back(q.to_double());
    return out;
}

Index arrow_right(const Index& k)
{
    std::vector<int> e(k.entries().begin(), k.entries().end());
    e.push_back(1);
    return Index(std::move(e));
}

Index arrow_up(const Index& k)
{
    std::vector<int> e(k.entries().begin(), k.entries().end());
    ++e.back();
    return Index(std::move(e));
}

// ---------------------------------------------------------------------------

InfiniteSpec::InfiniteSpec(std::vector<int> prefix, std::vector<Rational> prefix_weights, int tail_k,
                           Rational tail_z)
    : prefix_(std::move(prefix)), prefix_weights_(std::move(prefix_weights)), tail_k_(tail_k), tail_z_(tail_z)
{
    if (prefix_.size() != prefix_weights_.size())
        throw Error(ErrorCode::LengthMismatch, "prefix and prefix weights differ in length");
    if (tail_k_ < 1)
        throw Error(ErrorCode::NonPositiveEntry, "tail entry must be >= 1");
    for (int k : prefix_)
        if (k < 1)
            throw Error(ErrorCode::NonPositiveEntry, "index entries must be >= 1");
    const Rational zero(0), one(1);
    if (tail_z_ <= zero)
        throw Error(ErrorCode::NonPositiveWeight, "tail weight must be positive");
    const Rational& first = prefix_weights_.empty() ? tail_z_ : prefix_weights_.front();
    if (first >= one)
        throw Error(ErrorCode::OutOfRange, "infinite-length values require z_1 < 1");
    for (std::size_t i = 1; i < prefix_weights_.size(); ++i)
        if (prefix_weights_[i] > prefix_weights_[i - 1])
            throw Error(ErrorCode::NotNonIncreasing, "weights must be non-increasing");
    for (const auto& w : prefix_weights_)
        if (w <= zero)
            throw Error(ErrorCode::NonPositiveWeight, "weights must be positive");
    if (!prefix_weights_.empty() && tail_z_ > prefix_weights_.back())
        throw Error(ErrorCode::NotNonIncreasing, "tail weight exceeds the last prefix weight");
}

int InfiniteSpec::entry(std::size_t i) const
{
    return i < prefix_.size() ? prefix_[i] : tail_k_;
}

const Rational& InfiniteSpec::weight(std::size_t i) const
{
    return i < prefix_weights_.size() ? prefix_weights_[i] : tail_z_;
}

CompositeArg InfiniteSpec::truncation(std::size_t n) const
{
    std::vector<int> k;
    std::vector<Rational> z;
    for (std::size_t i = 0; i < n; ++i) {
        k.push_back(entry(i));
        z.push_back(weight(i));
    }
    return CompositeArg(Index(std::move(k)), WeightSeq(std::move(z)));
}

InfiniteSpec InfiniteSpec::canonical() const
{
    auto k = prefix_;
    auto z = prefix_weights_;
    while (!k.empty() && k.back() == tail_k_ && z.back() == tail_z_) {
        k.pop_back();
        z.pop_back();
    }
    return InfiniteSpec(std::move(k), std::move(z), tail_k_, tail_z_);
}

std::string InfiniteSpec::str() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < prefix_.size(); ++i)
        os << prefix_[i] << "@" << prefix_weights_[i].str() << ",";
    os << "{" << tail_k_ << "@" << tail_z_.str() << "}^inf)";
    return os.str();
}

void EvalConfig::check() const
{
    if (!(tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    if (max_terms < 2)
        throw Error(ErrorCode::InvalidArgument, "max_terms must be >= 2");
    if (mc_samples < 1)
        throw Error(ErrorCode::InvalidArgument, "mc_samples must be >= 1");
}

} // namespace lstar

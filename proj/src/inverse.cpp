#include "lstar/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lstar/limits.hpp"
#include "lstar/series.hpp"

namespace lstar {
namespace {

constexpr int kMaxEntry = 4096;

std::string gap_text(double gap)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", gap);
    return buf;
}

} // namespace

std::string_view to_string(TargetClass c)
{
    switch (c) {
    case TargetClass::AtMax: return "at_max";
    case TargetClass::Interior: return "interior";
    case TargetClass::OutOfRange: return "out_of_range";
    }
    return "unknown";
}

MaxLengthExceeded::MaxLengthExceeded(Inversion best)
    : Error(ErrorCode::MaxLengthExceeded,
            "no index within tolerance up to length " + std::to_string(best.index.size())),
      best_(std::move(best))
{
}

NotDenseWeights::NotDenseWeights(std::size_t position, double gap)
    : Error(ErrorCode::NotDenseWeights, "weights drop after position " + std::to_string(position) +
                                            "; values miss an interval of length >= " + gap_text(gap)),
      position_(position), gap_(gap)
{
}

TargetClass classify_target(double x, const Rational& z)
{
    if (z <= Rational(0) || z >= Rational(1))
        throw Error(ErrorCode::OutOfRange, "constant weight must satisfy 0 < z < 1");
    const double top = limit_all_ones(z);
    if (std::fabs(x - top) <= 2 * std::numeric_limits<double>::epsilon() * top)
        return TargetClass::AtMax;
    if (x > 1.0 && x < top)
        return TargetClass::Interior;
    return TargetClass::OutOfRange;
}

Inversion invert(double x, const Rational& z, double tol, std::size_t max_len)
{
    if (!(tol > 0.0))
        throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    if (max_len < 1)
        throw Error(ErrorCode::InvalidArgument, "max_len must be >= 1");
    const auto cls = classify_target(x, z);
    if (cls != TargetClass::Interior)
        throw Error(ErrorCode::OutOfRange, "target must lie strictly between 1 and 1/(1-z)");

    EvalConfig cfg;
    cfg.tol = std::clamp(tol * 1e-3, 1e-14, 1e-10);

    Inversion out;
    std::vector<int> prefix;
    while (true) {
        if (prefix.size() >= max_len)
            throw MaxLengthExceeded(out);
        // value(prefix, a) decreases to value(prefix) < x, so the scan stops
        for (int a = 1;; ++a) {
            if (a > kMaxEntry)
                throw Error(ErrorCode::OutOfRange, "entry scan did not separate the target");
            auto cand = prefix;
            cand.push_back(a);
            const CompositeArg arg(Index(cand), WeightSeq::constant(z, cand.size()));
            const auto value = eval_lstar(arg, cfg);
            ++out.evaluations;
            if (std::fabs(value.mid() - x) <= tol) {
                out.index = arg.index();
                out.value = value;
                out.exact_hit = value.contains(x);
                return out;
            }
            if (value.hi < x) {
                prefix = std::move(cand);
                out.index = arg.index();
                out.value = value;
                out.prefix_values.push_back(value);
                break;
            }
        }
    }
}

Inversion invert(double x, std::span<const Rational> weights, double tol, std::size_t max_len)
{
    if (weights.empty())
        throw Error(ErrorCode::ZeroLength, "weight pattern must be non-empty");
    if (weights[0] >= Rational(1) || weights.back() <= Rational(0))
        throw Error(ErrorCode::OutOfRange, "weights must lie in (0, 1)");
    for (std::size_t i = 1; i < weights.size(); ++i) {
        if (weights[i] > weights[i - 1])
            throw Error(ErrorCode::NotNonIncreasing, "weights must be non-increasing");
        if (weights[i] < weights[i - 1]) {
            // certificate for l*({1}^i; z_1..z_i): (z_i - z_{i+1}) / 2^{i+2}
            const double gap = ((weights[i - 1] - weights[i]).to_long_double() /
                                std::ldexp(1.0L, static_cast<int>(i) + 2));
            throw NotDenseWeights(i, gap);
        }
    }
    return invert(x, weights[0], tol, max_len);
}

} // namespace lstar

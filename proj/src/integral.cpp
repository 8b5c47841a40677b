#include "lstar/integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace lstar {
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v)
    {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }

    void merge(const Moments& o)
    {
        if (o.n == 0)
            return;
        const auto total = n + o.n;
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
        n = total;
    }
};

constexpr std::int64_t kBatch = std::int64_t{1} << 14;

double reciprocal_gap(double s)
{
    const double d = 1.0 - s;
    return d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity();
}

} // namespace

std::string IntegralWord::str() const
{
    std::string s;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(symbols[i]);
    }
    return s;
}

IntegralWord word_of_index(const Index& k)
{
    IntegralWord w;
    w.depth = static_cast<int>(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        w.symbols.insert(w.symbols.end(), static_cast<std::size_t>(k[i] - 1), 0);
        w.symbols.push_back(static_cast<int>(i) + 1);
    }
    return w;
}

CubeKernel::CubeKernel(const CompositeArg& arg)
    : arg_(arg), dimension_(arg.index().total_weight()), block_ends_(arg.index().prefix_sums())
{
    for (const auto& z : arg.weights().entries())
        z_.push_back(z.to_double());
}

double CubeKernel::p_sum(std::span<const double> x) const
{
    // running product x_1 ... x_{p-1} before position p
    double prod = 1.0;
    double sum = 0.0;
    std::size_t block = 0;
    for (int p = 1; p <= dimension_; ++p) {
        const double xp = x[static_cast<std::size_t>(p - 1)];
        if (p == block_ends_[block]) {
            sum += prod * (1.0 - xp) * z_[block];
            ++block;
        }
        prod *= xp;
    }
    return sum;
}

double CubeKernel::q_sum(std::span<const double> x) const
{
    // Q_0 = X_{k_1 - 1} z_1, Q_i = -X_{K_i} z_i + X_{K_{i+1} - 1} z_{i+1}, Q_r = -X_{K_r} z_r
    const std::size_t r = block_ends_.size();
    std::vector<double> prefix(static_cast<std::size_t>(dimension_) + 1);
    prefix[0] = 1.0;
    for (int p = 1; p <= dimension_; ++p)
        prefix[static_cast<std::size_t>(p)] = prefix[static_cast<std::size_t>(p - 1)] * x[static_cast<std::size_t>(p - 1)];
    double sum = prefix[static_cast<std::size_t>(block_ends_[0] - 1)] * z_[0];
    for (std::size_t i = 0; i < r; ++i) {
        sum -= prefix[static_cast<std::size_t>(block_ends_[i])] * z_[i];
        if (i + 1 < r)
            sum += prefix[static_cast<std::size_t>(block_ends_[i + 1] - 1)] * z_[i + 1];
    }
    return sum;
}

double cube_integrand(const CubeKernel& kernel, std::span<const double> x)
{
    return reciprocal_gap(kernel.p_sum(x));
}

double q_form_integrand(const CubeKernel& kernel, std::span<const double> x)
{
    return reciprocal_gap(kernel.q_sum(x));
}

McEstimate mc_estimate(int dimension, const std::function<double(std::span<const double>)>& integrand,
                       std::int64_t samples, std::uint64_t seed)
{
    if (samples < 2)
        throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 2 samples");
    if (dimension < 1)
        throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");

    const std::int64_t batches = (samples + kBatch - 1) / kBatch;
    std::vector<Moments> results(static_cast<std::size_t>(batches));

    auto run_batch = [&](std::int64_t b) {
        std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(b))));
        std::vector<double> x(static_cast<std::size_t>(dimension));
        const std::int64_t count = std::min(kBatch, samples - b * kBatch);
        Moments m;
        for (std::int64_t s = 0; s < count; ++s) {
            for (auto& xi : x)
                xi = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            m.push(integrand(x));
        }
        results[static_cast<std::size_t>(b)] = m;
    };

    const auto workers = static_cast<std::int64_t>(
        std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 16u));
    if (workers == 1 || batches == 1) {
        for (std::int64_t b = 0; b < batches; ++b)
            run_batch(b);
    } else {
        std::vector<std::jthread> pool;
        for (std::int64_t w = 0; w < std::min(workers, batches); ++w)
            pool.emplace_back([&, w] {
                for (std::int64_t b = w; b < batches; b += workers)
                    run_batch(b);
            });
    }

    Moments total;
    for (const auto& m : results)
        total.merge(m);
    McEstimate out;
    out.samples = total.n;
    out.mean = total.mean;
    out.std_error = std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n));
    return out;
}

McEstimate mc_cube_estimate(const CubeKernel& kernel, const EvalConfig& cfg)
{
    cfg.check();
    return mc_estimate(
        kernel.dimension(), [&](std::span<const double> x) { return cube_integrand(kernel, x); },
        cfg.mc_samples, cfg.rng_seed);
}

double quadrature_iterated(const CompositeArg& arg, double tol)
{
    const auto word = word_of_index(arg.index());
    if (word.symbols.size() > 3)
        throw Error(ErrorCode::DimensionTooLarge, "iterated quadrature is limited to weight <= 3");

    std::vector<double> z;
    for (const auto& w : arg.weights().entries())
        z.push_back(w.to_double());
    const int r = word.depth;
    const auto& eps = word.symbols;
    const std::size_t k = eps.size();

    auto omega = [&](int symbol, double t) {
        if (symbol == 0)
            return 1.0 / t;
        const double zi = z[static_cast<std::size_t>(symbol - 1)];
        if (symbol == r)
            return 1.0 / (1.0 - zi * t);
        return 1.0 / (t * (1.0 - zi * t));
    };

    boost::math::quadrature::tanh_sinh<double> integrator;
    // G_j(t) = int_0^t omega_{eps_j}(s) G_{j+1}(s) ds; the innermost symbol is always r
    std::function<double(std::size_t, double)> G = [&](std::size_t j, double t) -> double {
        if (t <= 0.0)
            return 0.0;
        if (j + 1 == k) {
            const double zr = z.back();
            return -std::log1p(-zr * t) / zr;
        }
        auto f = [&](double s) {
            if (s <= 0.0)
                return 0.0;
            return omega(eps[j], s) * G(j + 1, s);
        };
        return integrator.integrate(f, 0.0, t, tol);
    };
    return G(0, 1.0);
}

double averaging_residual(double alpha, int m)
{
    if (m < 1)
        throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
    auto f = [&](double x) { return std::pow(1.0 - x * (1.0 - alpha), m - 1); };
    const double lhs = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-15);
    double rhs = 0.0;
    double p = 1.0;
    for (int j = 1; j <= m; ++j) {
        rhs += p;
        p *= alpha;
    }
    return std::fabs(lhs - rhs / m);
}

Index index_from_blocks(std::span<const int> blocks)
{
    if (blocks.empty() || blocks.size() % 2 != 0)
        throw Error(ErrorCode::InvalidArgument, "block lengths must come in pairs");
    std::vector<int> k;
    for (std::size_t i = 0; i < blocks.size(); i += 2) {
        if (blocks[i] < 1 || blocks[i + 1] < 1)
            throw Error(ErrorCode::NonPositiveEntry, "block lengths must be positive");
        k.push_back(blocks[i] + 1);
        k.insert(k.end(), static_cast<std::size_t>(blocks[i + 1] - 1), 1);
    }
    return Index(std::move(k));
}

double alternating_product_integrand(std::span<const int> blocks, std::span<const double> x)
{
    double prod = 1.0;
    double denom = 1.0;
    std::size_t pos = 0;
    double sign = -1.0;
    for (int len : blocks) {
        for (int i = 0; i < len; ++i)
            prod *= x[pos++];
        denom += sign * prod;
        sign = -sign;
    }
    return denom > 0.0 ? 1.0 / denom : std::numeric_limits<double>::infinity();
}

} // namespace lstar

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lstar/core.hpp"

namespace lstar {

/// Symbol sequence (0^{k_1-1}, 1, 0^{k_2-1}, 2, ..., 0^{k_r-1}, r) of the
/// iterated-integral form; symbol 0 is dt/t, symbol i < r is dt/(t(1 - z_i t))
/// and symbol r is dt/(1 - z_r t).
struct IntegralWord {
    std::vector<int> symbols;
    int depth = 0;

    std::string str() const;
};

IntegralWord word_of_index(const Index& k);

/// Cube-integral kernel 1 / (1 - sum_i P_i(x)) over [0,1]^k,
/// P_i(x) = x_1 ... x_{K_i - 1} (1 - x_{K_i}) z_i.
class CubeKernel {
public:
    explicit CubeKernel(const CompositeArg& arg);

    const CompositeArg& arg() const { return arg_; }
    int dimension() const { return dimension_; }
    std::span<const int> block_ends() const { return block_ends_; }
    std::span<const double> weights() const { return z_; }

    /// sum_i P_i(x).
    double p_sum(std::span<const double> x) const;
    /// sum_{i=0..r} Q_i(x) of the shifted form.
    double q_sum(std::span<const double> x) const;

private:
    CompositeArg arg_;
    int dimension_;
    std::vector<int> block_ends_;
    std::vector<double> z_;
};

/// 1 / (1 - sum P_i(x)); +infinity at the singular corner (only when z_1 = 1).
double cube_integrand(const CubeKernel& kernel, std::span<const double> x);

/// 1 / (1 - sum Q_i(x)); algebraically identical to cube_integrand.
double q_form_integrand(const CubeKernel& kernel, std::span<const double> x);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

/// Plain Monte Carlo over [0,1]^dim. Samples are drawn in fixed-size batches,
/// each with its own generator seeded from (seed, batch), and combined in batch
/// order, so the result depends only on (seed, samples).
McEstimate mc_estimate(int dimension, const std::function<double(std::span<const double>)>& integrand,
                       std::int64_t samples, std::uint64_t seed);

/// Monte Carlo estimate of the cube integral with cfg.mc_samples and cfg.rng_seed.
McEstimate mc_cube_estimate(const CubeKernel& kernel, const EvalConfig& cfg);

/// Nested adaptive quadrature of the iterated integral over 1 > t_1 > ... > t_k > 0.
/// Restricted to total weight <= 3.
double quadrature_iterated(const CompositeArg& arg, double tol = 1e-11);

/// |int_0^1 (1 - x(1 - alpha))^{m-1} dx - (1/m) sum_{j=1..m} alpha^{j-1}|.
double averaging_residual(double alpha, int m);

/// Index (j_1 + 1, {1}^{j_2 - 1}, ..., j_{2n-1} + 1, {1}^{j_{2n} - 1}) attached to
/// an even number of positive block lengths.
Index index_from_blocks(std::span<const int> blocks);

/// 1 / (1 - X_{i_1} + X_{i_2} - ... + X_{i_{2n}}), X_i = x_1 ... x_i, with
/// i_l the running sums of the block lengths. Dimension is the block total.
double alternating_product_integrand(std::span<const int> blocks, std::span<const double> x);

} // namespace lstar

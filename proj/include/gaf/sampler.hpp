#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gaf/coefficients.hpp"

namespace gaf {

// Truncation of the series at index K with a two-part guarantee on the disk
// of radius r: conditioned on |xi_n| <= tau_n for all n > K, the discarded
// tail is at most eps_tail in sup norm, and the thresholds fail with
// probability at most eps_fail in total.
struct TruncationPlan {
    double r = 1.0;
    std::int64_t K = 0;
    double eps_tail = 0.0;
    double eps_fail = 0.0;
    double tail_weight_sum = 0.0;  // achieved sum a_n r^n tau_n over n > K
    double tail_prob_sum = 0.0;    // sum exp(-tau_n^2) over n > K

    // tau_n for n > K: sqrt(log((n-K)^2 pi^2 / (6 eps_fail))), a summable
    // union bound with total failure mass exactly eps_fail.
    double tail_threshold(std::int64_t n) const;
};

TruncationPlan truncation_plan(const CoefficientModel& model, double r, double eps_tail,
                               double eps_fail);

// One realization of the coefficient vector (xi_0 .. xi_K).
struct SampleDraw {
    std::int64_t K = 0;
    double plan_r = 1.0;
    std::vector<std::complex<double>> xi;
    double log_weight = 0.0;  // importance log-weight; 0 for untilted draws
    std::uint64_t stream_id = 0;
};

// Deterministic function of (seed, stream_id).
SampleDraw draw(const CoefficientModel& model, const TruncationPlan& plan, std::uint64_t seed,
                std::uint64_t stream_id);

// w_n(rho) for n = 0..K at a fixed evaluation radius, plus their maximum.
// Built once per radius and shared across draws; the scaled evaluation
// below factors e^{w_max} out of every term.
struct WeightProfile {
    double rho = 0.0;
    double w_max = 0.0;
    std::vector<double> w;
};

WeightProfile weight_profile(const CoefficientModel& model, std::int64_t K, double rho);

struct LogEval {
    double log_modulus = 0.0;  // log |f(z)|; -inf when the sum vanishes
    double phase = 0.0;        // arg f(z); meaningless when null
    bool null = false;
};

// Scaled series c_n = xi_n e^{w_n - w_max} for one draw at one radius;
// evaluation on the circle is a Horner pass over the c_n.
struct ScaledSeries {
    double w_max = 0.0;
    std::vector<std::complex<double>> c;

    static ScaledSeries make(std::span<const std::complex<double>> xi, const WeightProfile& profile);
    void assign(std::span<const std::complex<double>> xi, const WeightProfile& profile);

    std::complex<double> sum_at(double theta) const;
    LogEval at_angle(double theta) const;
};

// log |f(z)| and arg f(z) for |z| <= plan radius. Exact for finite-support
// models; within the plan's tail budget otherwise.
LogEval evaluate(const SampleDraw& sample, const CoefficientModel& model, std::complex<double> z);

// Same computation from raw weights; exposed for scaling tests.
LogEval evaluate_scaled(std::span<const double> weights, std::span<const std::complex<double>> xi,
                        double theta);

// Maximum of log |f| over a uniform angular grid on |z| = r. The maximum
// modulus principle puts M(r) on the boundary circle; grid_size must be at
// least 8 (max N(r) + 1).
double max_modulus(const SampleDraw& sample, const CoefficientModel& model, double r,
                   std::int64_t grid_size);

// max over the grid of |d log|f(rho e^{i phi})| / d phi| = |Im(z f'/f)|,
// with f' evaluated by the term-wise differentiated series under the same
// scaling. Diagnostic only; throws "zero on contour" when |f| vanishes at a
// grid point.
double log_deriv_profile(const SampleDraw& sample, const CoefficientModel& model, double rho,
                         std::int64_t grid_size);

}  // namespace gaf

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaf/radial.hpp"
#include "gaf/sampler.hpp"
#include "gaf/stats.hpp"
#include "gaf/zeros.hpp"

namespace gaf {

// Per-coordinate Gaussian scales of the importance proposal. The structure
// mirrors the dominant-constant-term scenario: xi_0 is widened so the
// constant term dominates, indices of N(r) are shrunk below their inverse
// weights, near-threshold indices are shrunk to 1/sqrt(m), everything else
// is left untouched.
struct TiltSchedule {
    double r = 1.0;
    double c0 = 4.0;
    std::vector<double> sigma;  // size K+1, all finite and positive
};

// sigma_0 = max(1, C0 m^{1/4}); n in N(r)\{0}: min(1, e^{-w_n}/sqrt(m));
// n in N~_delta(r)\N(r): min(1, 1/sqrt(m)); otherwise 1. Requires m(r) >= 1.
TiltSchedule tilt_schedule(const CoefficientModel& model, const TruncationPlan& plan, double c0);

struct EstimatorOptions {
    double eps_tail = 1e-9;
    double eps_fail = 1e-9;
    double margin_factor = 1e3;  // ambiguity margin = log(eps_tail * margin_factor)
    double confidence = 0.99;
    unsigned threads = 0;        // 0 = hardware concurrency
    bool self_normalized = false;
};

struct EstimatorReport {
    std::string estimator;  // "naive" | "importance" | "importance-sn"
    double r = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t hole_hits = 0;
    std::uint64_t ambiguous_count = 0;  // counted not_hole in p_hat (downward bias on P)
    double weight_sum = 0.0;            // sum of w 1{hole}
    double weight_sq_sum = 0.0;
    double p_hat = 0.0;
    Interval ci;       // two-sided confidence interval on P(hole)
    double p_h_hat = 0.0;  // -log p_hat, computed in the log domain
    double ess = 0.0;      // (sum w)^2 / sum w^2 over all draws
};

EstimatorReport estimate_naive(const CoefficientModel& model, double r, std::uint64_t trials,
                               std::uint64_t seed, const EstimatorOptions& opts = {});

EstimatorReport estimate_importance(const CoefficientModel& model, double r, std::uint64_t trials,
                                    std::uint64_t seed, const TiltSchedule& schedule,
                                    const EstimatorOptions& opts = {});

// p_H estimate against the deterministic weight S(r), with the sanity band
// [S - C n log S, S + C sqrt(m) log m].
struct Summary {
    double p_h_hat = 0.0;
    double s = 0.0;
    double ratio = 0.0;  // p_h_hat / S; NaN when S = 0
    bool ratio_defined = false;
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool inside = false;
};

Summary summarize(const EstimatorReport& report, const RadialAnalysis& analysis,
                  double c_band = 10.0);

}  // namespace gaf

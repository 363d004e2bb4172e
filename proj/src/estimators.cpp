#include "gaf/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gaf/parallel.hpp"
#include "gaf/rng.hpp"

namespace gaf {

namespace {

bool in_sorted(const std::vector<std::int64_t>& v, std::int64_t n) {
    return std::binary_search(v.begin(), v.end(), n);
}

double ambiguity_margin(const CoefficientModel& model, const EstimatorOptions& opts) {
    // Finite-support models are evaluated exactly; only truncated tails can
    // masquerade as near-zeros.
    if (model.finite_support()) return kNegInf;
    return std::log(opts.eps_tail * opts.margin_factor);
}

struct TrialSums {
    std::uint64_t hits = 0;
    std::uint64_t ambiguous = 0;
    double log_sum_w_hole = 0.0;   // log sum of w 1{hole}
    double log_sum_w2_hole = 0.0;  // log sum of (w 1{hole})^2
    double log_sum_w_all = 0.0;
    double log_sum_w2_all = 0.0;
};

// Sequential deterministic reduction over per-trial slots; the worker count
// never touches the result.
TrialSums reduce_slots(const std::vector<double>& lw_hole, const std::vector<double>& lw_all,
                       const std::vector<std::uint8_t>& status) {
    TrialSums s;
    for (std::uint8_t st : status) {
        if (st == 0) ++s.hits;
        if (st == 2) ++s.ambiguous;
    }
    std::vector<double> tmp(lw_hole.size());
    s.log_sum_w_hole = log_sum_exp(lw_hole);
    for (std::size_t i = 0; i < lw_hole.size(); ++i) tmp[i] = 2.0 * lw_hole[i];
    s.log_sum_w2_hole = log_sum_exp(tmp);
    s.log_sum_w_all = log_sum_exp(lw_all);
    for (std::size_t i = 0; i < lw_all.size(); ++i) tmp[i] = 2.0 * lw_all[i];
    s.log_sum_w2_all = log_sum_exp(tmp);
    return s;
}

EstimatorReport run_estimate(const CoefficientModel& model, double r, std::uint64_t trials,
                             std::uint64_t seed, const TiltSchedule* tilt,
                             const EstimatorOptions& opts) {
    if (trials < 1) throw std::domain_error("estimate: trials must be >= 1");
    if (!(r > 0.0)) throw std::domain_error("estimate: radius must be > 0");

    // The plan lives on the disk of radius max(r, 1); contours at r < 1 are
    // covered a fortiori.
    const TruncationPlan plan =
        truncation_plan(model, std::max(r, 1.0), opts.eps_tail, opts.eps_fail);
    if (tilt && std::int64_t(tilt->sigma.size()) != plan.K + 1)
        throw std::domain_error("estimate: schedule/plan length mismatch");

    const WeightProfile profile = weight_profile(model, plan.K, r);
    std::int64_t max_n = 0;
    for (std::size_t n = 0; n < profile.w.size(); ++n)
        if (profile.w[n] >= 0.0) max_n = std::int64_t(n);
    const std::int64_t grid = winding_grid_size(max_n, plan.K);
    const double margin = ambiguity_margin(model, opts);

    std::vector<double> lw_hole(trials, kNegInf);  // log weight of hole draws
    std::vector<double> lw_all(trials, 0.0);
    std::vector<std::uint8_t> status(trials, 1);  // 0 hole, 1 not_hole, 2 ambiguous

    parallel_chunks(trials, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::complex<double>> xi(std::size_t(plan.K) + 1);
        ScaledSeries series;
        for (std::uint64_t t = lo; t < hi; ++t) {
            RngStream rng(seed, t);
            double logw = 0.0;
            for (std::size_t n = 0; n < xi.size(); ++n) {
                std::complex<double> g = rng.next_complex_gaussian();
                if (tilt) {
                    const double sg = tilt->sigma[n];
                    g *= sg;
                    logw += 2.0 * std::log(sg) - std::norm(g) * (1.0 - 1.0 / (sg * sg));
                }
                xi[n] = g;
            }
            series.assign(xi, profile);
            const ContourScan scan = winding_scan(series, r, margin, grid);
            std::uint8_t st = 1;
            if (scan.ambiguous)
                st = 2;
            else if (scan.count == 0)
                st = 0;
            status[t] = st;
            lw_all[t] = logw;
            if (st == 0) lw_hole[t] = logw;
        }
    });

    const TrialSums sums = reduce_slots(lw_hole, lw_all, status);
    const double log_trials = std::log(double(trials));

    EstimatorReport rep;
    rep.estimator = tilt ? (opts.self_normalized ? "importance-sn" : "importance") : "naive";
    rep.r = r;
    rep.seed = seed;
    rep.trials = trials;
    rep.hole_hits = sums.hits;
    rep.ambiguous_count = sums.ambiguous;
    rep.weight_sum = std::exp(sums.log_sum_w_hole);
    rep.weight_sq_sum = std::exp(sums.log_sum_w2_hole);

    double log_p;
    if (tilt && opts.self_normalized)
        log_p = sums.log_sum_w_hole - sums.log_sum_w_all;
    else
        log_p = sums.log_sum_w_hole - log_trials;
    rep.p_hat = std::exp(log_p);
    rep.p_h_hat = -log_p;

    if (!tilt) {
        rep.ci = clopper_pearson(sums.hits, trials, opts.confidence);
    } else if (sums.hits == 0) {
        rep.ci = Interval{0.0, 0.0};
    } else {
        // Normal-approximation interval on the log scale (delta method):
        // cv^2 = s^2 / (T p^2) with s^2 the sample variance of w 1{hole}.
        const double ratio = std::exp(sums.log_sum_w2_hole - 2.0 * sums.log_sum_w_hole);
        const double n = double(trials);
        const double cv2 = std::max(0.0, (ratio - 1.0 / n) * n / (n - 1.0));
        const double z = normal_quantile(0.5 + opts.confidence / 2.0);
        const double half = z * std::sqrt(cv2);
        rep.ci = Interval{std::exp(log_p - half), std::exp(log_p + half)};
    }

    rep.ess = std::min(std::exp(2.0 * sums.log_sum_w_all - sums.log_sum_w2_all), double(trials));
    return rep;
}

}  // namespace

TiltSchedule tilt_schedule(const CoefficientModel& model, const TruncationPlan& plan, double c0) {
    if (c0 < 0.0) throw std::domain_error("tilt_schedule: C0 must be >= 0");
    const RadialAnalysis analysis = radial_analysis(model, plan.r);
    if (analysis.m_mass < 1)
        throw std::domain_error("tilt_schedule: degenerate radius (m(r) = 0)");
    const double m = double(analysis.m_mass);
    const double sqrt_m = std::sqrt(m);
    const double delta = analysis.delta;
    const std::vector<std::int64_t> n_delta =
        radial_analysis(model, plan.r * std::exp(delta)).power_set;

    TiltSchedule sched;
    sched.r = plan.r;
    sched.c0 = c0;
    sched.sigma.assign(std::size_t(plan.K) + 1, 1.0);
    sched.sigma[0] = std::max(1.0, c0 * std::pow(m, 0.25));
    for (std::size_t k = 1; k < analysis.power_set.size(); ++k)
        sched.sigma[std::size_t(analysis.power_set[k])] =
            std::min(1.0, std::exp(-analysis.weights[k]) / sqrt_m);
    for (std::int64_t n = 1; n <= plan.K; ++n) {
        if (in_sorted(analysis.power_set, n)) continue;
        if (in_sorted(n_delta, n) || double(n) < sqrt_m)
            sched.sigma[std::size_t(n)] = std::min(1.0, 1.0 / sqrt_m);
    }
    return sched;
}

EstimatorReport estimate_naive(const CoefficientModel& model, double r, std::uint64_t trials,
                               std::uint64_t seed, const EstimatorOptions& opts) {
    return run_estimate(model, r, trials, seed, nullptr, opts);
}

EstimatorReport estimate_importance(const CoefficientModel& model, double r, std::uint64_t trials,
                                    std::uint64_t seed, const TiltSchedule& schedule,
                                    const EstimatorOptions& opts) {
    return run_estimate(model, r, trials, seed, &schedule, opts);
}

Summary summarize(const EstimatorReport& report, const RadialAnalysis& analysis, double c_band) {
    Summary s;
    s.p_h_hat = report.p_h_hat;
    s.s = analysis.s_weight;
    if (s.s <= 0.0) {
        s.ratio = std::numeric_limits<double>::quiet_NaN();
        s.ratio_defined = false;
        s.band_lo = 0.0;
        s.band_hi = 0.0;
        s.inside = report.p_h_hat == 0.0;
        return s;
    }
    s.ratio = report.p_h_hat / s.s;
    s.ratio_defined = true;
    const double n = double(analysis.n_count);
    const double m = double(analysis.m_mass);
    s.band_lo = s.s - c_band * n * std::log(s.s);
    s.band_hi = s.s + c_band * std::sqrt(m) * std::log(m);
    s.inside = s.band_lo <= report.p_h_hat && report.p_h_hat <= s.band_hi;
    return s;
}

}  // namespace gaf

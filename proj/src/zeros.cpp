#include "gaf/zeros.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaf/rng.hpp"

namespace gaf {

namespace {

constexpr int kMaxDepth = 40;
constexpr double kPhaseTol = 1e-6;

double wrap_phase(double d) {
    // principal branch difference in (-pi, pi]
    d = std::remainder(d, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return d;
}

struct Walker {
    const ScaledSeries& series;
    double min_log = std::numeric_limits<double>::infinity();
    std::int64_t refinements = 0;
    bool ambiguous = false;

    LogEval eval(double theta) {
        LogEval e = series.at_angle(theta);
        if (e.log_modulus < min_log) min_log = e.log_modulus;
        return e;
    }

    double segment(double ta, const LogEval& va, double tb, const LogEval& vb, int depth) {
        if (va.null || vb.null) {
            ambiguous = true;
            return 0.0;
        }
        const double d = wrap_phase(vb.phase - va.phase);
        if (std::abs(d) <= kPi / 2.0) return d;
        if (depth >= kMaxDepth) {
            ambiguous = true;
            return d;
        }
        const double tm = 0.5 * (ta + tb);
        const LogEval vm = eval(tm);
        ++refinements;
        return segment(ta, va, tm, vm, depth + 1) + segment(tm, vm, tb, vb, depth + 1);
    }
};

}  // namespace

const char* to_string(HoleStatus s) {
    switch (s) {
        case HoleStatus::Hole: return "hole";
        case HoleStatus::NotHole: return "not_hole";
        case HoleStatus::Ambiguous: return "ambiguous";
    }
    return "?";
}

std::int64_t winding_grid_size(std::int64_t max_power_index, std::int64_t K) {
    return 8 * (max_power_index + K / 4 + 4);
}

ContourScan winding_scan(const ScaledSeries& series, double r, double margin,
                         std::int64_t initial_grid) {
    if (initial_grid < 8) throw std::domain_error("winding_scan: initial grid too small");
    Walker walker{series};
    std::vector<double> thetas(std::size_t(initial_grid));
    std::vector<LogEval> vals(std::size_t(initial_grid));
    for (std::int64_t i = 0; i < initial_grid; ++i) {
        thetas[std::size_t(i)] = kTwoPi * double(i) / double(initial_grid);
        vals[std::size_t(i)] = walker.eval(thetas[std::size_t(i)]);
    }
    double total = 0.0;
    for (std::int64_t i = 0; i < initial_grid; ++i) {
        const std::size_t a = std::size_t(i);
        const std::size_t b = std::size_t((i + 1) % initial_grid);
        const double tb = (i + 1 == initial_grid) ? kTwoPi : thetas[b];
        total += walker.segment(thetas[a], vals[a], tb, vals[b], 0);
    }

    ContourScan scan;
    scan.r = r;
    scan.min_log_modulus = walker.min_log;
    scan.refinements = walker.refinements;
    scan.count = std::llround(total / kTwoPi);
    scan.phase_residual = std::abs(total - kTwoPi * double(scan.count));
    scan.ambiguous = walker.ambiguous || scan.phase_residual > kPhaseTol ||
                     scan.min_log_modulus < margin || scan.count < 0;
    return scan;
}

ContourScan winding_count(const SampleDraw& sample, const CoefficientModel& model, double r,
                          double margin) {
    if (!(r > 0.0)) throw std::domain_error("winding_count: radius must be > 0");
    if (r > sample.plan_r * (1.0 + 1e-12))
        throw std::domain_error("winding_count: radius exceeds the plan radius");
    const WeightProfile profile = weight_profile(model, sample.K, r);
    std::int64_t max_n = 0;
    for (std::size_t n = 0; n < profile.w.size(); ++n)
        if (profile.w[n] >= 0.0) max_n = std::int64_t(n);
    const ScaledSeries series = ScaledSeries::make(sample.xi, profile);
    return winding_scan(series, r, margin, winding_grid_size(max_n, sample.K));
}

HoleStatus hole_indicator(const SampleDraw& sample, const CoefficientModel& model, double r,
                          double margin) {
    const ContourScan scan = winding_count(sample, model, r, margin);
    if (scan.ambiguous) return HoleStatus::Ambiguous;
    return scan.count == 0 ? HoleStatus::Hole : HoleStatus::NotHole;
}

}  // namespace gaf

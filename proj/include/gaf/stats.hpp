#pragma once

#include <cstdint>
#include <span>

namespace gaf {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Exact (Clopper-Pearson) two-sided binomial confidence interval.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

// Quantile of the standard normal distribution.
double normal_quantile(double p);

// Neumaier-compensated sequential sum. The iteration order is fixed, so the
// result is reproducible bit-for-bit for identical input slots.
double compensated_sum(std::span<const double> xs);

// log(1 - e^{-x}) for x > 0.
double log1mexp(double x);

// Same, taking lx = log(x); safe when x underflows a double.
double log1mexp_from_log(double lx);

// log(sum exp(xs)); -inf entries allowed, empty input yields -inf.
double log_sum_exp(std::span<const double> xs);

}  // namespace gaf

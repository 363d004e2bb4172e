#include "gaf/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace gaf {

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
    if (trials == 0) throw std::domain_error("clopper_pearson: trials must be >= 1");
    if (successes > trials) throw std::domain_error("clopper_pearson: successes > trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::domain_error("clopper_pearson: confidence must be in (0,1)");
    const double alpha = 1.0 - confidence;
    const double k = double(successes);
    const double n = double(trials);
    Interval ci;
    ci.lo = (successes == 0)
                ? 0.0
                : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), alpha / 2.0);
    ci.hi = (successes == trials)
                ? 1.0
                : boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, n - k), 1.0 - alpha / 2.0);
    return ci;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<>(), p);
}

double compensated_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double log1mexp(double x) {
    if (!(x > 0.0)) throw std::domain_error("log1mexp: x must be > 0");
    return x < 0.6931471805599453 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

double log1mexp_from_log(double lx) {
    // For x below ~e^-45 the correction log(1-x/2+...) is beyond double
    // precision of the result, so log(1-e^{-x}) == log(x) there.
    if (lx < -45.0) return lx;
    return log1mexp(std::exp(lx));
}

double log_sum_exp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs)
        if (x > m) m = x;
    if (!(m > -std::numeric_limits<double>::infinity())) return m;
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double e = std::exp(x - m);
        const double t = sum + e;
        if (std::abs(sum) >= e)
            comp += (sum - t) + e;
        else
            comp += (e - t) + sum;
        sum = t;
    }
    return m + std::log(sum + comp);
}

}  // namespace gaf

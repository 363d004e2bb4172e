#include "gaf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gaf/rng.hpp"

namespace gaf {

namespace {

std::int64_t max_power_index(const CoefficientModel& model, double r) {
    const std::int64_t cutoff = model.cutoff_index(r);
    std::int64_t max_n = 0;
    for (std::int64_t n = 0; n <= cutoff; ++n)
        if (model.log_weight(n, r) >= 0.0) max_n = n;
    return max_n;
}

}  // namespace

double TruncationPlan::tail_threshold(std::int64_t n) const {
    if (n <= K) throw std::domain_error("tail_threshold: index must exceed K");
    const double j = double(n - K);
    return std::sqrt(std::log(j * j * kPi * kPi / (6.0 * eps_fail)));
}

TruncationPlan truncation_plan(const CoefficientModel& model, double r, double eps_tail,
                               double eps_fail) {
    if (!(r > 0.0)) throw std::domain_error("truncation_plan: radius must be > 0");
    if (!(eps_tail > 0.0 && eps_tail <= 1.0))
        throw std::domain_error("truncation_plan: eps_tail must be in (0, 1]");
    if (!(eps_fail > 0.0 && eps_fail < 1.0))
        throw std::domain_error("truncation_plan: eps_fail must be in (0, 1)");

    TruncationPlan plan;
    plan.r = r;
    plan.eps_tail = eps_tail;
    plan.eps_fail = eps_fail;

    if (model.finite_support()) {
        // No tail at all: keep the whole polynomial.
        plan.K = model.max_support_index();
        return plan;
    }

    // Beyond C1 = cutoff(r e) we have w_n(r) < -n, which caps the remainder
    // of the threshold-weighted tail by an explicit geometric bound
    // (tau(j + d) <= tau(j) + d justifies the second term).
    const std::int64_t first_neg = max_power_index(model, r);
    const std::int64_t c1 = model.cutoff_index(r * std::exp(1.0));
    auto tail_sum = [&](std::int64_t K) {
        double sum = 0.0;
        for (std::int64_t n = K + 1; n <= c1; ++n) {
            const double lw = model.log_weight(n, r);
            if (lw == kNegInf) continue;
            const double j = double(n - K);
            const double tau = std::sqrt(std::log(j * j * kPi * kPi / (6.0 * eps_fail)));
            sum += std::exp(lw) * tau;
        }
        const double j0 = double(std::max<std::int64_t>(1, c1 + 1 - K));
        const double tau0 = std::sqrt(std::log(j0 * j0 * kPi * kPi / (6.0 * eps_fail)));
        sum += std::exp(-double(c1 + 1)) * (1.582 * tau0 + 2.504);
        return sum;
    };

    std::int64_t K = first_neg;
    double achieved = tail_sum(K);
    while (achieved > eps_tail) {
        ++K;
        if (K > c1 + 2000) throw std::runtime_error("truncation_plan: plan construction failed");
        achieved = tail_sum(K);
    }
    plan.K = K;
    plan.tail_weight_sum = achieved;
    plan.tail_prob_sum = eps_fail;  // the n^{-2} union bound sums to eps_fail exactly
    return plan;
}

SampleDraw draw(const CoefficientModel&, const TruncationPlan& plan, std::uint64_t seed,
                std::uint64_t stream_id) {
    SampleDraw s;
    s.K = plan.K;
    s.plan_r = plan.r;
    s.stream_id = stream_id;
    s.xi.resize(std::size_t(plan.K) + 1);
    RngStream rng(seed, stream_id);
    for (auto& x : s.xi) x = rng.next_complex_gaussian();
    return s;
}

WeightProfile weight_profile(const CoefficientModel& model, std::int64_t K, double rho) {
    WeightProfile p;
    p.rho = rho;
    p.w.resize(std::size_t(K) + 1);
    p.w_max = kNegInf;
    for (std::int64_t n = 0; n <= K; ++n) {
        const double w = rho > 0.0 ? model.log_weight(n, rho) : (n == 0 ? 0.0 : kNegInf);
        p.w[std::size_t(n)] = w;
        if (w > p.w_max) p.w_max = w;
    }
    return p;
}

ScaledSeries ScaledSeries::make(std::span<const std::complex<double>> xi,
                                const WeightProfile& profile) {
    ScaledSeries s;
    s.assign(xi, profile);
    return s;
}

void ScaledSeries::assign(std::span<const std::complex<double>> xi, const WeightProfile& profile) {
    if (xi.size() != profile.w.size())
        throw std::invalid_argument("ScaledSeries: xi and weight profile sizes differ");
    w_max = profile.w_max;
    c.resize(xi.size());
    for (std::size_t n = 0; n < xi.size(); ++n) {
        const double s = profile.w[n] == kNegInf ? 0.0 : std::exp(profile.w[n] - w_max);
        c[n] = xi[n] * s;
    }
}

std::complex<double> ScaledSeries::sum_at(double theta) const {
    const std::complex<double> rot{std::cos(theta), std::sin(theta)};
    std::complex<double> acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * rot + c[i];
    return acc;
}

LogEval ScaledSeries::at_angle(double theta) const {
    const std::complex<double> a = sum_at(theta);
    const double n2 = std::norm(a);
    LogEval e;
    if (n2 == 0.0) {
        e.log_modulus = kNegInf;
        e.phase = 0.0;
        e.null = true;
        return e;
    }
    e.log_modulus = w_max + 0.5 * std::log(n2);
    e.phase = std::atan2(a.imag(), a.real());
    return e;
}

LogEval evaluate(const SampleDraw& sample, const CoefficientModel& model, std::complex<double> z) {
    const double rho = std::abs(z);
    if (rho > sample.plan_r * (1.0 + 1e-12))
        throw std::domain_error("evaluate: |z| exceeds the plan radius");
    const WeightProfile profile = weight_profile(model, sample.K, rho);
    const ScaledSeries series = ScaledSeries::make(sample.xi, profile);
    return series.at_angle(std::arg(z));
}

LogEval evaluate_scaled(std::span<const double> weights, std::span<const std::complex<double>> xi,
                        double theta) {
    if (weights.size() != xi.size() || weights.empty())
        throw std::invalid_argument("evaluate_scaled: size mismatch");
    WeightProfile profile;
    profile.w.assign(weights.begin(), weights.end());
    profile.w_max = kNegInf;
    for (double w : weights)
        if (w > profile.w_max) profile.w_max = w;
    if (profile.w_max == kNegInf) {
        LogEval e;
        e.log_modulus = kNegInf;
        e.null = true;
        return e;
    }
    return ScaledSeries::make(xi, profile).at_angle(theta);
}

double max_modulus(const SampleDraw& sample, const CoefficientModel& model, double r,
                   std::int64_t grid_size) {
    const std::int64_t max_n = max_power_index(model, r);
    if (grid_size < 8 * (max_n + 1))
        throw std::domain_error("max_modulus: grid_size must be >= 8 (max N(r) + 1)");
    const WeightProfile profile = weight_profile(model, sample.K, r);
    const ScaledSeries series = ScaledSeries::make(sample.xi, profile);
    double best = kNegInf;
    for (std::int64_t i = 0; i < grid_size; ++i) {
        const double lm = series.at_angle(kTwoPi * double(i) / double(grid_size)).log_modulus;
        if (lm > best) best = lm;
    }
    return best;
}

double log_deriv_profile(const SampleDraw& sample, const CoefficientModel& model, double rho,
                         std::int64_t grid_size) {
    if (grid_size < 8) throw std::domain_error("log_deriv_profile: grid too small");
    const WeightProfile profile = weight_profile(model, sample.K, rho);
    const ScaledSeries series = ScaledSeries::make(sample.xi, profile);
    // z f'(z) has the same weights with an extra factor n, so both sums share
    // one scale and the ratio B/A is scale-free.
    ScaledSeries deriv = series;
    for (std::size_t n = 0; n < deriv.c.size(); ++n) deriv.c[n] *= double(n);
    double best = 0.0;
    for (std::int64_t i = 0; i < grid_size; ++i) {
        const double theta = kTwoPi * double(i) / double(grid_size);
        const std::complex<double> a = series.sum_at(theta);
        const double n2 = std::norm(a);
        if (n2 == 0.0) throw std::runtime_error("log_deriv_profile: zero on contour");
        const std::complex<double> b = deriv.sum_at(theta);
        const double v = std::abs(std::imag(b * std::conj(a))) / n2;
        if (v > best) best = v;
    }
    return best;
}

}  // namespace gaf

#include "gaf/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gaf {

namespace {

double lgamma_pos(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

}  // namespace

CoefficientModel CoefficientModel::gamma_power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gamma_power: alpha must be > 0");
    CoefficientModel m;
    m.kind_ = ModelKind::GammaPower;
    m.alpha_ = alpha;
    return m;
}

CoefficientModel CoefficientModel::explicit_table(std::vector<double> log_a) {
    if (log_a.empty()) throw std::invalid_argument("explicit_table: table must be non-empty");
    if (log_a[0] != 0.0) throw std::invalid_argument("explicit_table: log_a[0] must be 0 (a_0 = 1)");
    for (double v : log_a)
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("explicit_table: entries must be finite or -inf");
    CoefficientModel m;
    m.kind_ = ModelKind::ExplicitTable;
    m.table_ = std::move(log_a);
    return m;
}

CoefficientModel CoefficientModel::lacunary_gamma(std::vector<std::int64_t> support) {
    for (std::int64_t n : support)
        if (n < 0) throw std::invalid_argument("lacunary_gamma: negative support index");
    support.push_back(0);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    CoefficientModel m;
    m.kind_ = ModelKind::LacunaryGamma;
    m.support_ = std::move(support);
    return m;
}

CoefficientModel CoefficientModel::constant_only() {
    CoefficientModel m;
    m.kind_ = ModelKind::ConstantOnly;
    return m;
}

double CoefficientModel::log_coeff(std::int64_t n) const {
    if (n < 0) throw std::domain_error("log_coeff: negative coefficient index");
    switch (kind_) {
        case ModelKind::GammaPower:
            return n == 0 ? 0.0 : -alpha_ * lgamma_pos(double(n) + 1.0);
        case ModelKind::ExplicitTable:
            return n < std::int64_t(table_.size()) ? table_[std::size_t(n)] : kNegInf;
        case ModelKind::LacunaryGamma:
            return std::binary_search(support_.begin(), support_.end(), n)
                       ? (n == 0 ? 0.0 : -lgamma_pos(double(n) + 1.0))
                       : kNegInf;
        case ModelKind::ConstantOnly:
            return n == 0 ? 0.0 : kNegInf;
    }
    return kNegInf;
}

double CoefficientModel::log_weight(std::int64_t n, double r) const {
    if (!(r > 0.0)) throw std::domain_error("log_weight: radius must be > 0");
    if (n == 0) return log_coeff(0);
    const double la = log_coeff(n);
    if (la == kNegInf) return kNegInf;
    return la + double(n) * std::log(r);
}

std::int64_t CoefficientModel::cutoff_index(double r) const {
    if (!(r > 0.0)) throw std::domain_error("cutoff_index: radius must be > 0");
    switch (kind_) {
        case ModelKind::ConstantOnly:
            return 0;
        case ModelKind::ExplicitTable:
            return std::int64_t(table_.size()) - 1;
        case ModelKind::LacunaryGamma:
        case ModelKind::GammaPower: {
            // With envelope exponent a (= alpha, or 1 for the lacunary 1/n!
            // family), w_n = n log r - a*lgamma(n+1) is concave in n and
            // strictly decreasing once n >= r^{1/a}; the first negative
            // weight past that point bounds the support of N(r).
            const double a = kind_ == ModelKind::GammaPower ? alpha_ : 1.0;
            const double turn = std::pow(r, 1.0 / a);
            if (!(turn < 1e12)) throw std::runtime_error("support scan exhausted");
            auto weight = [&](std::int64_t n) {
                return double(n) * std::log(r) - a * lgamma_pos(double(n) + 1.0);
            };
            std::int64_t lo = std::max<std::int64_t>(1, std::int64_t(turn) + 1);
            if (weight(lo) < 0.0) return finite_support() ? std::min(lo, support_.back()) : lo;
            std::int64_t hi = lo;
            while (weight(hi) >= 0.0) {
                if (hi > std::int64_t(1) << 40) throw std::runtime_error("support scan exhausted");
                hi *= 2;
            }
            while (hi - lo > 1) {
                const std::int64_t mid = lo + (hi - lo) / 2;
                (weight(mid) >= 0.0 ? lo : hi) = mid;
            }
            return finite_support() ? std::min(hi, support_.back()) : hi;
        }
    }
    return 0;
}

std::int64_t CoefficientModel::max_support_index() const {
    switch (kind_) {
        case ModelKind::ExplicitTable:
            return std::int64_t(table_.size()) - 1;
        case ModelKind::LacunaryGamma:
            return support_.back();
        case ModelKind::ConstantOnly:
            return 0;
        case ModelKind::GammaPower:
            throw std::logic_error("max_support_index: model has infinite support");
    }
    return 0;
}

std::string CoefficientModel::id() const {
    char buf[96];
    switch (kind_) {
        case ModelKind::GammaPower:
            std::snprintf(buf, sizeof buf, "gamma-power(alpha=%g)", alpha_);
            return buf;
        case ModelKind::ExplicitTable:
            std::snprintf(buf, sizeof buf, "explicit-table(deg=%zu)", table_.size() - 1);
            return buf;
        case ModelKind::LacunaryGamma:
            std::snprintf(buf, sizeof buf, "lacunary-gamma(k=%zu,max=%lld)", support_.size(),
                          static_cast<long long>(support_.back()));
            return buf;
        case ModelKind::ConstantOnly:
            return "constant-only";
    }
    return "?";
}

}  // namespace gaf

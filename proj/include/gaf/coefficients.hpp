#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace gaf {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class ModelKind { GammaPower, ExplicitTable, LacunaryGamma, ConstantOnly };

// Non-negative coefficient sequence {a_n} of the random series
// f(z) = sum_n xi_n a_n z^n, kept entirely in the natural-log domain:
// log_coeff returns -inf where a_n = 0, and a_n itself is never materialized
// (for the gamma-power family it underflows a double near n ~ 300/alpha).
// Every model is normalized so that a_0 = 1.
class CoefficientModel {
public:
    // a_n = (n!)^{-alpha}, alpha > 0.
    static CoefficientModel gamma_power(double alpha);

    // Finite list of log a_n values; log_a[0] must be 0 and -inf entries
    // encode vanishing coefficients.
    static CoefficientModel explicit_table(std::vector<double> log_a);

    // a_n = 1/n! for n in the given index set (0 is always included), 0
    // elsewhere.
    static CoefficientModel lacunary_gamma(std::vector<std::int64_t> support);

    // a_0 = 1 and nothing else.
    static CoefficientModel constant_only();

    ModelKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

    // log a_n; -inf iff a_n = 0. Negative n is a domain error.
    double log_coeff(std::int64_t n) const;

    // w_n(r) = log(a_n r^n); the index n belongs to N(r) iff w_n(r) >= 0.
    // Defined for every r > 0; w_0 = 0 identically.
    double log_weight(std::int64_t n, double r) const;

    // An index bound B(r) with log(a_n r^n) < 0 guaranteed for all n > B(r).
    // Throws "support scan exhausted" when no usable bound exists.
    std::int64_t cutoff_index(double r) const;

    bool finite_support() const { return kind_ != ModelKind::GammaPower; }
    std::int64_t max_support_index() const;

    // Short tag used in report rows, e.g. "gamma-power(alpha=0.5)".
    std::string id() const;

private:
    CoefficientModel() = default;

    ModelKind kind_ = ModelKind::ConstantOnly;
    double alpha_ = 0.0;
    std::vector<double> table_;
    std::vector<std::int64_t> support_;
};

}  // namespace gaf

#pragma once

#include <cstdint>
#include <vector>

#include "gaf/coefficients.hpp"

namespace gaf {

enum class Normality { Normal, Exceptional, Degenerate };

const char* to_string(Normality s);

// Every deterministic functional of the model at one radius. N(r) is the set
// of indices with a_n r^n >= 1; S(r) = 2 sum_{n in N(r)} log(a_n r^n) is the
// weight that governs the hole probability.
struct RadialAnalysis {
    double r = 1.0;
    std::vector<std::int64_t> power_set;  // N(r), ascending
    std::vector<double> weights;          // w_n(r) for n in power_set
    std::size_t n_count = 0;              // n(r) = #N(r)
    std::int64_t m_mass = 0;              // m(r) = sum of N(r)
    double s_weight = 0.0;                // S(r)
    double delta = 0.0;                   // m(r)^{-1/4}; NaN when m(r) = 0
    Normality status = Normality::Degenerate;

    std::int64_t max_index() const { return power_set.empty() ? 0 : power_set.back(); }
};

// A radius r is normal when m moves by bounded factors across the
// multiplicative window e^{+-delta}, delta = m(r)^{-1/4}:
//   m(r e^{-delta}) > (3/4) m(r)   and   m(r e^{+delta}) < (5/4) m(r),
// both strict. m(r) = 0 is reported as a third, degenerate state.
struct NormalityRecord {
    Normality status = Normality::Degenerate;
    double delta = 0.0;        // NaN when degenerate
    std::int64_t m = 0;        // m(r)
    std::int64_t m_contract = 0;  // m(r e^{-delta})
    std::int64_t m_expand = 0;    // m(r e^{+delta})
    double lower_bound = 0.0;     // (3/4) m(r)
    double upper_bound = 0.0;     // (5/4) m(r)
};

struct ExceptionalInterval {
    double lo = 0.0, hi = 0.0;
    double log_length = 0.0;
    int points = 0;
};

struct ExceptionalScan {
    std::vector<ExceptionalInterval> flagged;
    double log_measure = 0.0;  // sum of log-lengths over flagged intervals
    int grid_points = 0;
    int normal_points = 0;
    int exceptional_points = 0;
    int degenerate_points = 0;
};

struct SLowerAudit {
    double s = 0.0;         // S(r)
    double m_bound = 0.0;   // (3/2) m(r)^{3/4}
    double n_ratio = 0.0;   // S(r) / n(r)^{3/2}; the absolute constant of the
                            // weaker bound is not pinned, only reported
    bool pass = false;      // S(r) >= (3/2) m(r)^{3/4}
};

struct SGrowthAudit {
    double s_r = 0.0;            // S(r)
    double s_contracted = 0.0;   // S((1-gamma) r)
    double drop_allowance = 0.0; // 4 gamma m(r)
    bool pass = false;           // S((1-gamma) r) >= S(r) - 4 gamma m(r)
};

// Requires r >= 1 (the window probes at r e^{+-delta} may drop below 1).
RadialAnalysis radial_analysis(const CoefficientModel& model, double r);

NormalityRecord is_normal(const CoefficientModel& model, double r);

// Walks a geometric grid from r_min to r_max with per-point log-step
// step_fraction * min(delta(r), 1) (degenerate points use step_fraction) and
// merges maximal runs of non-normal points into flagged intervals.
ExceptionalScan exceptional_scan(const CoefficientModel& model, double r_min, double r_max,
                                 double step_fraction = 0.25);

// Audit of S(r) >= (3/2) m(r)^{3/4}. s_lower_audit requires a normal radius
// (the inequality is only guaranteed there); s_lower_values evaluates the
// same record without the precondition.
SLowerAudit s_lower_audit(const CoefficientModel& model, double r);
SLowerAudit s_lower_values(const CoefficientModel& model, double r);

// Audit of S((1-gamma) r) >= S(r) - 4 gamma m(r), gamma in (0, 1/2). Holds
// for every model; failures indicate an implementation bug.
SGrowthAudit s_growth_audit(const CoefficientModel& model, double r, double gamma);

}  // namespace gaf

#pragma once

#include <cstdint>

#include "gaf/sampler.hpp"

namespace gaf {

enum class HoleStatus { Hole, NotHole, Ambiguous };

const char* to_string(HoleStatus s);

// Result of accumulating arg f around the circle |z| = r. When not
// ambiguous, count is the number of zeros inside (argument principle) and
// the accumulated phase equals 2 pi count to within 1e-6.
struct ContourScan {
    double r = 0.0;
    std::int64_t count = 0;
    double min_log_modulus = 0.0;  // over all visited contour points
    std::int64_t refinements = 0;  // midpoint evaluations added by bisection
    double phase_residual = 0.0;   // |total phase - 2 pi count|
    bool ambiguous = false;
};

// Walks an adaptive angular grid, bisecting any arc whose endpoint phase
// difference exceeds pi/2 (depth cap 40). The scan is flagged ambiguous when
// the depth cap is hit, when a contour point falls below the log-modulus
// margin (possible zero on or near the contour, or tail noise), or when the
// accumulated phase is not an integer multiple of 2 pi to 1e-6.
ContourScan winding_count(const SampleDraw& sample, const CoefficientModel& model, double r,
                          double margin);

// Fast path over a prebuilt scaled series with an explicit initial grid.
ContourScan winding_scan(const ScaledSeries& series, double r, double margin,
                         std::int64_t initial_grid);

// Initial grid size used by winding_count: 8 (max N(r) + K/4 + 4).
std::int64_t winding_grid_size(std::int64_t max_power_index, std::int64_t K);

// hole <=> count = 0 and not ambiguous; ambiguity is surfaced, never
// silently resolved.
HoleStatus hole_indicator(const SampleDraw& sample, const CoefficientModel& model, double r,
                          double margin);

}  // namespace gaf

#pragma once

#include <cstdint>
#include <vector>

#include "gaf/estimators.hpp"
#include "gaf/radial.hpp"
#include "gaf/sampler.hpp"
#include "gaf/stats.hpp"

namespace gaf {

// Exact log-probability of the dominant-constant-term event Omega_r: the
// intersection of |xi_0| >= C0 m^{1/4} with per-class caps on every other
// coordinate. Computed from the exact Gaussian laws, not bounded.
struct OmegaCertificate {
    double r = 0.0;
    double c0 = 0.0;
    std::int64_t m = 0;
    double delta = 0.0;
    double log_prob = 0.0;
    double comp_dominant = 0.0;  // (i)   |xi_0| >= C0 m^{1/4}
    double comp_power = 0.0;     // (ii)  n in N(r)\{0}: |xi_n| <= e^{-w_n}/sqrt(m)
    double comp_mid = 0.0;       // (iii) n in N~_delta\N: |xi_n| <= 1/sqrt(m)
    double comp_tail = 0.0;      // (iv)  elsewhere: |xi_n| <= e^{delta n/2}
    std::size_t count_power = 0, count_mid = 0, count_tail = 0;
    double s = 0.0;
    double margin = 0.0;  // -log_prob - S(r); >= 0 for every m >= 1
};

OmegaCertificate omega_log_prob(const CoefficientModel& model, double r, double c0);

// Draws each coordinate from its exact Omega_r-conditioned law (Rayleigh
// tail for xi_0, capped Rayleigh via inverse CDF for the rest) and counts
// how many realizations the zero counter classifies as holes.
struct ConditionalHoleReport {
    double r = 0.0;
    double c0 = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t holes = 0;
    std::uint64_t ambiguous = 0;
    double fraction = 0.0;
    double min_log_modulus = 0.0;  // over all trials' contours
};

ConditionalHoleReport conditional_hole_check(const CoefficientModel& model, double r,
                                             std::uint64_t trials, std::uint64_t seed, double c0,
                                             unsigned threads = 0);

// Angles theta_1..theta_n on a circle with |det U| >= 1 for the unit-modulus
// generalized Vandermonde matrix U_{mk} = e^{i j_k theta_m} (j_0 = 0
// implicit). Restoring the factored moduli gives |det A| >= rho^{sum j_k}.
struct PointConfiguration {
    double rho = 0.0;
    std::vector<std::int64_t> exponents;  // j_1 < ... < j_{n-1}
    std::vector<double> angles;           // theta_1..theta_n
    double log_absdet_unit = 0.0;         // log |det U|
    std::int64_t tries_used = 0;
    bool success = false;  // false = search exhausted, best configuration kept
};

// Randomized search (the existence proof is an averaging argument, so random
// angles exceed the target with positive probability). Equally spaced angles
// are tried first when the exponents are distinct mod n.
PointConfiguration vandermonde_search(double rho, std::vector<std::int64_t> exponents,
                                      std::int64_t max_tries, std::uint64_t seed);

// log det of the covariance Sigma_ij = sum_{k<=K} (a_k rho^k)^2 e^{ik(th_i - th_j)}
// in normalized form: Sigma = s^2 Sigma' with unit diagonal, so determinants
// of wildly scaled matrices stay in floating range (raw entries reach e^S).
struct CovarianceAudit {
    double rho = 0.0;
    std::int64_t K = 0;
    std::size_t points = 0;
    double log_det_sigma = 0.0;
    double s = 0.0;       // S(rho)
    double margin = 0.0;  // log_det_sigma - S(rho)
    double log_tail = 0.0;  // log of the neglected sum_{k>K} (a_k rho^k)^2
};

CovarianceAudit covariance_logdet(const CoefficientModel& model, double rho,
                                  const std::vector<double>& angles, std::int64_t K);

// Same Gram computation restricted to a column subset (projection only
// shrinks the singular values, so this lower-bounds the full determinant).
CovarianceAudit covariance_logdet_projected(const CoefficientModel& model, double rho,
                                            const std::vector<double>& angles,
                                            const std::vector<std::int64_t>& columns);

// Monte Carlo audit of the volume bound for
// C_N(t, s) = {r in [0,t]^N : prod r_j <= s}:
//   vol <= (s/(N-1)!) log^N(t^N/s), valid when log(t^N/s) >= N.
// The exact volume (an Erlang tail) is reported alongside; pass holds when
// either the upper CI limit or the exact volume sits below the bound.
struct VolumeAudit {
    int n = 0;
    double t = 0.0;
    double s_cap = 0.0;
    std::uint64_t points = 0;
    double mc_volume = 0.0;
    Interval ci;  // volume-scale confidence interval
    double exact_volume = 0.0;
    double bound = 0.0;
    bool pass_mc = false;
    bool pass_exact = false;
    bool pass = false;
};

VolumeAudit volume_bound_audit(int N, double s, double t, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads = 0);

}  // namespace gaf

#include "gaf/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "gaf/parallel.hpp"
#include "gaf/rng.hpp"
#include "gaf/zeros.hpp"

namespace gaf {

namespace {

// Indices of N~_delta(r) = N_delta(r) u {n < sqrt(m)}, ascending.
std::vector<std::int64_t> tilde_set(const CoefficientModel& model, double r,
                                    const RadialAnalysis& analysis) {
    const double sqrt_m = std::sqrt(double(analysis.m_mass));
    const std::vector<std::int64_t> n_delta =
        radial_analysis(model, r * std::exp(analysis.delta)).power_set;
    std::vector<std::int64_t> out;
    const std::int64_t below = std::int64_t(std::ceil(sqrt_m));
    std::int64_t top = std::max(below - 1, n_delta.empty() ? 0 : n_delta.back());
    for (std::int64_t n = 0; n <= top; ++n) {
        if (n < below || std::binary_search(n_delta.begin(), n_delta.end(), n))
            out.push_back(n);
    }
    return out;
}

double lu_log_absdet(const Eigen::MatrixXcd& m) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double a = std::abs(lu.matrixLU()(i, i));
        if (a == 0.0) return kNegInf;
        log_det += std::log(a);
    }
    return log_det;
}

Eigen::MatrixXcd unit_vandermonde(const std::vector<std::int64_t>& exps_with_zero,
                                  const std::vector<double>& angles) {
    const Eigen::Index n = Eigen::Index(angles.size());
    Eigen::MatrixXcd u(n, n);
    for (Eigen::Index row = 0; row < n; ++row)
        for (Eigen::Index col = 0; col < n; ++col)
            u(row, col) = std::polar(1.0, double(exps_with_zero[std::size_t(col)]) *
                                              angles[std::size_t(row)]);
    return u;
}

}  // namespace

OmegaCertificate omega_log_prob(const CoefficientModel& model, double r, double c0) {
    if (c0 < 0.0) throw std::domain_error("omega_log_prob: C0 must be >= 0");
    const RadialAnalysis analysis = radial_analysis(model, r);
    if (analysis.m_mass < 1)
        throw std::domain_error("omega_log_prob: degenerate radius (m(r) = 0)");

    OmegaCertificate cert;
    cert.r = r;
    cert.c0 = c0;
    cert.m = analysis.m_mass;
    cert.delta = analysis.delta;
    cert.s = analysis.s_weight;

    const double m = double(analysis.m_mass);
    const double log_m = std::log(m);

    // (i): P(|xi_0| >= C0 m^{1/4}) = exp(-C0^2 sqrt(m)).
    cert.comp_dominant = -c0 * c0 * std::sqrt(m);

    // (ii): each n in N(r)\{0} contributes log(1 - exp(-e^{-2 w_n}/m)).
    for (std::size_t k = 1; k < analysis.power_set.size(); ++k) {
        cert.comp_power += log1mexp_from_log(-2.0 * analysis.weights[k] - log_m);
        ++cert.count_power;
    }

    // (iii): each n in N~_delta\N contributes log(1 - exp(-1/m)).
    const std::vector<std::int64_t> tilde = tilde_set(model, r, analysis);
    std::size_t mid = 0;
    for (std::int64_t n : tilde)
        if (!std::binary_search(analysis.power_set.begin(), analysis.power_set.end(), n)) ++mid;
    cert.count_mid = mid;
    cert.comp_mid = double(mid) * log1mexp(1.0 / m);

    // (iv): outside N~_delta each term is log(1 - exp(-e^{delta n})); the
    // terms decay doubly exponentially, truncate once exp(-e^{delta n})
    // drops below 1e-300.
    const std::int64_t tail_cap =
        std::max(tilde.back() + 1, std::int64_t(std::ceil(690.8 / cert.delta)) + 1);
    for (std::int64_t n = 0; n <= tail_cap; ++n) {
        if (std::binary_search(tilde.begin(), tilde.end(), n)) continue;
        const double x = std::exp(cert.delta * double(n));
        if (x > 690.8 && n > tilde.back()) break;
        cert.comp_tail += std::log1p(-std::exp(-x));
        ++cert.count_tail;
    }

    cert.log_prob = cert.comp_dominant + cert.comp_power + cert.comp_mid + cert.comp_tail;
    cert.margin = -cert.log_prob - cert.s;
    return cert;
}

ConditionalHoleReport conditional_hole_check(const CoefficientModel& model, double r,
                                             std::uint64_t trials, std::uint64_t seed, double c0,
                                             unsigned threads) {
    if (trials < 1) throw std::domain_error("conditional_hole_check: trials must be >= 1");
    const RadialAnalysis analysis = radial_analysis(model, r);
    if (analysis.m_mass < 1)
        throw std::domain_error("conditional_hole_check: degenerate radius (m(r) = 0)");

    const double m = double(analysis.m_mass);
    const double sqrt_m = std::sqrt(m);
    const double delta = analysis.delta;

    // Plan at r e^{delta}: the class-(iv) caps e^{delta n / 2} then keep the
    // truncated tail within the plan's eps_tail at radius r.
    const double eps_tail = 1e-9, eps_fail = 1e-9;
    const TruncationPlan plan = truncation_plan(model, r * std::exp(delta), eps_tail, eps_fail);
    const std::vector<std::int64_t> tilde = tilde_set(model, r, analysis);

    // Per-coordinate conditioning: cap > 0 is an upper bound on |xi_n|,
    // cap < 0 marks the lower-tail coordinate xi_0.
    std::vector<double> cap(std::size_t(plan.K) + 1, 0.0);
    const double lambda0 = c0 * std::pow(m, 0.25);
    for (std::int64_t n = 1; n <= plan.K; ++n) {
        const std::size_t i = std::size_t(n);
        if (std::binary_search(analysis.power_set.begin(), analysis.power_set.end(), n)) {
            const double w = analysis.weights[std::size_t(
                std::lower_bound(analysis.power_set.begin(), analysis.power_set.end(), n) -
                analysis.power_set.begin())];
            cap[i] = std::exp(-w) / sqrt_m;
        } else if (std::binary_search(tilde.begin(), tilde.end(), n)) {
            cap[i] = 1.0 / sqrt_m;
        } else {
            cap[i] = std::exp(delta * double(n) / 2.0);
        }
    }

    const WeightProfile profile = weight_profile(model, plan.K, r);
    std::int64_t max_n = 0;
    for (std::size_t n = 0; n < profile.w.size(); ++n)
        if (profile.w[n] >= 0.0) max_n = std::int64_t(n);
    const std::int64_t grid = winding_grid_size(max_n, plan.K);
    const double margin =
        model.finite_support() ? kNegInf : std::log(eps_tail * 1e3);

    std::vector<std::uint8_t> status(trials, 1);
    std::vector<double> min_log(trials, 0.0);

    parallel_chunks(trials, threads, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::complex<double>> xi(std::size_t(plan.K) + 1);
        ScaledSeries series;
        for (std::uint64_t t = lo; t < hi; ++t) {
            RngStream rng(seed, t);
            for (std::size_t n = 0; n < xi.size(); ++n) {
                const double u = rng.next_uniform();
                const double v = rng.next_uniform();
                double mod2;
                if (n == 0) {
                    // Rayleigh tail: |xi_0|^2 = lambda0^2 + Exp(1).
                    mod2 = lambda0 * lambda0 - std::log(u);
                } else {
                    const double tau2 = cap[n] * cap[n];
                    if (!(tau2 < 745.0)) {
                        // cap so wide the conditioning is vacuous at double
                        // precision
                        mod2 = -std::log(u);
                    } else {
                        const double q = -std::expm1(-tau2);
                        mod2 = std::min(-std::log1p(-u * q), tau2);
                    }
                }
                xi[n] = std::polar(std::sqrt(mod2), kTwoPi * v);
            }
            series.assign(xi, profile);
            const ContourScan scan = winding_scan(series, r, margin, grid);
            min_log[t] = scan.min_log_modulus;
            status[t] = scan.ambiguous ? 2 : (scan.count == 0 ? 0 : 1);
        }
    });

    ConditionalHoleReport rep;
    rep.r = r;
    rep.c0 = c0;
    rep.trials = trials;
    rep.min_log_modulus = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (status[t] == 0) ++rep.holes;
        if (status[t] == 2) ++rep.ambiguous;
        if (min_log[t] < rep.min_log_modulus) rep.min_log_modulus = min_log[t];
    }
    rep.fraction = double(rep.holes) / double(trials);
    return rep;
}

PointConfiguration vandermonde_search(double rho, std::vector<std::int64_t> exponents,
                                      std::int64_t max_tries, std::uint64_t seed) {
    if (!(rho > 0.0)) throw std::domain_error("vandermonde_search: rho must be > 0");
    const std::size_t n = exponents.size() + 1;
    if (n > 64) throw std::domain_error("vandermonde_search: n must be <= 64");
    std::int64_t prev = 0;
    for (std::int64_t j : exponents) {
        if (j <= prev)
            throw std::invalid_argument("vandermonde_search: exponents must be strictly increasing and >= 1");
        prev = j;
    }

    std::vector<std::int64_t> exps_with_zero;
    exps_with_zero.reserve(n);
    exps_with_zero.push_back(0);
    exps_with_zero.insert(exps_with_zero.end(), exponents.begin(), exponents.end());

    PointConfiguration best;
    best.rho = rho;
    best.exponents = std::move(exponents);
    best.log_absdet_unit = kNegInf;

    auto consider = [&](const std::vector<double>& angles, std::int64_t tries) {
        const double ld = lu_log_absdet(unit_vandermonde(exps_with_zero, angles));
        if (ld > best.log_absdet_unit) {
            best.log_absdet_unit = ld;
            best.angles = angles;
            best.tries_used = tries;
        }
        return ld >= 0.0;
    };

    // Structured fast path: equally spaced angles when the exponents are
    // distinct mod n (otherwise two columns coincide).
    {
        std::vector<std::int64_t> res;
        for (std::int64_t j : exps_with_zero) res.push_back(((j % std::int64_t(n)) + std::int64_t(n)) % std::int64_t(n));
        std::sort(res.begin(), res.end());
        if (std::adjacent_find(res.begin(), res.end()) == res.end()) {
            std::vector<double> angles(n);
            for (std::size_t i = 0; i < n; ++i) angles[i] = kTwoPi * double(i) / double(n);
            if (consider(angles, 0)) {
                best.success = true;
                return best;
            }
        }
    }

    std::vector<double> angles(n);
    for (std::int64_t t = 1; t <= max_tries; ++t) {
        RngStream rng(seed, std::uint64_t(t));
        for (auto& a : angles) a = kTwoPi * rng.next_uniform();
        if (consider(angles, t)) {
            best.success = true;
            return best;
        }
    }
    best.success = false;  // search exhausted; best configuration retained
    return best;
}

namespace {

CovarianceAudit gram_logdet(const CoefficientModel& model, double rho,
                            const std::vector<double>& angles,
                            const std::vector<std::int64_t>& columns, std::int64_t K) {
    if (angles.empty()) throw std::domain_error("covariance_logdet: need at least one point");
    for (std::size_t i = 0; i < angles.size(); ++i)
        for (std::size_t j = i + 1; j < angles.size(); ++j)
            if (std::abs(std::remainder(angles[i] - angles[j], kTwoPi)) < 1e-12)
                throw std::domain_error("covariance_logdet: points must be distinct");

    std::vector<double> two_w;
    std::vector<std::int64_t> live;
    for (std::int64_t k : columns) {
        const double w = model.log_weight(k, rho);
        if (w == kNegInf) continue;
        two_w.push_back(2.0 * w);
        live.push_back(k);
    }
    if (live.empty()) throw std::domain_error("covariance_logdet: all columns vanish");
    const double ls2 = log_sum_exp(two_w);  // log s^2, s^2 = sum (a_k rho^k)^2

    const Eigen::Index n = Eigen::Index(angles.size());
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            std::complex<double> acc = 0.0;
            const double d = angles[std::size_t(i)] - angles[std::size_t(j)];
            for (std::size_t k = 0; k < live.size(); ++k)
                acc += std::exp(two_w[k] - ls2) * std::polar(1.0, double(live[k]) * d);
            sigma(i, j) = acc;
            sigma(j, i) = std::conj(acc);
        }
    }

    Eigen::LLT<Eigen::MatrixXcd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("covariance_logdet: conditioning failure");
    double log_det_unit = 0.0;
    const auto l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < n; ++i) log_det_unit += 2.0 * std::log(std::real(l(i, i)));

    CovarianceAudit audit;
    audit.rho = rho;
    audit.K = K;
    audit.points = angles.size();
    audit.log_det_sigma = double(n) * ls2 + log_det_unit;
    audit.s = radial_analysis(model, rho).s_weight;
    audit.margin = audit.log_det_sigma - audit.s;

    // Neglected tail of the diagonal entries, reported in the log domain.
    audit.log_tail = kNegInf;
    if (!model.finite_support() || K < model.max_support_index()) {
        std::vector<double> tail;
        const std::int64_t stop = model.cutoff_index(rho * std::exp(1.0)) + 800;
        for (std::int64_t k = K + 1; k <= stop; ++k) {
            const double w = model.log_weight(k, rho);
            if (w != kNegInf) tail.push_back(2.0 * w);
        }
        if (!tail.empty()) audit.log_tail = log_sum_exp(tail);
    }
    return audit;
}

}  // namespace

CovarianceAudit covariance_logdet(const CoefficientModel& model, double rho,
                                  const std::vector<double>& angles, std::int64_t K) {
    const RadialAnalysis analysis = radial_analysis(model, rho);
    if (K < analysis.max_index())
        throw std::domain_error("covariance_logdet: K must cover N(rho)");
    std::vector<std::int64_t> columns(std::size_t(K) + 1);
    for (std::int64_t k = 0; k <= K; ++k) columns[std::size_t(k)] = k;
    return gram_logdet(model, rho, angles, columns, K);
}

CovarianceAudit covariance_logdet_projected(const CoefficientModel& model, double rho,
                                            const std::vector<double>& angles,
                                            const std::vector<std::int64_t>& columns) {
    std::int64_t top = 0;
    for (std::int64_t c : columns) top = std::max(top, c);
    return gram_logdet(model, rho, angles, columns, top);
}

VolumeAudit volume_bound_audit(int N, double s, double t, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads) {
    if (N < 1) throw std::domain_error("volume_bound_audit: N must be >= 1");
    if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("volume_bound_audit: s, t must be > 0");
    if (trials < 1) throw std::domain_error("volume_bound_audit: trials must be >= 1");
    const double v = double(N) * std::log(t) - std::log(s);
    if (!(v >= double(N)))
        throw std::domain_error("volume_bound_audit: precondition log(t^N/s) >= N violated");

    VolumeAudit audit;
    audit.n = N;
    audit.t = t;
    audit.s_cap = s;
    audit.points = trials;
    audit.bound = s / std::tgamma(double(N)) * std::pow(v, double(N));

    // Exact volume: prod U_j <= s/t^N is an Erlang(N) tail event.
    double erlang = 0.0, term = 1.0;
    for (int k = 0; k < N; ++k) {
        erlang += term;
        term *= v / double(k + 1);
    }
    const double cube = std::exp(double(N) * std::log(t));
    audit.exact_volume = cube * std::exp(-v) * erlang;

    const unsigned nt = resolve_threads(threads);
    std::vector<std::uint64_t> accepted_per_chunk(nt, 0);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    for (unsigned w = 0; w < nt; ++w)
        ranges.emplace_back(trials * w / nt, trials * (w + 1) / nt);
    parallel_chunks(nt, nt, [&](std::uint64_t wlo, std::uint64_t whi) {
        for (std::uint64_t w = wlo; w < whi; ++w) {
            std::uint64_t acc = 0;
            for (std::uint64_t p = ranges[w].first; p < ranges[w].second; ++p) {
                RngStream rng(seed, p);
                double log_prod = 0.0;
                for (int j = 0; j < N; ++j) log_prod += std::log(rng.next_uniform());
                if (log_prod <= -v) ++acc;
            }
            accepted_per_chunk[w] = acc;
        }
    });
    std::uint64_t accepted = 0;
    for (std::uint64_t a : accepted_per_chunk) accepted += a;

    audit.mc_volume = cube * double(accepted) / double(trials);
    const Interval frac_ci = clopper_pearson(accepted, trials, 0.99);
    audit.ci = Interval{cube * frac_ci.lo, cube * frac_ci.hi};

    audit.pass_mc = audit.ci.hi <= audit.bound * (1.0 + 1e-12);
    audit.pass_exact = audit.exact_volume <= audit.bound * (1.0 + 1e-12);
    audit.pass = audit.pass_mc || audit.pass_exact;
    return audit;
}

}  // namespace gaf

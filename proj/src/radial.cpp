#include "gaf/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "gaf/stats.hpp"

namespace gaf {

namespace {

struct PowerSet {
    std::vector<std::int64_t> ns;
    std::vector<double> ws;
    std::int64_t m = 0;
    double s = 0.0;
};

// Scans n = 0..cutoff_index(r) and keeps the non-negative weights. Valid for
// any r > 0; the public entry points enforce r >= 1.
PowerSet scan_power_set(const CoefficientModel& model, double r) {
    PowerSet out;
    const std::int64_t cutoff = model.cutoff_index(r);
    double sum = 0.0, comp = 0.0;
    for (std::int64_t n = 0; n <= cutoff; ++n) {
        const double w = model.log_weight(n, r);
        if (w >= 0.0) {
            out.ns.push_back(n);
            out.ws.push_back(w);
            out.m += n;
            const double t = sum + w;
            comp += (sum >= w) ? (sum - t) + w : (w - t) + sum;
            sum = t;
        }
    }
    out.s = 2.0 * (sum + comp);
    return out;
}

std::int64_t mass_at(const CoefficientModel& model, double r) {
    return scan_power_set(model, r).m;
}

NormalityRecord normality_record(const CoefficientModel& model, double r, std::int64_t m) {
    NormalityRecord rec;
    rec.m = m;
    if (m == 0) {
        rec.status = Normality::Degenerate;
        rec.delta = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }
    rec.delta = std::pow(double(m), -0.25);
    rec.m_contract = mass_at(model, r * std::exp(-rec.delta));
    rec.m_expand = mass_at(model, r * std::exp(rec.delta));
    rec.lower_bound = 0.75 * double(m);
    rec.upper_bound = 1.25 * double(m);
    const bool ok = 4 * rec.m_contract > 3 * m && 4 * rec.m_expand < 5 * m;
    rec.status = ok ? Normality::Normal : Normality::Exceptional;
    return rec;
}

}  // namespace

const char* to_string(Normality s) {
    switch (s) {
        case Normality::Normal: return "normal";
        case Normality::Exceptional: return "exceptional";
        case Normality::Degenerate: return "degenerate";
    }
    return "?";
}

RadialAnalysis radial_analysis(const CoefficientModel& model, double r) {
    if (!(r >= 1.0)) throw std::domain_error("radial_analysis: radius must be >= 1");
    PowerSet ps = scan_power_set(model, r);
    RadialAnalysis out;
    out.r = r;
    out.power_set = std::move(ps.ns);
    out.weights = std::move(ps.ws);
    out.n_count = out.power_set.size();
    out.m_mass = ps.m;
    out.s_weight = ps.s;
    const NormalityRecord rec = normality_record(model, r, ps.m);
    out.delta = rec.delta;
    out.status = rec.status;
    return out;
}

NormalityRecord is_normal(const CoefficientModel& model, double r) {
    if (!(r >= 1.0)) throw std::domain_error("is_normal: radius must be >= 1");
    return normality_record(model, r, mass_at(model, r));
}

ExceptionalScan exceptional_scan(const CoefficientModel& model, double r_min, double r_max,
                                 double step_fraction) {
    if (!(r_min >= 1.0 && r_min < r_max))
        throw std::domain_error("exceptional_scan: need 1 <= r_min < r_max");
    if (!(step_fraction > 0.0 && step_fraction <= 0.25))
        throw std::domain_error("exceptional_scan: step_fraction must be in (0, 1/4]");

    ExceptionalScan out;
    bool in_run = false;
    ExceptionalInterval run;
    double r = r_min;
    bool last = false;
    while (true) {
        const NormalityRecord rec = is_normal(model, r);
        ++out.grid_points;
        switch (rec.status) {
            case Normality::Normal: ++out.normal_points; break;
            case Normality::Exceptional: ++out.exceptional_points; break;
            case Normality::Degenerate: ++out.degenerate_points; break;
        }
        double h = (rec.m >= 1 ? std::min(rec.delta, 1.0) : 1.0) * step_fraction;
        if (last) h = 0.0;  // terminal grid point carries no step
        const bool flagged = rec.status != Normality::Normal;
        if (flagged && !in_run) {
            in_run = true;
            run = ExceptionalInterval{r, r, 0.0, 0};
        }
        if (flagged) {
            run.log_length += h;
            run.hi = r * std::exp(h);
            ++run.points;
            out.log_measure += h;
        } else if (in_run) {
            out.flagged.push_back(run);
            in_run = false;
        }
        if (last) break;
        double next = r * std::exp(h);
        if (next >= r_max * (1.0 - 1e-12)) {
            // clamp the final step so the grid lands exactly on r_max
            if (flagged) {
                const double clamped = std::log(r_max / r);
                out.log_measure += clamped - h;
                run.log_length += clamped - h;
                run.hi = r_max;
            }
            next = r_max;
            last = true;
        }
        r = next;
    }
    if (in_run) out.flagged.push_back(run);
    return out;
}

SLowerAudit s_lower_values(const CoefficientModel& model, double r) {
    if (!(r >= 1.0)) throw std::domain_error("s_lower_values: radius must be >= 1");
    PowerSet ps = scan_power_set(model, r);
    SLowerAudit audit;
    audit.s = ps.s;
    audit.m_bound = 1.5 * std::pow(double(ps.m), 0.75);
    audit.n_ratio = ps.s / std::pow(double(ps.ns.size()), 1.5);
    audit.pass = audit.s >= audit.m_bound;
    return audit;
}

SLowerAudit s_lower_audit(const CoefficientModel& model, double r) {
    if (is_normal(model, r).status != Normality::Normal)
        throw std::domain_error("s_lower_audit: radius is not normal");
    return s_lower_values(model, r);
}

SGrowthAudit s_growth_audit(const CoefficientModel& model, double r, double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::domain_error("s_growth_audit: gamma must be in (0, 1/2)");
    if (!(r >= 1.0)) throw std::domain_error("s_growth_audit: radius must be >= 1");
    const double r_contracted = (1.0 - gamma) * r;
    if (!(r_contracted >= 1.0))
        throw std::domain_error("s_growth_audit: contracted radius drops below 1");
    PowerSet full = scan_power_set(model, r);
    PowerSet contracted = scan_power_set(model, r_contracted);
    SGrowthAudit audit;
    audit.s_r = full.s;
    audit.s_contracted = contracted.s;
    audit.drop_allowance = 4.0 * gamma * double(full.m);
    audit.pass = audit.s_contracted >= audit.s_r - audit.drop_allowance;
    return audit;
}

}  // namespace gaf

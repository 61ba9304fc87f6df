#pragma once

// Gauge functions h(t) = t/p(1/t) for generalized Hausdorff measure, width
// profiles psi for the wedge Omega_psi, and the two computable predicates
//   (condp)   p( t (log t)^{1+delta} / psi(t) ) <= psi(log t)
//   (condp2)  p( t log t / psi(t) )             >= (log t)^{1+delta}
// reported over geometric grids with an empirical threshold t*.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "params.hpp"
#include "schroeder.hpp"
#include "tower.hpp"

namespace hairlab {

enum class PKind { Power, LogPower, FracIter, FracIterPow, Const };

// h(t) = t / p(1/t); p is the object the predicates evaluate.
struct GaugeSpec {
    PKind kind = PKind::Power;
    double a = 1.0;      // Power: p(x)=x^a;  LogPower: p(x)=(log x)^a
    double s = 0.0;      // FracIter kinds: p(x)=L^s(x)^gamma
    double gamma = 1.0;
    double c = 1.0;      // Const: p(x)=c
    double t0 = 0.1;     // gauge validity threshold
    const SchroederFn* schroeder = nullptr;

    static GaugeSpec power(double s) {  // h(t) = t^s
        GaugeSpec g; g.kind = PKind::Power; g.a = s - 1.0; return g;
    }
    static GaugeSpec from_p_power(double a) {
        GaugeSpec g; g.kind = PKind::Power; g.a = a; return g;
    }
    static GaugeSpec log_power(double s) {  // h(t) = t/(log(1/t))^s
        GaugeSpec g; g.kind = PKind::LogPower; g.a = s; return g;
    }
    static GaugeSpec frac_iter(double s, const SchroederFn* f) {  // h(t) = t/L^s(1/t)
        GaugeSpec g; g.kind = PKind::FracIter; g.s = s; g.gamma = 1.0; g.schroeder = f; return g;
    }
    static GaugeSpec frac_iter_pow(double s, double gamma, const SchroederFn* f) {
        GaugeSpec g; g.kind = PKind::FracIterPow; g.s = s; g.gamma = gamma; g.schroeder = f;
        return g;
    }
    static GaugeSpec from_p_const(double c) {
        GaugeSpec g; g.kind = PKind::Const; g.c = c; return g;
    }
};

// tower for e^{lx} = E(lx - log lambda), valid for any lx up to 1e15
inline TowerReal tower_from_ln(const Params& p, double lx) {
    if (lx <= 700.0) return tower_from_double(p, std::exp(lx));
    return tower_exp(p, tower_from_double(p, lx - p.log_lambda));
}

inline double eval_p(const GaugeSpec& g, double x) {
    switch (g.kind) {
        case PKind::Power: return std::pow(x, g.a);
        case PKind::LogPower:
            if (x <= 1.0) throw std::domain_error("eval_p: log-power p needs x > 1");
            return std::pow(std::log(x), g.a);
        case PKind::FracIter:
        case PKind::FracIterPow: {
            double l = tower_value(g.schroeder->params,
                                   frac_iter(*g.schroeder, -g.s,
                                             tower_from_double(g.schroeder->params, x)));
            return (g.kind == PKind::FracIter) ? l : std::pow(l, g.gamma);
        }
        case PKind::Const: return g.c;
    }
    throw std::logic_error("eval_p: bad kind");
}

// ln p(x) given lx = ln x; supports arguments far beyond double range for the
// closed-form kinds.
inline double eval_p_ln(const GaugeSpec& g, double lx) {
    switch (g.kind) {
        case PKind::Power: return g.a * lx;
        case PKind::LogPower:
            if (lx <= 0.0) throw std::domain_error("eval_p_ln: log-power p needs ln x > 0");
            return g.a * std::log(lx);
        case PKind::FracIter:
        case PKind::FracIterPow: {
            const Params& p = g.schroeder->params;
            double l = tower_ln(p, frac_iter(*g.schroeder, -g.s, tower_from_ln(p, lx)));
            if (!std::isfinite(l))
                throw std::range_error("eval_p_ln: fractional iterate beyond log range");
            return g.gamma * l;
        }
        case PKind::Const: return std::log(g.c);
    }
    throw std::logic_error("eval_p_ln: bad kind");
}

inline double eval_gauge(const GaugeSpec& g, double t) {
    if (!(t > 0.0) || !(t < g.t0))
        throw std::domain_error("eval_gauge: t outside (0, t0)");
    return t / eval_p(g, 1.0 / t);
}

inline double eval_gauge_ln(const GaugeSpec& g, double ln_t) {
    return ln_t - eval_p_ln(g, -ln_t);
}

// -----------------------------------------------------------------------

struct GaugeProfile {
    enum class Kind { FracIterWidth, LogQuotientWidth };
    Kind kind = Kind::LogQuotientWidth;
    double eps = 1.0;
    double x_min = 3.0;
    const SchroederFn* schroeder = nullptr;

    static GaugeProfile frac_iter_width(double eps, const SchroederFn* f) {
        GaugeProfile w; w.kind = Kind::FracIterWidth; w.eps = eps; w.schroeder = f;
        w.x_min = f->params.beta;
        return w;
    }
    static GaugeProfile log_quotient_width(double eps, double x_min = 3.0) {
        GaugeProfile w; w.kind = Kind::LogQuotientWidth; w.eps = eps; w.x_min = x_min;
        return w;
    }
};

inline double eval_psi(const GaugeProfile& w, double x) {
    if (!(x >= w.x_min)) throw std::domain_error("eval_psi: x below the validated range");
    if (w.kind == GaugeProfile::Kind::LogQuotientWidth)
        return x / std::pow(std::log(x), w.eps);
    return tower_value(w.schroeder->params,
                       frac_iter(*w.schroeder, -w.eps,
                                 tower_from_double(w.schroeder->params, x)));
}

// ln psi(t) given lt = ln t
inline double eval_psi_ln(const GaugeProfile& w, double lt) {
    if (w.kind == GaugeProfile::Kind::LogQuotientWidth) {
        if (lt <= 0.0) throw std::domain_error("eval_psi_ln: needs ln t > 0");
        return lt - w.eps * std::log(lt);
    }
    const Params& p = w.schroeder->params;
    double l = tower_ln(p, frac_iter(*w.schroeder, -w.eps, tower_from_ln(p, lt)));
    if (!std::isfinite(l)) throw std::range_error("eval_psi_ln: beyond log range");
    return l;
}

// psi(t) for tower-scale t.  Exact for the fractional-iterate width; for the
// log-quotient width beyond double range a certified lower bound is returned
// (L(t) <= psi(t) there), which is what membership certification consumes.
inline TowerReal psi_of_tower(const GaugeProfile& w, const Params& p, const TowerReal& t) {
    if (w.kind == GaugeProfile::Kind::FracIterWidth)
        return frac_iter(*w.schroeder, -w.eps, t);
    double v = tower_value(p, t);
    if (std::isfinite(v)) return tower_from_double(p, v / std::pow(std::log(v), w.eps));
    double lt = tower_ln(p, t);
    if (std::isfinite(lt)) return tower_mul(p, t, std::pow(lt, -w.eps));
    return tower_log(p, t);
}

// -----------------------------------------------------------------------

struct PredicateRow {
    double t;  // or ln t for the log-domain variants
    double lhs, rhs, margin;
};

struct PredicateReport {
    bool holds_everywhere = false;
    bool t_star_found = false;
    double t_star = 0.0;
    double first_failure = 0.0;
    std::vector<PredicateRow> rows;
};

namespace detail {
inline PredicateReport scan_predicate(double lo, double hi,
                                      const std::function<std::pair<double, double>(double)>& ev,
                                      bool lhs_le_rhs) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("predicate scan: bad range");
    int n = std::max(2, static_cast<int>(std::ceil(64.0 * std::log10(hi / lo))));
    PredicateReport rep;
    rep.rows.reserve(n + 1);
    rep.holds_everywhere = true;
    double last_fail = -1.0;
    for (int i = 0; i <= n; ++i) {
        double t = lo * std::pow(hi / lo, static_cast<double>(i) / n);
        auto [lhs, rhs] = ev(t);
        double slack = 1e-12 * std::fabs(rhs);
        bool ok = lhs_le_rhs ? (lhs <= rhs + slack) : (lhs >= rhs - slack);
        rep.rows.push_back({t, lhs, rhs, lhs_le_rhs ? rhs - lhs : lhs - rhs});
        if (!ok) {
            if (rep.holds_everywhere) rep.first_failure = t;
            rep.holds_everywhere = false;
            last_fail = t;
        }
    }
    if (rep.holds_everywhere) {
        rep.t_star_found = true;
        rep.t_star = lo;
    } else if (last_fail < hi) {
        // first grid point after the last failure
        for (const auto& r : rep.rows)
            if (r.t > last_fail) { rep.t_star = r.t; rep.t_star_found = true; break; }
    }
    return rep;
}
}  // namespace detail

inline PredicateReport check_condp(const GaugeSpec& g, const GaugeProfile& psi, double delta,
                                   double t_lo, double t_hi) {
    if (!(delta > 0.0)) throw std::domain_error("check_condp: delta must be positive");
    return detail::scan_predicate(t_lo, t_hi, [&](double t) {
        double lt = std::log(t);
        double arg = t * std::pow(lt, 1.0 + delta) / eval_psi(psi, t);
        return std::make_pair(eval_p(g, arg), eval_psi(psi, lt));
    }, true);
}

inline PredicateReport check_condp2(const GaugeSpec& g, const GaugeProfile& psi, double delta,
                                    double t_lo, double t_hi) {
    if (!(delta > 0.0)) throw std::domain_error("check_condp2: delta must be positive");
    return detail::scan_predicate(t_lo, t_hi, [&](double t) {
        double lt = std::log(t);
        double arg = t * lt / eval_psi(psi, t);
        return std::make_pair(eval_p(g, arg), std::pow(lt, 1.0 + delta));
    }, false);
}

// Log-domain variants: the grid variable is lt = ln t, so ranges with
// t astronomically beyond double range remain scannable.
inline PredicateReport check_condp_ln(const GaugeSpec& g, const GaugeProfile& psi, double delta,
                                      double lt_lo, double lt_hi) {
    if (!(delta > 0.0)) throw std::domain_error("check_condp_ln: delta must be positive");
    return detail::scan_predicate(lt_lo, lt_hi, [&](double lt) {
        double ln_arg = lt + (1.0 + delta) * std::log(lt) - eval_psi_ln(psi, lt);
        return std::make_pair(eval_p_ln(g, ln_arg), eval_psi_ln(psi, std::log(lt)));
    }, true);
}

inline PredicateReport check_condp2_ln(const GaugeSpec& g, const GaugeProfile& psi, double delta,
                                       double lt_lo, double lt_hi) {
    if (!(delta > 0.0)) throw std::domain_error("check_condp2_ln: delta must be positive");
    return detail::scan_predicate(lt_lo, lt_hi, [&](double lt) {
        double ln_arg = lt + std::log(lt) - eval_psi_ln(psi, lt);
        return std::make_pair(eval_p_ln(g, ln_arg), (1.0 + delta) * std::log(lt));
    }, false);
}

}  // namespace hairlab

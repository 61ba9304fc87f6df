#pragma once

// Schroeder conjugacy S at the repelling fixed point: S(beta*z) = E(S(z)),
// S(0) = beta, S'(0) = 1, and the real fractional iterates
// E^r(x) = S(beta^r * S^{-1}(x)) on [alpha, infinity).
//
// S is built twice: by the coefficient recursion from the functional equation
// and by the limit formula S(z) = lim E^n(beta + z/beta^n).  The validated
// radius is the largest probe radius where both agree to 1e-9; far arguments
// are reached through S(z) = E^k(S(z/beta^k)).

#include <cmath>
#include <complex>
#include <quadmath.h>
#include <stdexcept>
#include <string>
#include <vector>

#include "params.hpp"
#include "tower.hpp"

namespace hairlab {

struct SchroederFn {
    Params params;
    std::vector<double> coeffs;  // Taylor coefficients of S at 0
    double radius = 0.0;         // validated series radius
    int limit_depth = 0;         // deepest n used by the limit formula
    TowerReal s_radius{};        // S(radius)
    double s_neg_radius = 0.0;   // S(-radius)
};

inline double eval_series(const SchroederFn& f, double z) {
    double acc = 0.0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * z + f.coeffs[i];
    return acc;
}

inline std::complex<double> eval_series(const SchroederFn& f, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * z + f.coeffs[i];
    return acc;
}

inline double eval_series_deriv(const SchroederFn& f, double z) {
    double acc = 0.0;
    for (std::size_t i = f.coeffs.size(); i-- > 1;)
        acc = acc * z + static_cast<double>(i) * f.coeffs[i];
    return acc;
}

// Limit formula E^n(beta + z/beta^n), deepened until successive n agree.
// Evaluated in quad precision: representing beta + x/beta^n costs an absolute
// ulp that the repelling iteration amplifies by beta^n, so the double (and
// even 80-bit) noise floor sits far above the 1e-9 contract at useful depths.
inline double eval_S_limit(const Params& p, double x, int* depth_used = nullptr) {
    const __float128 lam = static_cast<__float128>(p.lambda);
    __float128 b = static_cast<__float128>(p.beta);
    for (int i = 0; i < 4; ++i)  // polish beta to the quad noise floor
        b -= (lam * expq(b) - b) / (lam * expq(b) - 1);
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int n = 8; n <= 200; ++n) {
        __float128 bp = 1;
        for (int j = 0; j < n; ++j) bp *= b;
        __float128 v = b + static_cast<__float128>(x) / bp;
        for (int j = 0; j < n; ++j) {
            if (v > 11300) throw std::range_error("eval_S_limit: value overflows quad range");
            v = lam * expq(v);
        }
        double vd = static_cast<double>(v);
        if (!std::isnan(prev) && std::fabs(vd - prev) <= 1e-12 * std::max(1.0, std::fabs(vd))) {
            if (depth_used) *depth_used = n;
            return vd;
        }
        prev = vd;
    }
    throw std::runtime_error("eval_S_limit: no convergence within depth 200");
}

// S(c * beta^e) as a tower, via S(z) = E^k(S(z/beta^k)).
inline TowerReal eval_S_pow(const SchroederFn& f, double c, double e) {
    const Params& p = f.params;
    if (c == 0.0) return tower_from_double(p, p.beta);
    const double lb = std::log(p.beta);
    int k = static_cast<int>(std::ceil(e + (std::log(std::fabs(c)) - std::log(f.radius)) / lb));
    if (k < 0) k = 0;
    double z = c * std::exp((e - static_cast<double>(k)) * lb);
    TowerReal t = tower_from_double(p, eval_series(f, z));
    for (int i = 0; i < k; ++i) t = tower_exp(p, t);
    return t;
}

inline TowerReal eval_S(const SchroederFn& f, double x) { return eval_S_pow(f, x, 0.0); }

inline SchroederFn build_schroeder(const Params& p, std::size_t n_coeffs = 192) {
    if (n_coeffs < 2) throw std::domain_error("build_schroeder: need at least 2 coefficients");
    SchroederFn f;
    f.params = p;
    const double beta = p.beta;
    // S(beta z) = beta * exp(S(z) - beta): with S = beta + sum a_n z^n and
    // exp(S - beta) = sum b_n z^n, comparing coefficients gives
    // b_n = a_n beta^{n-1} and n b_n = sum_{k<=n} k a_k b_{n-k}.
    std::vector<double> a(n_coeffs, 0.0), b(n_coeffs, 0.0);
    a[0] = beta;
    a[1] = 1.0;
    b[0] = 1.0;
    b[1] = 1.0;
    double bpow = beta;  // beta^{n-1}
    for (std::size_t n = 2; n < n_coeffs; ++n) {
        double c = 0.0;
        for (std::size_t k = 1; k < n; ++k) c += static_cast<double>(k) * a[k] * b[n - k];
        c /= static_cast<double>(n);
        a[n] = c / (bpow - 1.0);
        b[n] = a[n] + c;
        bpow *= beta;
    }
    f.coeffs = std::move(a);

    // Validate: limit-formula agreement at 20 probes and functional-equation
    // residual on a grid, per candidate radius; keep the largest that passes.
    const double cand[] = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 3.0};
    double best = 0.0;
    double worst_resid = 0.0;
    int depth = 0;
    for (double rho : cand) {
        bool ok = true;
        double resid = 0.0;
        try {
            for (int i = 0; i < 20 && ok; ++i) {
                double x = -rho + 2.0 * rho * (i + 0.5) / 20.0;
                int d = 0;
                double lim = eval_S_limit(p, x, &d);
                depth = std::max(depth, d);
                double ser = eval_series(f, x);
                double err = std::fabs(ser - lim) / std::max(1.0, std::fabs(lim));
                resid = std::max(resid, err);
                if (err > 1e-9) ok = false;
            }
            for (int i = 0; i < 80 && ok; ++i) {
                double ang = 2.0 * kPi * i / 80.0;
                double rr = rho * (0.3 + 0.7 * ((i % 5) + 1) / 5.0);
                std::complex<double> z = std::polar(rr, ang);
                std::complex<double> lhs = eval_series(f, beta * z);
                std::complex<double> rhs = p.lambda * std::exp(eval_series(f, z));
                double err = std::abs(lhs - rhs);
                resid = std::max(resid, err);
                if (err > 1e-9) ok = false;
            }
        } catch (const std::range_error&) {
            ok = false;
        }
        if (ok) best = rho;
        else if (best == 0.0) worst_resid = resid;
    }
    if (best == 0.0)
        throw std::runtime_error(
            "build_schroeder: series/limit disagreement at every candidate radius; residual " +
            std::to_string(worst_resid));
    f.radius = best;
    f.limit_depth = depth;
    f.s_radius = eval_S(f, f.radius);
    f.s_neg_radius = eval_series(f, -f.radius);
    return f;
}

// S^{-1}(y) factored as x_small * beta^m with x_small in [-radius, radius].
inline std::pair<double, int> schroeder_log_inverse(const SchroederFn& f, TowerReal y) {
    const Params& p = f.params;
    int m = 0;
    while (f.s_radius < y) { y = tower_log(p, y); ++m; }
    double yv = tower_value(p, y);  // finite now: <= S(radius)
    // L also moves values in (alpha, beta) up toward beta, shrinking |S^{-1}|
    // by the same beta factor
    while (yv < f.s_neg_radius) {
        if (!(yv > p.alpha))
            throw std::domain_error("schroeder_log_inverse: value <= alpha leaves the domain");
        yv = p.L_real(yv);
        ++m;
    }
    double target = yv;
    double lo = -f.radius, hi = f.radius;
    double x = 0.0;
    for (int it = 0; it < 200; ++it) {
        double s = eval_series(f, x);
        double err = s - target;
        if (std::fabs(err) <= 1e-13 * std::max(1.0, std::fabs(target))) break;
        if (err > 0) hi = x; else lo = x;
        double d = eval_series_deriv(f, x);
        double step = (d != 0.0) ? x - err / d : lo - 1.0;
        x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    return {x, m};
}

inline double eval_S_inverse(const SchroederFn& f, TowerReal y) {
    auto [xs, m] = schroeder_log_inverse(f, y);
    return xs * std::pow(f.params.beta, static_cast<double>(m));
}

inline double eval_S_inverse(const SchroederFn& f, double y) {
    return eval_S_inverse(f, tower_from_double(f.params, y));
}

// E^r(x) = S(beta^r S^{-1}(x)); negative r gives L^{|r|}.
inline TowerReal frac_iter(const SchroederFn& f, double r, TowerReal x) {
    const Params& p = f.params;
    if (x.level == 0) {
        if (x.mantissa < p.alpha - 1e-12)
            throw std::domain_error("frac_iter: argument below alpha leaves the domain");
        if (x.mantissa <= p.alpha) return tower_from_double(p, p.alpha);
    }
    auto [xs, m] = schroeder_log_inverse(f, x);
    return eval_S_pow(f, xs, static_cast<double>(m) + r);
}

inline TowerReal frac_iter(const SchroederFn& f, double r, double x) {
    return frac_iter(f, r, tower_from_double(f.params, x));
}

}  // namespace hairlab

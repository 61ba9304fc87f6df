#pragma once

// Overflow-proof arithmetic for iterated-exponential magnitudes.
//
// A TowerReal (m, x) stands for E^m(x) under a fixed Params.  Canonical form:
// either m = 0 (x is the value itself, x < E(x0)), or x in [x0, E(x0)).
// E maps [x0, E(x0)) bijectively onto [E(x0), E^2(x0)), so the canonical pair
// is unique and comparison is lexicographic on (level, mantissa).
//
// Precision contract: relative error on the mantissa <= level * 1e-14.
// Additive corrections are applied exactly while the value fits below 1e15,
// via one log-domain correction while it fits in a double, and are dropped
// (relative effect < 1e-290 for |d| <= 1e15) once the value exceeds double
// range.

#include <cmath>
#include <compare>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "params.hpp"

namespace hairlab {

struct TowerReal {
    int level = 0;
    double mantissa = 0.0;

    friend std::partial_ordering operator<=>(const TowerReal& a, const TowerReal& b) {
        if (a.level != b.level) return a.level <=> b.level;
        return a.mantissa <=> b.mantissa;
    }
    friend bool operator==(const TowerReal& a, const TowerReal& b) = default;
};

inline TowerReal tower_canonicalize(const Params& p, int level, double x) {
    if (!std::isfinite(x)) throw std::domain_error("tower: non-finite mantissa");
    while (x >= p.ex0) { x = p.L_real(x); ++level; }
    while (level > 0 && x < p.x0) { x = p.E_real(x); --level; }
    return {level, x};
}

inline TowerReal tower_from_double(const Params& p, double x) {
    return tower_canonicalize(p, 0, x);
}

// Value as a double; +inf when beyond hardware range.
inline double tower_value(const Params& p, const TowerReal& t) {
    double v = t.mantissa;
    for (int i = 0; i < t.level; ++i) {
        if (v > 709.0) return std::numeric_limits<double>::infinity();
        v = p.E_real(v);
    }
    return v;
}

// ln(value); +inf when even the logarithm exceeds double range.
inline double tower_ln(const Params& p, const TowerReal& t) {
    if (t.level == 0) return std::log(t.mantissa);
    // ln E^m(x) = ln lambda + E^{m-1}(x)
    double down = tower_value(p, TowerReal{t.level - 1, t.mantissa});
    return p.log_lambda + down;
}

inline TowerReal tower_exp(const Params& p, const TowerReal& t) {
    return tower_canonicalize(p, t.level + 1, t.mantissa);
}

inline TowerReal tower_log(const Params& p, const TowerReal& t) {
    if (t.level >= 1) return tower_canonicalize(p, t.level - 1, t.mantissa);
    if (!(t.mantissa > p.alpha))
        throw std::domain_error("tower_log: value <= alpha leaves the domain [alpha, inf)");
    return tower_from_double(p, p.L_real(t.mantissa));
}

// value + d, |d| <= 1e15.
inline TowerReal add_small(const Params& p, const TowerReal& t, double d) {
    if (!(std::fabs(d) <= kHardwareMax))
        throw std::domain_error("add_small: |d| must be <= 1e15");
    if (d == 0.0) return t;
    double v = tower_value(p, t);
    if (v <= kHardwareMax) return tower_from_double(p, v + d);
    if (std::isfinite(v)) {
        // E^m(x) + d = E( E^{m-1}(x) + ln(1 + d/v) )
        double corr = std::log1p(d / v);
        TowerReal down{t.level - 1, t.mantissa};
        return tower_exp(p, add_small(p, down, corr));
    }
    return t;  // documented drop: relative effect < 1e-290
}

// value * c, c > 0 with |ln c| <= 1e15.
inline TowerReal tower_mul(const Params& p, const TowerReal& t, double c) {
    if (!(c > 0.0)) throw std::domain_error("tower_mul: factor must be positive");
    double v = tower_value(p, t);
    if (v <= kHardwareMax) return tower_from_double(p, v * c);
    // E^m(x) * c = E( E^{m-1}(x) + ln c )
    TowerReal down{t.level - 1, t.mantissa};
    return tower_exp(p, add_small(p, down, std::log(c)));
}

inline std::string tower_to_string(const TowerReal& t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "E^{%d}(%.17g)", t.level, t.mantissa);
    return buf;
}

// -----------------------------------------------------------------------
// Near-real orbit points: value = magnitude * e^{i angle}, angle in (-pi, pi].
// Beyond hardware range the stored angle only carries meaning in the
// real-dominant regime |angle| <= pi/4.

struct RealDominantComplex {
    TowerReal magnitude;
    double angle = 0.0;
};

inline double reduce_angle(double y) {
    double a = std::remainder(y, 2.0 * kPi);  // in [-pi, pi]
    if (a <= -kPi) a = kPi;
    return a;
}

inline RealDominantComplex rdc_from_complex(const Params& p, std::complex<double> z) {
    return {tower_from_double(p, std::abs(z)), reduce_angle(std::atan2(z.imag(), z.real()))};
}

inline bool rdc_is_hardware(const Params& p, const RealDominantComplex& z) {
    return tower_value(p, z.magnitude) <= kHardwareMax;
}

inline std::complex<double> rdc_to_complex(const Params& p, const RealDominantComplex& z) {
    double v = tower_value(p, z.magnitude);
    if (!(v <= kHardwareMax))
        throw std::range_error("rdc_to_complex: magnitude beyond hardware range");
    return std::polar(v, z.angle);
}

// Real part as a tower (valid when the point is real-dominant or hardware).
inline TowerReal rdc_re(const Params& p, const RealDominantComplex& z) {
    double v = tower_value(p, z.magnitude);
    if (v <= kHardwareMax) return tower_from_double(p, v * std::cos(z.angle));
    return tower_mul(p, z.magnitude, std::cos(z.angle));
}

// Imaginary part as a double; throws once it leaves the representable regime.
inline double rdc_im(const Params& p, const RealDominantComplex& z) {
    double v = tower_value(p, z.magnitude);
    if (v <= kHardwareMax) return v * std::sin(z.angle);
    double s = std::sin(z.angle);
    if (s == 0.0) return 0.0;
    double y = v * s;
    if (!(std::fabs(y) <= kHardwareMax))
        throw std::range_error("rdc_im: imaginary part beyond representable regime");
    return y;
}

// One application of E.  Hardware complex arithmetic below 1e15; above it the
// real-dominant rule E(r e^{i t}) = E(r cos t) e^{i (r sin t)}.
inline RealDominantComplex step_orbit(const Params& p, const RealDominantComplex& z) {
    double v = tower_value(p, z.magnitude);
    if (v <= kHardwareMax) {
        double x = v * std::cos(z.angle);
        double y = v * std::sin(z.angle);
        TowerReal mag = tower_exp(p, tower_from_double(p, x));
        return {mag, reduce_angle(y)};
    }
    if (!(std::fabs(z.angle) <= kPi / 4.0))
        throw std::range_error("step_orbit: angle outside the real-dominant regime at tower level");
    double y = rdc_im(p, z);  // throws if the imaginary part has overtaken the regime
    TowerReal re = tower_mul(p, z.magnitude, std::cos(z.angle));
    return {tower_exp(p, re), reduce_angle(y)};
}

inline RealDominantComplex rdc_conj(const RealDominantComplex& z) {
    double a = (z.angle == kPi) ? kPi : -z.angle;
    return {z.magnitude, a};
}

}  // namespace hairlab

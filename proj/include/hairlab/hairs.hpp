#pragma once

// Finite-depth hair points h_{s,n}(u) = (L_{s_0} o ... o L_{s_n} o E^{n+1})(u),
// hair sampling, endpoint extrapolation, forward itineraries, and the
// horizon-certified membership test for X(x0, psi).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gauge.hpp"
#include "itinerary.hpp"
#include "params.hpp"
#include "tower.hpp"

namespace hairlab {

// Numerical-resolution failure (CLI exit 3), as opposed to a domain error.
class resolution_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One inverse-branch application L_s on a near-real orbit point: the new real
// part is L(|w|) (exact tower level decrement beyond hardware range) and the
// new imaginary part is arg + 2*pi*s.
inline RealDominantComplex pullback_step(const Params& p, long long s,
                                         const RealDominantComplex& w) {
    double v = tower_value(p, w.magnitude);
    if (v <= kHardwareMax) {
        return rdc_from_complex(p, inverse_branch(p, s, std::polar(v, w.angle)));
    }
    TowerReal X = tower_log(p, w.magnitude);
    double Y = w.angle + 2.0 * kPi * static_cast<double>(s);
    double xv = tower_value(p, X);
    if (xv <= kHardwareMax) {
        return rdc_from_complex(p, std::complex<double>(xv, Y));
    }
    // |X + iY| = X sqrt(1 + (Y/X)^2); the correction vanishes below roundoff
    TowerReal mag = add_small(p, X, std::isfinite(xv) ? Y * Y / (2.0 * xv) : 0.0);
    double ang = std::isfinite(xv) ? Y / xv : 0.0;
    return {mag, ang};
}

struct HairPoint {
    Itinerary itinerary;
    double u = 0.0;
    int depth = 0;
    RealDominantComplex value;
};

inline HairPoint trace_hair_point(const Params& p, const Itinerary& s, double u, int n) {
    if (n < 0) throw std::domain_error("trace_hair_point: negative depth");
    double us = critical_parameter(p, s);
    if (!(u > us))
        throw std::domain_error("trace_hair_point: u must exceed the critical parameter " +
                                std::to_string(us));
    TowerReal t = tower_from_double(p, u);
    for (int i = 0; i <= n; ++i) t = tower_exp(p, t);
    RealDominantComplex w{t, 0.0};
    for (int k = n; k >= 0; --k) {
        w = pullback_step(p, itinerary_symbol(p, s, static_cast<std::size_t>(k)), w);
        double v = tower_value(p, w.magnitude);
        if (v <= kHardwareMax && v * std::cos(w.angle) < p.beta - 1e-9)
            throw resolution_error(
                "trace_hair_point: branch fell into the Fatou half-plane at index " +
                std::to_string(k) + " (u too close to the critical parameter for this depth)");
    }
    return {s, u, n, w};
}

// pi * sum_{k=1}^{n} (2|s_k|+1) / (beta^{k-1} E^k(u)): the width of the
// real-part sandwich around u at depth n.
inline double sandwich_bound(const Params& p, const Itinerary& s, double u, int n) {
    double sum = 0.0;
    double lb = std::log(p.beta);
    TowerReal eu = tower_from_double(p, u);
    for (int k = 1; k <= n; ++k) {
        eu = tower_exp(p, eu);
        double le = tower_ln(p, eu);
        double lr = itinerary_log_ratio(p, s, u, static_cast<std::size_t>(k));
        double t1 = std::isfinite(lr) ? 2.0 * std::exp(lr - (k - 1) * lb) : 0.0;
        double t2 = std::isfinite(le) ? std::exp(-le - (k - 1) * lb) : 0.0;
        sum += t1 + t2;
    }
    return kPi * sum;
}

struct HairTrace {
    std::vector<HairPoint> points;
    std::vector<double> gaps;  // Euclidean gap to the next sample (NaN beyond hardware)
};

inline HairTrace trace_hair(const Params& p, const Itinerary& s, double u_lo, double u_hi,
                            int n, int m) {
    double us = critical_parameter(p, s);
    if (!(us < u_lo && u_lo < u_hi)) throw std::domain_error("trace_hair: need u_s < u_lo < u_hi");
    if (m < 2) throw std::domain_error("trace_hair: need at least 2 samples");
    HairTrace tr;
    tr.points.reserve(m);
    for (int j = 0; j < m; ++j) {
        double u = us + (u_lo - us) *
                            std::pow((u_hi - us) / (u_lo - us), static_cast<double>(j) / (m - 1));
        tr.points.push_back(trace_hair_point(p, s, u, n));
    }
    tr.gaps.assign(m - 1, std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j + 1 < m; ++j) {
        const auto& a = tr.points[j].value;
        const auto& b = tr.points[j + 1].value;
        if (rdc_is_hardware(p, a) && rdc_is_hardware(p, b))
            tr.gaps[j] = std::abs(rdc_to_complex(p, a) - rdc_to_complex(p, b));
    }
    return tr;
}

struct EndpointEstimate {
    std::complex<double> value;
    double error_bound = 0.0;
    int depth = 0;
};

// h_{s,n}(u_s + 2^{-j}) for j = 3..12, geometric extrapolation on the last
// windows.  A numerical estimate only; no convergence guarantee is claimed.
inline EndpointEstimate estimate_endpoint(const Params& p, const Itinerary& s, int n, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("estimate_endpoint: tol must be positive");
    double us = critical_parameter(p, s);
    std::vector<std::complex<double>> v;
    for (int j = 3; j <= 12; ++j) {
        HairPoint hp = trace_hair_point(p, s, us + std::ldexp(1.0, -j), n);
        if (!rdc_is_hardware(p, hp.value))
            throw resolution_error("endpoint not resolved at depth " + std::to_string(n) +
                                   ": probe escaped hardware range");
        v.push_back(rdc_to_complex(p, hp.value));
    }
    auto extrap = [&](std::size_t last) {
        std::complex<double> d1 = v[last - 1] - v[last - 2];
        std::complex<double> d2 = v[last] - v[last - 1];
        if (std::abs(d1) == 0.0) return v[last];
        std::complex<double> rho = d2 / d1;
        if (std::abs(1.0 - rho) < 1e-6) return v[last];
        return v[last] + d2 * rho / (1.0 - rho);
    };
    std::size_t m = v.size() - 1;
    // Cauchy guard on the raw differences
    double dA = std::abs(v[m - 2] - v[m - 3]);
    double dB = std::abs(v[m - 1] - v[m - 2]);
    double dC = std::abs(v[m] - v[m - 1]);
    if (dC > dB && dB > dA && dC > tol)
        throw resolution_error("endpoint not resolved at depth " + std::to_string(n) +
                               ": probe differences are not Cauchy");
    std::complex<double> e1 = extrap(m);
    std::complex<double> e0 = extrap(m - 1);
    EndpointEstimate est{e1, std::abs(e1 - e0), n};
    if (est.error_bound > tol)
        throw resolution_error("endpoint not resolved at depth " + std::to_string(n) +
                               ": error bound " + std::to_string(est.error_bound) +
                               " exceeds tolerance");
    return est;
}

// Forward itinerary (s_0,...,s_{n-1}) with E^j(z) in P(s_j).
struct ItineraryResult {
    std::vector<long long> symbols;
    bool escaped_to_fatou = false;
    int fatou_step = -1;
    bool truncated = false;  // symbols left the representable regime
};

inline ItineraryResult itinerary_of(const Params& p, std::complex<double> z, int n) {
    ItineraryResult res;
    RealDominantComplex w = rdc_from_complex(p, z);
    for (int j = 0; j < n; ++j) {
        double v = tower_value(p, w.magnitude);
        try {
            if (v <= kHardwareMax) {
                std::complex<double> zc = rdc_to_complex(p, w);
                if (zc.real() < p.beta) {
                    res.escaped_to_fatou = true;
                    res.fatou_step = j;
                    return res;
                }
                res.symbols.push_back(Strip::of_im(zc.imag()).k);
            } else {
                // real-dominant regime: the imaginary part gives the strip
                res.symbols.push_back(Strip::of_im(rdc_im(p, w)).k);
            }
            w = step_orbit(p, w);
        } catch (const std::range_error&) {
            res.truncated = true;  // strip index itself beyond integer range
            return res;
        }
    }
    return res;
}

struct MembershipVerdict {
    bool in = false;
    int violation_k = -1;
    std::string reason;
};

// Horizon-certified membership in X(x0, psi): Re z >= beta at k = 0, then for
// 1 <= k <= k_max both Re E^k(z) > E^k(x0) and |Im E^k(z)| < psi(Re E^k(z)).
inline MembershipVerdict in_X(const Params& p, const GaugeProfile& psi, std::complex<double> z,
                              int k_max) {
    if (k_max < 1) throw std::domain_error("in_X: k_max must be >= 1");
    if (z.real() < p.beta) return {false, 0, "Re z < beta (attracting basin half-plane)"};
    RealDominantComplex w = rdc_from_complex(p, z);
    TowerReal xk = tower_from_double(p, p.x0);
    for (int k = 1; k <= k_max; ++k) {
        try {
            w = step_orbit(p, w);
        } catch (const std::range_error& e) {
            return {false, k, std::string("representation regime violation: ") + e.what()};
        }
        xk = tower_exp(p, xk);
        TowerReal re;
        double im;
        try {
            re = rdc_re(p, w);
            im = rdc_im(p, w);
        } catch (const std::range_error& e) {
            return {false, k, std::string("representation regime violation: ") + e.what()};
        }
        if (std::fabs(w.angle) > kPi / 2.0 || !(xk < re))
            return {false, k, "Re E^k(z) <= E^k(x0)"};
        TowerReal pw = psi_of_tower(psi, p, re);
        if (!(tower_from_double(p, std::fabs(im)) < pw))
            return {false, k, "|Im E^k(z)| >= psi(Re E^k(z))"};
    }
    return {true, -1, ""};
}

struct InteriorCertificate {
    bool found = false;
    double eps = 0.0;
    int k = 0;
};

// Finite search for an interior certificate: some eps and k with
// E^k(z) in X(x0, L^eps) at the given horizon.  Failure claims nothing.
inline InteriorCertificate certify_hair_interior(const Params& p, const SchroederFn& f,
                                                 std::complex<double> z, int k_max,
                                                 int horizon = 6) {
    const double eps_grid[] = {1.0, 0.5, 0.25, 0.125};
    for (double eps : eps_grid) {
        GaugeProfile psi = GaugeProfile::frac_iter_width(eps, &f);
        RealDominantComplex w = rdc_from_complex(p, z);
        for (int k = 0; k <= k_max; ++k) {
            if (rdc_is_hardware(p, w)) {
                MembershipVerdict v = in_X(p, psi, rdc_to_complex(p, w), horizon);
                if (v.in) return {true, eps, k};
            }
            try {
                w = step_orbit(p, w);
            } catch (const std::range_error&) {
                break;
            }
        }
    }
    return {};
}

}  // namespace hairlab

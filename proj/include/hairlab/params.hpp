#pragma once

// Parameter block for the exponential family E(z) = lambda * e^z with
// 0 < lambda < 1/e, plus the map itself and its inverse branches.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hairlab {

inline constexpr double kPi = std::numbers::pi;

// Magnitudes above this are handed to tower arithmetic (see tower.hpp).
inline constexpr double kHardwareMax = 1e15;

struct Params {
    double lambda;   // parameter, in (0, 1/e)
    double alpha;    // attracting fixed point, < 1
    double beta;     // repelling fixed point, > 1
    double x0;       // anchor > beta, base point of the wedge construction
    double log_lambda;
    double ex0;      // E(x0), right end of the canonical tower interval

    double E_real(double x) const { return lambda * std::exp(x); }
    double L_real(double x) const { return std::log(x) - log_lambda; }
};

// Horizontal strip P(k) = { Re z >= beta, (2k-1)pi <= Im z < (2k+1)pi }.
struct Strip {
    long long k;
    static Strip of_im(double im) {
        return Strip{static_cast<long long>(std::floor((im + kPi) / (2.0 * kPi)))};
    }
    double im_low() const { return (2.0 * k - 1) * kPi; }
    double im_high() const { return (2.0 * k + 1) * kPi; }
};

// Solve lambda*e^x = x on [0,1] and [1, hi] by bisection, then Newton polish.
inline double solve_fixed_point(double lambda, double lo, double hi) {
    auto f = [&](double x) { return lambda * std::exp(x) - x; };
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm <= 0) == (flo <= 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double fx = lambda * std::exp(x) - x;
        double dfx = lambda * std::exp(x) - 1.0;
        if (dfx != 0.0) x -= fx / dfx;
    }
    return x;
}

inline Params find_fixed_points(double lambda) {
    const double inv_e = 1.0 / std::numbers::e;
    if (!(lambda > 0.0) || !(lambda < inv_e))
        throw std::domain_error("find_fixed_points: lambda must lie in (0, 1/e), got " +
                                std::to_string(lambda));
    Params p;
    p.lambda = lambda;
    p.log_lambda = std::log(lambda);
    p.alpha = solve_fixed_point(lambda, 0.0, 1.0);
    p.beta = solve_fixed_point(lambda, 1.0, -2.0 * p.log_lambda + 10.0);
    p.x0 = p.beta + 1.0;
    p.ex0 = p.E_real(p.x0);
    return p;
}

inline Params find_fixed_points(double lambda, double x0) {
    Params p = find_fixed_points(lambda);
    if (!(x0 > p.beta)) throw std::domain_error("x0 must exceed beta");
    p.x0 = x0;
    p.ex0 = p.E_real(x0);
    return p;
}

inline std::complex<double> eval_E(const Params& p, std::complex<double> z) {
    if (z.real() > 709.0)
        throw std::range_error("eval_E: exp overflow; use tower arithmetic for |Re z| this large");
    return p.lambda * std::exp(z);
}

// Branch L_s of the inverse, mapping into the strip P(s):
//   L_s(w) = ln|w| - ln lambda + i (Arg w + 2 pi s),   Arg in (-pi, pi].
inline std::complex<double> inverse_branch(const Params& p, long long s, std::complex<double> w) {
    if (w == std::complex<double>(0.0, 0.0))
        throw std::domain_error("inverse_branch: w = 0 has no preimage");
    double arg = std::atan2(w.imag(), w.real());
    if (arg <= -kPi) arg = kPi;  // principal value in (-pi, pi]
    return {std::log(std::abs(w)) - p.log_lambda, arg + 2.0 * kPi * static_cast<double>(s)};
}

}  // namespace hairlab

#pragma once

// Symbol sequences (s_0, s_1, ...) indexing hairs: a finite prefix followed
// by a deterministic tail rule.  Every representable itinerary is
// exponentially bounded, with a computable critical parameter u_s.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "params.hpp"
#include "tower.hpp"

namespace hairlab {

enum class TailKind { Periodic, Bounded, Growth };

struct Itinerary {
    std::vector<long long> prefix;
    TailKind kind = TailKind::Periodic;
    std::vector<long long> block{0};  // Periodic
    long long bound = 0;              // Bounded: symbols in [-B, B]
    std::uint64_t seed = 0;
    double t_growth = 0.0;            // Growth: s_k = round(E^k(t_growth))
    std::size_t tail_offset = 0;      // shifts applied past the prefix

    static Itinerary zeros() { return Itinerary{}; }
    static Itinerary periodic(std::vector<long long> b) {
        if (b.empty()) throw std::domain_error("periodic itinerary: empty block");
        Itinerary s; s.kind = TailKind::Periodic; s.block = std::move(b); return s;
    }
    static Itinerary bounded(long long B, std::uint64_t seed) {
        if (B < 0) throw std::domain_error("bounded itinerary: negative bound");
        Itinerary s; s.kind = TailKind::Bounded; s.bound = B; s.seed = seed; return s;
    }
    static Itinerary growth(double t) {
        Itinerary s; s.kind = TailKind::Growth; s.t_growth = t; return s;
    }
    Itinerary with_prefix(std::vector<long long> pre) const {
        Itinerary s = *this; s.prefix = std::move(pre); return s;
    }
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

inline long long itinerary_symbol(const Params& p, const Itinerary& s, std::size_t k) {
    if (k < s.prefix.size()) return s.prefix[k];
    std::size_t j = k - s.prefix.size() + s.tail_offset;
    switch (s.kind) {
        case TailKind::Periodic:
            return s.block[j % s.block.size()];
        case TailKind::Bounded: {
            if (s.bound == 0) return 0;
            std::uint64_t h = detail::splitmix64(s.seed + j);
            return static_cast<long long>(h % (2 * s.bound + 1)) - s.bound;
        }
        case TailKind::Growth: {
            double v = s.t_growth;
            for (std::size_t i = 0; i < j; ++i) {
                v = p.E_real(v);
                if (v > 9.0e18)
                    throw std::range_error("itinerary symbol exceeds integer range at index " +
                                           std::to_string(k));
            }
            if (v > 9.0e18)
                throw std::range_error("itinerary symbol exceeds integer range at index " +
                                       std::to_string(k));
            return std::llround(v);
        }
    }
    throw std::logic_error("itinerary_symbol: bad tail kind");
}

inline Itinerary shift(const Itinerary& s) {
    Itinerary r = s;
    if (!r.prefix.empty()) r.prefix.erase(r.prefix.begin());
    else ++r.tail_offset;
    return r;
}

// u_s = inf{ u >= beta : limsup |s_k| / E^k(u) < infinity }.
inline double critical_parameter(const Params& p, const Itinerary& s) {
    if (s.kind != TailKind::Growth) return p.beta;
    double t = s.t_growth;
    for (std::size_t i = 0; i < s.tail_offset; ++i) {
        if (t > 709.0) throw std::range_error("critical_parameter: shifted growth tail overflows");
        t = p.E_real(t);
    }
    return std::max(p.beta, t);
}

// ln(|s_k|) - ln(E^k(u)), computed through tower magnitudes; -inf for s_k = 0,
// +/-inf by tower comparison when both logarithms leave double range.
inline double itinerary_log_ratio(const Params& p, const Itinerary& s, double u, std::size_t k) {
    const double inf = std::numeric_limits<double>::infinity();
    TowerReal eu = tower_from_double(p, u);
    for (std::size_t i = 0; i < k; ++i) eu = tower_exp(p, eu);
    double ln_u = tower_ln(p, eu);

    double ln_s;
    TowerReal ts{};  // tower form of |s_k| when the symbol itself is out of range
    bool have_tower = false;
    if (s.kind == TailKind::Growth && k >= s.prefix.size()) {
        std::size_t j = k - s.prefix.size() + s.tail_offset;
        ts = tower_from_double(p, s.t_growth);
        for (std::size_t i = 0; i < j; ++i) ts = tower_exp(p, ts);
        ln_s = tower_ln(p, ts);
        have_tower = true;
    } else {
        long long sym = itinerary_symbol(p, s, k);
        if (sym == 0) return -inf;
        ln_s = std::log(std::fabs(static_cast<double>(sym)));
    }
    if (std::isfinite(ln_s) && std::isfinite(ln_u)) return ln_s - ln_u;
    if (!have_tower) return -inf;  // bounded symbol against an astronomic orbit
    return (ts < eu) ? -inf : (eu < ts ? inf : 0.0);
}

}  // namespace hairlab

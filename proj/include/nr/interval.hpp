#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace nr {

// ===== directed-rounded interval scalar =====
//
// Carries the enclosure [lo, hi] of every scalar that feeds a catalog margin,
// so the certified_error a report states is a bound that survived the whole
// expression, not just its leaves.  Outward rounding is done with nextafter;
// that over-widens by at most one ulp per endpoint and keeps the enclosure
// rigorous without touching the FPU rounding mode.

struct Ival {
    double lo;
    double hi;

    static Ival point(double v) { return {v, v}; }
    static Ival pm(double v, double r) { return {v - r, v + r}; }

    double mid() const { return 0.5 * (lo + hi); }
    double rad() const { return 0.5 * (hi - lo); }
};

namespace detail {
inline double dn(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
} // namespace detail

inline Ival operator+(Ival a, Ival b) { return {detail::dn(a.lo + b.lo), detail::up(a.hi + b.hi)}; }
inline Ival operator-(Ival a, Ival b) { return {detail::dn(a.lo - b.hi), detail::up(a.hi - b.lo)}; }
inline Ival operator-(Ival a) { return {-a.hi, -a.lo}; }

inline Ival operator*(Ival a, Ival b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {detail::dn(std::min(std::min(p1, p2), std::min(p3, p4))),
            detail::up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

inline Ival operator*(double c, Ival a) { return Ival::point(c) * a; }

inline Ival isqrt(Ival a) {
    // domain-clamped: callers apply this to quantities that are nonnegative
    // up to enclosure width
    const double lo = a.lo > 0.0 ? detail::dn(std::sqrt(a.lo)) : 0.0;
    const double hi = a.hi > 0.0 ? detail::up(std::sqrt(a.hi)) : 0.0;
    return {lo, hi};
}

inline Ival iabs(Ival a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

inline Ival imax(Ival a, Ival b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }
inline Ival imin(Ival a, Ival b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }

inline Ival isquare(Ival a) {
    Ival m = iabs(a);
    return {detail::dn(m.lo * m.lo), detail::up(m.hi * m.hi)};
}

/// a^p for an enclosure with a.lo > 0 (any real exponent); 2-ulp padding
/// because std::pow is not correctly rounded
inline Ival ipow_pos(Ival a, double p) {
    double lo = std::pow(a.lo, p), hi = std::pow(a.hi, p);
    if (p < 0.0) std::swap(lo, hi);
    return {detail::dn(detail::dn(lo)), detail::up(detail::up(hi))};
}

/// a / b with b.lo > 0
inline Ival idiv_pos(Ival a, Ival b) {
    return a * Ival{detail::dn(1.0 / b.hi), detail::up(1.0 / b.lo)};
}

} // namespace nr

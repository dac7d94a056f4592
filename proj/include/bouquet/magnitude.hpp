#pragma once

#include <cstdint>

#include "bouquet/interval.hpp"

namespace bouquet {

// Values above this are never materialized; a Bound is kept one level up
// instead.
inline constexpr double kLiftCap = 1e300;

// Directed-rounding primitives for F(t) = e^t - 1 and its inverse ln(t + 1).
double f_round(double t, Dir d);
double finv_round(double t, Dir d);

// The real number F^level(y). Used for quantities such as floor(F^5(3)) that
// overflow doubles but whose iterated logarithms do not. y >= 0 whenever
// level >= 1, so every F^level involved has derivative >= 1.
struct Bound {
    std::uint64_t level = 0;
    double y = 0.0;

    static Bound value(double v) { return {0, v}; }
};

// Lowest level at which the bound is still representable.
Bound normalize(Bound b, Dir d);

// F^-1 applied once / k times.
Bound finv(Bound b, Dir d);
Bound finv_k(Bound b, std::uint64_t k, Dir d);

// F^e(c) for signed e (negative e means F^-|e|).
Bound f_power(double c, std::int64_t e, Dir d);

// x such that F^L(x) bounds b in direction d; requires b.level <= L.
double at_level(Bound b, std::uint64_t L, Dir d);

// Plain-double view: a lower view saturates at kLiftCap, an upper view at +inf.
double lower_value(Bound b);
double upper_value(Bound b);

Bound max_lower(Bound a, Bound b);
Bound max_upper(Bound a, Bound b);
Bound min_lower(Bound a, Bound b);
Bound min_upper(Bound a, Bound b);

// Upper bound for (value of b) + delta, delta >= 0.
Bound add_upper(Bound b, double delta);

// Bounds for F^-1(a + b) given lower (resp. upper) bounds of a and b.
Bound sum_finv_lower(Bound a, Bound b);
Bound sum_finv_upper(Bound a, Bound b);

// Best-effort ordering for diagnostics and branch selection: -1, 0, +1,
// with 0 meaning "equal within rounding".
int compare(Bound a, Bound b);

// Enclosure [lo, hi] of a nonnegative quantity with tower-sized endpoints.
struct Magnitude {
    Bound lo;
    Bound hi;

    static Magnitude exact(double v) { return {Bound::value(v), Bound::value(v)}; }

    Interval to_interval() const { return Interval::closed(lower_value(lo), upper_value(hi)); }
};

Magnitude finv_k(const Magnitude& m, std::uint64_t k);
Magnitude hull(const Magnitude& a, const Magnitude& b);
Magnitude sup(const Magnitude& a, const Magnitude& b);
Magnitude intersect(const Magnitude& a, const Magnitude& b);

// F^-1(entry + v), the backward step of the model map.
Magnitude backward_step(const Magnitude& entry, const Magnitude& v);

// Threshold tests on the plain-double view.
bool certainly_greater(const Magnitude& m, double thr);
bool certainly_at_most(const Magnitude& m, double thr);

// Every value of a is <= (resp. >) every value of b.
bool certainly_le(const Magnitude& a, const Magnitude& b);
bool certainly_gt(const Magnitude& a, const Magnitude& b);

}  // namespace bouquet

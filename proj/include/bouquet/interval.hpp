#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace bouquet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Dir { Down, Up };

// Outward nudge after a libm call. Two ulps covers the error bound of
// glibc's exp/log/log1p/expm1.
inline double nudge(double x, Dir d) {
    if (std::isnan(x)) return x;
    const double to = d == Dir::Down ? -kInf : kInf;
    return std::nextafter(std::nextafter(x, to), to);
}

inline double down(double x) { return nudge(x, Dir::Down); }
inline double up(double x) { return nudge(x, Dir::Up); }

// Enclosure [lo, hi] of an extended nonnegative real. Open flags mark
// endpoints known to be excluded, so strict thresholds can be decided at a
// boundary value.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;

    static Interval point(double x) { return {x, x, false, false}; }
    static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }

    double width() const { return hi - lo; }
    double mid() const {
        if (!std::isfinite(hi)) return lo;
        return 0.5 * (lo + hi);
    }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    bool contains(double x) const {
        const bool above = lo_open ? x > lo : x >= lo;
        const bool below = hi_open ? x < hi : x <= hi;
        return above && below;
    }

    // Every value in the enclosure is > thr.
    bool certainly_greater(double thr) const { return lo > thr || (lo == thr && lo_open); }
    // Every value is <= thr.
    bool certainly_at_most(double thr) const { return hi <= thr; }
    // Every value is < thr.
    bool certainly_less(double thr) const { return hi < thr || (hi == thr && hi_open); }

    bool operator==(const Interval&) const = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo || (a.lo == b.lo && a.lo_open)) {
        r.lo = a.lo;
        r.lo_open = a.lo_open;
    } else {
        r.lo = b.lo;
        r.lo_open = b.lo_open;
    }
    if (a.hi < b.hi || (a.hi == b.hi && a.hi_open)) {
        r.hi = a.hi;
        r.hi_open = a.hi_open;
    } else {
        r.hi = b.hi;
        r.hi_open = b.hi_open;
    }
    return r;
}

// Three-valued answer; Unknown carries the enclosure that straddled the
// threshold.
struct TriBool {
    enum class Value { False, True, Unknown };

    Value value = Value::Unknown;
    std::optional<Interval> evidence;

    static TriBool yes() { return {Value::True, std::nullopt}; }
    static TriBool no() { return {Value::False, std::nullopt}; }
    static TriBool unknown(std::optional<Interval> ev = std::nullopt) { return {Value::Unknown, ev}; }
    static TriBool from(bool b) { return b ? yes() : no(); }

    bool is_true() const { return value == Value::True; }
    bool is_false() const { return value == Value::False; }
    bool is_unknown() const { return value == Value::Unknown; }
};

std::string to_string(const TriBool& b);

}  // namespace bouquet

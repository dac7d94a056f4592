#include "bouquet/magnitude.hpp"

#include <algorithm>
#include <cmath>

namespace bouquet {

double f_round(double t, Dir d) {
    if (t == 0.0) return 0.0;
    return nudge(std::expm1(t), d);
}

double finv_round(double t, Dir d) {
    if (t == 0.0) return 0.0;
    const double r = nudge(std::log1p(t), d);
    return d == Dir::Down ? std::max(r, 0.0) : r;
}

namespace {

long double nudge_ld(long double x, Dir d) {
    const long double to = d == Dir::Down ? -HUGE_VALL : HUGE_VALL;
    return std::nextafter(std::nextafter(x, to), to);
}

double to_double(long double x, Dir d) {
    const auto r = static_cast<double>(x);
    if (d == Dir::Up && static_cast<long double>(r) < x) return std::nextafter(r, kInf);
    if (d == Dir::Down && static_cast<long double>(r) > x) return std::nextafter(r, -kInf);
    return r;
}

}  // namespace

// Lowering runs in extended precision and rounds outward to double once.
Bound normalize(Bound b, Dir d) {
    long double x = b.y;
    bool lowered = false;
    while (b.level > 0) {
        const long double z = x == 0.0L ? 0.0L : nudge_ld(std::expm1l(x), d);
        if (!(to_double(z, d) <= kLiftCap)) break;
        x = z;
        --b.level;
        lowered = true;
    }
    if (lowered) b.y = to_double(x, d);
    return b;
}

Bound finv(Bound b, Dir d) {
    if (b.level > 0) {
        --b.level;
        return b;
    }
    return Bound::value(finv_round(b.y, d));
}

Bound finv_k(Bound b, std::uint64_t k, Dir d) {
    const std::uint64_t drop = std::min(k, b.level);
    b.level -= drop;
    k -= drop;
    for (; k > 0 && b.y != 0.0; --k) b.y = finv_round(b.y, d);
    return b;
}

Bound f_power(double c, std::int64_t e, Dir d) {
    if (e >= 0) return normalize(Bound{static_cast<std::uint64_t>(e), c}, d);
    return finv_k(Bound::value(c), static_cast<std::uint64_t>(-e), d);
}

double at_level(Bound b, std::uint64_t L, Dir d) {
    double x = b.y;
    for (std::uint64_t l = b.level; l < L; ++l) x = finv_round(x, d);
    for (std::uint64_t l = L; l < b.level; ++l) x = f_round(x, d);
    return x;
}

double lower_value(Bound b) {
    b = normalize(b, Dir::Down);
    return b.level == 0 ? b.y : kLiftCap;
}

double upper_value(Bound b) {
    b = normalize(b, Dir::Up);
    return b.level == 0 ? b.y : kInf;
}

namespace {

template <class Pick>
Bound combine(Bound a, Bound b, Dir d, Pick pick) {
    const std::uint64_t L = std::max(a.level, b.level);
    return normalize(Bound{L, pick(at_level(a, L, d), at_level(b, L, d))}, d);
}

}  // namespace

Bound max_lower(Bound a, Bound b) {
    return combine(a, b, Dir::Down, [](double x, double y) { return std::max(x, y); });
}
Bound max_upper(Bound a, Bound b) {
    return combine(a, b, Dir::Up, [](double x, double y) { return std::max(x, y); });
}
Bound min_lower(Bound a, Bound b) {
    return combine(a, b, Dir::Down, [](double x, double y) { return std::min(x, y); });
}
Bound min_upper(Bound a, Bound b) {
    return combine(a, b, Dir::Up, [](double x, double y) { return std::min(x, y); });
}

Bound add_upper(Bound b, double delta) {
    if (delta <= 0.0) return b;
    if (b.level == 0) return normalize(Bound::value(up(b.y + delta)), Dir::Up);
    // F^L(y) + delta <= F^L(y + log1p(delta e^-y)) for L >= 1.
    const double inc = up(std::log1p(up(delta * up(std::exp(-b.y)))));
    return normalize(Bound{b.level, up(b.y + inc)}, Dir::Up);
}

Bound sum_finv_upper(Bound a, Bound b) {
    a = normalize(a, Dir::Up);
    b = normalize(b, Dir::Up);
    if (a.level == 0 && b.level == 0) return Bound::value(finv_round(up(a.y + b.y), Dir::Up));
    // ln(1 + a + b) <= ln(e^la + e^lb) with la = F^-1(a), lb = F^-1(b).
    const Bound la = finv(a, Dir::Up);
    const Bound lb = finv(b, Dir::Up);
    const std::uint64_t L = std::max(la.level, lb.level);
    const double xa = at_level(la, L, Dir::Up);
    const double xb = at_level(lb, L, Dir::Up);
    const double M = std::max(xa, xb);
    const double m = std::min(xa, xb);
    // Values at level L differ by at least M - m.
    const double gap = std::max(0.0, down(M - m));
    const double delta = up(std::log1p(up(std::exp(-gap))));
    return add_upper(Bound{L, M}, delta);
}

Bound sum_finv_lower(Bound a, Bound b) {
    a = normalize(a, Dir::Down);
    b = normalize(b, Dir::Down);
    if (a.level == 0 && b.level == 0) return Bound::value(finv_round(down(a.y + b.y), Dir::Down));
    const Bound la = finv(a, Dir::Down);
    const Bound lb = finv(b, Dir::Down);
    if (la.level == 0 && lb.level == 0) {
        const double M = std::max(la.y, lb.y);
        const double m = std::min(la.y, lb.y);
        // ln(e^M + e^m - 1) = M + log1p(e^(m-M) - e^-M)
        const double inner = std::max(0.0, down(down(std::exp(m - M)) - up(std::exp(-M))));
        return normalize(Bound::value(down(M + down(std::log1p(inner)))), Dir::Down);
    }
    return max_lower(la, lb);
}

int compare(Bound a, Bound b) {
    const std::uint64_t L = std::max(a.level, b.level);
    const double xa_lo = at_level(a, L, Dir::Down);
    const double xa_hi = at_level(a, L, Dir::Up);
    const double xb_lo = at_level(b, L, Dir::Down);
    const double xb_hi = at_level(b, L, Dir::Up);
    if (xa_hi < xb_lo) return -1;
    if (xb_hi < xa_lo) return 1;
    return 0;
}

Magnitude finv_k(const Magnitude& m, std::uint64_t k) {
    return {finv_k(m.lo, k, Dir::Down), finv_k(m.hi, k, Dir::Up)};
}

Magnitude hull(const Magnitude& a, const Magnitude& b) {
    return {min_lower(a.lo, b.lo), max_upper(a.hi, b.hi)};
}

Magnitude sup(const Magnitude& a, const Magnitude& b) {
    return {max_lower(a.lo, b.lo), max_upper(a.hi, b.hi)};
}

Magnitude intersect(const Magnitude& a, const Magnitude& b) {
    return {max_lower(a.lo, b.lo), min_upper(a.hi, b.hi)};
}

Magnitude backward_step(const Magnitude& entry, const Magnitude& v) {
    return {sum_finv_lower(entry.lo, v.lo), sum_finv_upper(entry.hi, v.hi)};
}

bool certainly_greater(const Magnitude& m, double thr) { return lower_value(m.lo) > thr; }

bool certainly_at_most(const Magnitude& m, double thr) { return upper_value(m.hi) <= thr; }

bool certainly_le(const Magnitude& a, const Magnitude& b) {
    const std::uint64_t L = std::max(a.hi.level, b.lo.level);
    return at_level(a.hi, L, Dir::Up) <= at_level(b.lo, L, Dir::Down);
}

bool certainly_gt(const Magnitude& a, const Magnitude& b) {
    const std::uint64_t L = std::max(a.lo.level, b.hi.level);
    return at_level(a.lo, L, Dir::Down) > at_level(b.hi, L, Dir::Up);
}

}  // namespace bouquet

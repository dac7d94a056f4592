// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bouquet/model.hpp"
#include "bouquet/plane.hpp"
#include "bouquet/stratification.hpp"
#include "bouquet/verify.hpp"

using namespace bouquet;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

long double F(long double t) { return std::expm1l(t); }

long double Finv_k(std::uint64_t k, long double t) {
    for (std::uint64_t i = 0; i < k; ++i) t = std::log1pl(t);
    return t;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(lo) < 0.0) == (f(mid) < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

RunConfig cfg;

Outcome prop1() {
    Outcome o;
    double margin_lib = kInf, margin_ref = kInf;
    for (std::uint64_t k = 1; k <= 20; ++k) {
        for (int i = 0; i < 40; ++i) {
            const double t = std::pow(10.0, 2.0 * i / 39.0);
            margin_lib = std::min(margin_lib, f_inv_k_enclosure(k, t).lo - f_inv_k_enclosure(k + 1, t).hi);
            margin_lib = std::min(margin_lib, f_inv_k_enclosure(k, t - 1.0).lo - (f_inv_k_enclosure(k, t).hi - 1.0));
            const long double a = Finv_k(k, t) - Finv_k(k + 1, t);
            const long double b = Finv_k(k, t - 1.0L) - (Finv_k(k, t) - 1.0L);
            margin_ref = std::min(margin_ref, static_cast<double>(std::min(a, b)));
        }
    }
    o.require(margin_lib > 1e-9, "certified margin " + num(margin_lib));
    o.require(margin_ref > 1e-9, "oracle margin " + num(margin_ref));
    o.detail = o.ok ? "800 grid points, min certified margin " + num(margin_lib) : o.detail;
    return o;
}

Outcome sandwich() {
    Outcome o;
    std::mt19937_64 rng(cfg.seed);
    int n = 0;
    while (n < 120) {
        const SymbolSeq s = random_sequence(rng);
        const Interval ts = t_star(s);
        if (!ts.finite()) continue;
        ++n;
        const Interval tm = t_min(s, cfg).enclosure;
        o.require(tm.lo >= ts.lo - 1e-6 && tm.hi <= ts.hi + 1.0 + 1e-6,
                  "t_min outside [t*, t*+1] for sample " + std::to_string(n));
    }
    if (o.ok) o.detail = std::to_string(n) + " sequences";
    return o;
}

Outcome monotonicity() {
    Outcome o;
    std::mt19937_64 rng(cfg.seed + 1);
    int pairs = 0;
    while (pairs < 120) {
        const SymbolSeq big = random_sequence(rng);
        const SymbolSeq small = random_dominated(big, rng);
        if (!dominated_by(small, big).is_true()) continue;
        ++pairs;
        o.require(t_min(small, cfg).enclosure.lo <= t_min(big, cfg).enclosure.hi + 1e-6,
                  "t_min order broken at pair " + std::to_string(pairs));
        o.require(t_star(small).lo <= t_star(big).hi + 1e-6, "t_star order broken at pair " + std::to_string(pairs));
    }
    if (o.ok) o.detail = std::to_string(pairs) + " dominated pairs";
    return o;
}

Outcome anchors() {
    Outcome o;
    const double root = bisect([](double t) { return std::exp(t) - t - 2.0; }, 0.0, 2.0);
    const double a = t_min(SymbolSeq({}, ConstTail{1}), cfg).enclosure.mid();
    const double b = t_min(SymbolSeq({0, 5}, ConstTail{0}), cfg).enclosure.mid();
    const double c = t_star(SymbolSeq({}, ConstTail{1})).mid();
    o.require(std::fabs(root - 1.146193) < 1e-6, "bisection oracle " + num(root));
    o.require(std::fabs(a - root) < 1e-6, "t_min(Const(1)) = " + num(a));
    o.require(std::fabs(b - std::log(6.0)) < 1e-6, "t_min([0,5], Const(0)) = " + num(b));
    o.require(std::fabs(c - std::log(2.0)) < 1e-6, "t_star(Const(1)) = " + num(c));
    if (o.ok) o.detail = "t_min(Const(1)) = " + num(a);
    return o;
}

Outcome floor_interval() {
    Outcome o;
    std::mt19937_64 rng(cfg.seed + 2);
    int samples = 0;
    while (samples < 200) {
        const std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 4);
        const std::uint64_t j = rng() % 8;
        const std::uint64_t k = 1 + rng() % (j + 1);
        long double ref = c;
        for (std::uint64_t e = 0; e < j + 1 - k; ++e) ref = F(ref);
        if (!(ref < 1e12L)) continue;
        ++samples;
        const Interval p = pot(SymbolSeq({}, FExpTail{c, 0}), j, k);
        // Two ulps: an outward-rounded double bound cannot equal an irrational value.
        const long double slack = 2.0L * std::nextafter(static_cast<double>(ref), kInf) - 2.0L * static_cast<double>(ref);
        o.require(static_cast<long double>(p.lo) > ref - 1.0L && static_cast<long double>(p.hi) <= ref + slack,
                  "pot(FExp(" + std::to_string(c) + "), " + std::to_string(j) + ", " + std::to_string(k) + ")");
    }
    if (o.ok) o.detail = std::to_string(samples) + " samples";
    return o;
}

struct WitnessCase {
    SymbolSeq base;
    AlphaIndex alpha;
    std::uint64_t N;
};

struct Family {
    WitnessCase wc;
    std::vector<WitnessReport> reps;
};

std::vector<Family> families;

Outcome witness_suite() {
    Outcome o;
    const std::vector<WitnessCase> cases{
        {SymbolSeq({}, FExpTail{10, 0}), AlphaIndex({0}), 1},
        {SymbolSeq({2, 7}, FExpTail{10, 0}), AlphaIndex({0, 1}), 2},
        {SymbolSeq({}, FExpTail{3, 0}), AlphaIndex({0, 1, 2}), 3},
    };
    double worst_gap = 0.0;
    std::size_t total = 0;
    for (const auto& wc : cases) {
        const double d = static_cast<double>(wc.alpha.dom());
        const std::string tag = "dom " + std::to_string(wc.alpha.dom());
        std::vector<WitnessReport> reps;
        try {
            reps = nowhere_dense_demo(endpoint_of(wc.base, cfg), wc.alpha, wc.N, 5, cfg);
        } catch (const std::exception& e) {
            o.require(false, tag + ": " + e.what());
            continue;
        }
        total += reps.size();
        const double base_h = t_min(wc.base, cfg).enclosure.mid();
        double prev_gap = kInf;
        for (const auto& r : reps) {
            const std::string at = tag + " m=" + std::to_string(r.m);
            o.require(r.claim1_margin.lo > 3 * d - 1, "claim 1 at " + at);
            o.require(r.claim2_bound.hi <= 3 * d, "claim 2 at " + at);
            o.require((3 * d + 2 - 1) - r.claim2_bound.hi >= 1.0, "exclusion margin at " + at);
            // Entries past m follow min(|s_n|, floor F^(n-m)(3 dom)) wherever both fit in a long double.
            for (std::uint64_t n = r.m + 1; n <= r.m + 3; ++n) {
                long double cap = 3 * d;
                for (std::uint64_t e = 0; e < n - r.m; ++e) cap = F(cap);
                const EntryValue bv = wc.base.at(n), wv = r.witness.at(n);
                const auto* bn = std::get_if<std::int64_t>(&bv);
                const auto* wn = std::get_if<std::int64_t>(&wv);
                if (!(cap < 1e15L)) break;
                if (!bn) {
                    o.require(wn && *wn == static_cast<std::int64_t>(std::floor(cap)), "witness entry at " + at);
                    continue;
                }
                o.require(wn && *wn == std::min<std::int64_t>(std::llabs(*bn), static_cast<std::int64_t>(std::floor(cap))),
                          "witness entry at " + at);
            }
            const double gap = std::fabs(base_h - r.endpoint_height.mid());
            o.require(gap <= prev_gap + 1e-12, "height gap grew at " + at);
            o.require(in_X(wc.alpha, endpoint_of(r.witness, cfg), cfg).is_true(), "witness outside X_alpha at " + at);
            prev_gap = gap;
        }
        o.require(prev_gap < 1e-4, "final gap " + num(prev_gap) + " for " + tag);
        worst_gap = std::max(worst_gap, prev_gap);
        families.push_back({wc, std::move(reps)});
    }
    if (o.ok) o.detail = std::to_string(total) + " witnesses, largest final gap " + num(worst_gap);
    return o;
}

Outcome closure() {
    Outcome o;
    o.require(!families.empty(), "no witness families");
    std::size_t checks = 0;
    for (const auto& fam : families) {
        const std::uint64_t top = fam.reps.empty() ? 0 : fam.reps.back().m + 2;
        for (std::uint64_t n = 0; n <= top; ++n) {
            double R = kInf;
            for (const auto& r : fam.reps) R = std::min(R, t_star(r.witness, n).lo);
            if (!std::isfinite(R)) continue;
            ++checks;
            const SymbolSeq sh = shift(fam.wc.base, n);
            const std::string at = "dom " + std::to_string(fam.wc.alpha.dom()) + " shift " + std::to_string(n);
            o.require(t_min(sh, cfg).enclosure.hi >= R - 1e-6, "t_min of limit at " + at);
            o.require(t_star(sh).hi >= R - 1.0 - 1e-6, "t_star of limit at " + at);
        }
    }
    if (o.ok) o.detail = std::to_string(checks) + " shift checks";
    return o;
}

Outcome extension() {
    Outcome o;
    std::mt19937_64 rng(cfg.seed + 3);
    const std::vector<Rational> rates{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    for (int i = 0; i < 25; ++i) {
        std::vector<std::int64_t> prefix(rng() % 4);
        for (auto& v : prefix) v = static_cast<std::int64_t>(rng() % 19) - 9;
        const SymbolSeq s = (rng() & 1) ? SymbolSeq(prefix, FExpTail{3 + static_cast<std::int64_t>(rng() % 10), 0})
                                        : SymbolSeq(prefix, LinExpTail{rates[rng() % rates.size()], prefix.size()});
        const ModelPoint x = endpoint_of(s, cfg);
        const std::string at = "member " + std::to_string(i);
        try {
            AlphaIndex alpha;
            for (std::uint64_t d = rng() % 3; d > 0; --d) alpha = alpha.extended(find_extension(alpha, x, rng() % 4, cfg));
            o.require(in_X(alpha, x, cfg).is_true(), at + " not in X_alpha");
            const std::uint64_t floor = rng() % 5;
            const std::uint64_t N = find_extension(alpha, x, floor, cfg);
            o.require(in_X(alpha.extended(N), x, cfg).is_true(), at + " extension not certified");
            // Oracle: every shifted potential from N on clears the new threshold.
            const double thr = AlphaIndex::threshold(alpha.dom());
            for (std::uint64_t n = N; n < N + 6; ++n)
                o.require(!t_star(s, n).certainly_at_most(thr), at + " shift " + std::to_string(n) + " below threshold");
        } catch (const std::exception& e) {
            o.require(false, at + ": " + e.what());
        }
    }
    if (o.ok) o.detail = "25 members";
    return o;
}

Outcome plane() {
    Outcome o;
    const CycleInfo p = find_cycle(ComplexPoint(-1.0), 1, ComplexPoint(0.1));
    o.require(std::abs(p.points.at(0).value()) < 1e-5, "a=-1 fixed point " + num(p.points.at(0).re));
    o.require(std::abs(p.multiplier.value() - 1.0) < 1e-5, "a=-1 multiplier");
    o.require(p.kind == CycleInfo::Kind::Parabolic, "a=-1 kind " + to_string(p.kind));

    const double x = bisect([](double t) { return std::exp(t) - 2.0 - t; }, -3.0, 0.0);
    const CycleInfo q = find_cycle(ComplexPoint(-2.0), 1, ComplexPoint(-1.0));
    o.require(std::fabs(x + 1.841406) < 1e-5, "bisection oracle " + num(x));
    o.require(std::abs(q.points.at(0).value() - x) < 1e-5, "a=-2 fixed point " + num(q.points.at(0).re));
    o.require(std::abs(q.multiplier.value() - std::exp(x)) < 1e-5, "a=-2 multiplier " + num(q.multiplier.re));
    o.require(std::fabs(std::exp(x) - 0.158594) < 1e-5, "multiplier oracle");
    o.require(q.kind == CycleInfo::Kind::Attracting, "a=-2 kind " + to_string(q.kind));

    const Viewport vp{-2.0, 4.0, -std::numbers::pi, std::numbers::pi, 200, 200};
    const EscapeImage a = render_escape(ComplexPoint(-1.0), vp, 100, kEscapeGuard);
    const EscapeImage b = render_escape(ComplexPoint(-1.0), vp, 100, kEscapeGuard);
    o.require(a.summary.escaped_pixels > 0 && a.summary.retained_pixels > 0, "render lacks escaped or retained pixels");
    o.require(a.summary.hash == b.summary.hash && a.ppm() == b.ppm(), "render not reproducible");
    if (o.ok)
        o.detail = "render escaped " + std::to_string(a.summary.escaped_pixels) + " retained " +
                   std::to_string(a.summary.retained_pixels);
    return o;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"inverse_iterate_inequalities", prop1},
        {"sandwich", sandwich},
        {"monotonicity", monotonicity},
        {"exact_anchors", anchors},
        {"floor_interval", floor_interval},
        {"witness_suite", witness_suite},
        {"closure_property", closure},
        {"find_extension", extension},
        {"plane_anchors", plane},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.ok ? 0 : 1;
        std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool fast = secs < 60.0;
    failures += fast ? 0 : 1;
    std::printf("%s runtime: %.2f s\n", fast ? "PASS" : "FAIL", secs);
    return failures == 0 ? 0 : 1;
}

#include "bouquet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "bouquet/errors.hpp"
#include "bouquet/json_io.hpp"
#include "bouquet/model.hpp"
#include "bouquet/plane.hpp"
#include "bouquet/stratification.hpp"

namespace bouquet {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::int64_t shrink(std::int64_t v, std::mt19937_64& rng) {
    const std::int64_t mag = pick(rng, 0, v < 0 ? -v : v);
    return (rng() & 1) ? mag : -mag;
}

const Rational kRates[] = {Rational(1), Rational(2), Rational(1, 2), Rational(3, 2), Rational(1, 3)};

// Accumulates the smallest slack over the cases of one check.
class Tracker {
public:
    explicit Tracker(std::string name) { r_.name = std::move(name); r_.margin = kInf; }

    void observe(double margin, const std::string& what) {
        ++r_.cases;
        if (margin < r_.margin || std::isnan(margin)) {
            r_.margin = margin;
            if (!(margin >= 0.0) && !failed_) {
                r_.detail = what;
                failed_ = true;
            }
        }
    }
    // Strictly positive slack required.
    void observe_strict(double margin, const std::string& what) {
        observe(margin, what);
        if (!(margin > 0.0) && !failed_) {
            r_.detail = what;
            failed_ = true;
        }
    }
    void fail(const std::string& what) {
        ++r_.cases;
        if (!failed_) r_.detail = what;
        failed_ = true;
        r_.margin = std::min(r_.margin, -1.0);
    }

    CheckResult done() {
        r_.passed = !failed_ && r_.cases > 0;
        if (r_.cases == 0 && r_.detail.empty()) r_.detail = "no cases evaluated";
        if (r_.margin == kInf) r_.margin = 0.0;
        return r_;
    }

private:
    CheckResult r_;
    bool failed_ = false;
};

// Runs body, turning any escaping exception into a failure of the check.
CheckResult guarded(const std::string& name, const std::function<void(Tracker&)>& body) {
    Tracker t(name);
    try {
        body(t);
    } catch (const std::exception& e) {
        t.fail(std::string("exception: ") + e.what());
    }
    return t.done();
}

std::string describe(const SymbolSeq& s) { return seq_to_json(s).dump(); }

void prop1(Tracker& t) {
    for (std::uint64_t k = 1; k <= 20; ++k) {
        for (int i = 0; i < 40; ++i) {
            const double tt = std::pow(10.0, 2.0 * i / 39.0);
            const Interval a = f_inv_k_enclosure(k, tt);
            const Interval b = f_inv_k_enclosure(k + 1, tt);
            const Interval c = f_inv_k_enclosure(k, tt - 1.0);
            const std::string at = "k=" + std::to_string(k) + " t=" + std::to_string(tt);
            t.observe_strict(a.lo - b.hi, "F^-k(t) > F^-(k+1)(t) fails at " + at);
            t.observe_strict(c.lo - (a.hi - 1.0), "F^-k(t-1) > F^-k(t)-1 fails at " + at);
        }
    }
}

void anchors(Tracker& t, const RunConfig& cfg) {
    // Root of e^t = t + 2 by bisection.
    double lo = 0.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::exp(mid) - mid - 2.0 < 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    auto expect = [&](const TMinResult& r, double want, const std::string& what) {
        t.observe(1e-6 - std::fabs(r.enclosure.mid() - want), what + " value");
        t.observe(cfg.tolerance - r.enclosure.width(), what + " did not converge to tolerance");
    };
    expect(t_min(SymbolSeq({}, ConstTail{1}), cfg), root, "t_min(Const(1))");
    expect(t_min(SymbolSeq({0, 5}, ConstTail{0}), cfg), std::log(6.0), "t_min([0,5],Const(0))");
    const Interval ts = t_star(SymbolSeq({}, ConstTail{1}));
    t.observe(1e-6 - std::fabs(ts.mid() - std::log(2.0)), "t_star(Const(1))");

    const auto kind = [&](double tt, std::int64_t c) {
        return classify(ModelPoint(tt, SymbolSeq({}, ConstTail{c})), cfg.budget, cfg);
    };
    const Classification c1 = kind(std::log(2.0), 1);
    t.observe(c1.kind == Classification::Kind::NotInJ && c1.first_failing_step == 2 ? 0.0 : -1.0,
              "classify(Const(1), ln 2) should be NotInJ(2)");
    t.observe(kind(0.0, 0).kind == Classification::Kind::NonEscaping ? 0.0 : -1.0,
              "classify(Const(0), 0) should be InJ_NonEscaping");
    t.observe(kind(2.0, 0).kind == Classification::Kind::EscapeCertified ? 0.0 : -1.0,
              "classify(Const(0), 2) should be InJ_EscapeCertified");
}

void floor_interval(Tracker& t, std::mt19937_64& rng) {
    int taken = 0;
    while (taken < 200) {
        const std::int64_t c = pick(rng, 1, 5);
        const std::uint64_t j = static_cast<std::uint64_t>(pick(rng, 0, 6));
        const std::int64_t e = std::min<std::int64_t>(pick(rng, 0, 2), static_cast<std::int64_t>(j));
        const Bound ref_hi_b = f_power(static_cast<double>(c), e, Dir::Up);
        const double ref_hi = upper_value(ref_hi_b);
        if (!(ref_hi < 1e12)) continue;
        ++taken;
        std::vector<std::int64_t> prefix(static_cast<std::size_t>(pick(rng, 0, 3)));
        for (auto& v : prefix) v = pick(rng, -9, 9);
        const SymbolSeq s(prefix, FExpTail{c, 0});
        const std::uint64_t k = j + 1 - static_cast<std::uint64_t>(e);
        const Interval p = pot(s, prefix.size() + j, k);
        const std::string at = describe(s) + " j=" + std::to_string(j) + " k=" + std::to_string(k);
        t.observe_strict(p.lo - (ref_hi - 1.0), "pot below F^(j+1-k)(c) - 1 at " + at);
        const double slack = 8.0 * (std::nextafter(ref_hi, kInf) - ref_hi);
        t.observe(ref_hi + slack - p.hi, "pot above F^(j+1-k)(c) at " + at);
    }
}

void nesting_bounds(Tracker& t, const RunConfig& cfg, std::mt19937_64& rng) {
    for (int i = 0; i < 30; ++i) {
        const SymbolSeq s = random_sequence(rng);
        const Interval ts = t_star(s);
        Interval prev = nesting_lower_bound(s, 0);
        for (std::uint64_t n = 1; n <= 25; ++n) {
            const Interval u = nesting_lower_bound(s, n);
            const std::string at = describe(s) + " n=" + std::to_string(n);
            t.observe(u.lo - prev.lo + cfg.tolerance, "u_n decreased at " + at);
            t.observe(ts.hi + 1.0 + cfg.tolerance - u.lo, "u_n above t*+1 at " + at);
            prev = u;
        }
    }
}

void shift_identity(Tracker& t, std::mt19937_64& rng) {
    for (int i = 0; i < 60; ++i) {
        const SymbolSeq s = random_sequence(rng);
        const auto n = static_cast<std::uint64_t>(pick(rng, 0, 8));
        const Interval a = t_star(s, n);
        const Interval b = t_star(shift(s, n), 0);
        t.observe(std::min(a.hi - b.lo, b.hi - a.lo), "t_star(s, n) and t_star(shift(s, n)) disjoint for " +
                                                          describe(s) + " n=" + std::to_string(n));
    }
}

void lower_semicontinuity(Tracker& t, const RunConfig& cfg, std::mt19937_64& rng) {
    for (int i = 0; i < 20; ++i) {
        const SymbolSeq s = random_sequence(rng);
        const Interval full = t_min(s, cfg).enclosure;
        Interval prev = Interval::point(0.0);
        for (std::uint64_t m = 0; m <= 30; ++m) {
            const Interval h = t_min(s.spliced(m + 1, {}, ConstTail{0}), cfg).enclosure;
            const std::string at = describe(s) + " m=" + std::to_string(m);
            t.observe(full.hi + cfg.tolerance - h.hi, "truncation above the limit at " + at);
            t.observe(h.lo - prev.lo + cfg.tolerance, "truncation heights decreased at " + at);
            prev = h;
        }
        t.observe(1e-4 - (full.hi - prev.lo), "truncations do not converge for " + describe(s));
    }
}

struct WitnessCase {
    SymbolSeq base;
    AlphaIndex alpha;
    std::uint64_t N;
};

std::vector<WitnessCase> witness_cases() {
    return {{SymbolSeq({}, FExpTail{10, 0}), AlphaIndex({0}), 1},
            {SymbolSeq({2, 7}, FExpTail{10, 0}), AlphaIndex({0, 1}), 2},
            {SymbolSeq({}, FExpTail{3, 0}), AlphaIndex({0, 1, 2}), 3}};
}

void witness_suite(Tracker& claims, Tracker& closure, const RunConfig& cfg) {
    for (const auto& wc : witness_cases()) {
        const double d = static_cast<double>(wc.alpha.dom());
        const std::string tag = "dom " + std::to_string(wc.alpha.dom()) + " base " + describe(wc.base);
        std::vector<WitnessReport> reps;
        try {
            reps = nowhere_dense_demo(endpoint_of(wc.base, cfg), wc.alpha, wc.N, 5, cfg);
        } catch (const std::exception& e) {
            claims.fail(tag + ": " + e.what());
            closure.fail(tag + ": no family");
            continue;
        }
        const Interval base_h = t_min(wc.base, cfg).enclosure;
        double prev_dist = kInf;
        double prev_gap = kInf;
        for (const auto& r : reps) {
            const std::string at = tag + " m=" + std::to_string(r.m);
            claims.observe_strict(r.claim1_margin.lo - (3 * d - 1), "claim 1 at " + at);
            claims.observe(3 * d - r.claim2_bound.hi, "claim 2 at " + at);
            claims.observe((3 * d + 1) - r.claim2_bound.hi - 1.0, "exclusion margin below 1 at " + at);
            claims.observe_strict(prev_dist - r.distance_to_base, "distance did not decrease at " + at);
            claims.observe(base_h.hi + cfg.tolerance - r.endpoint_height.hi, "witness height above base at " + at);
            const double gap = std::fabs(base_h.mid() - r.endpoint_height.mid());
            claims.observe(prev_gap + cfg.tolerance - gap, "height gap grew at " + at);
            claims.observe(in_X(wc.alpha, endpoint_of(r.witness, cfg), cfg).is_true() ? 0.0 : -1.0,
                           "witness not certified in X_alpha at " + at);
            prev_dist = r.distance_to_base;
            prev_gap = gap;
        }
        claims.observe(1e-4 - prev_gap, "final height gap too large for " + tag);

        // Limits of the family keep every lower bound the members share.
        const std::uint64_t top = reps.empty() ? 0 : reps.back().m + 2;
        for (std::uint64_t n = 0; n <= top; ++n) {
            double R = kInf;
            for (const auto& r : reps) R = std::min(R, t_star(r.witness, n).lo);
            if (!std::isfinite(R)) continue;
            const std::string at = tag + " shift " + std::to_string(n);
            const SymbolSeq sh = shift(wc.base, n);
            closure.observe(t_min(sh, cfg).enclosure.hi - (R - cfg.tolerance), "t_min of limit below R at " + at);
            closure.observe(t_star(sh).hi - (R - 1.0 - cfg.tolerance), "t_star of limit below R - 1 at " + at);
        }
    }
}

SymbolSeq random_member_base(std::mt19937_64& rng) {
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(pick(rng, 0, 3)));
    for (auto& v : prefix) v = pick(rng, -9, 9);
    if (rng() & 1) return SymbolSeq(prefix, FExpTail{pick(rng, 3, 12), 0});
    return SymbolSeq(prefix, LinExpTail{kRates[rng() % 5], prefix.size()});
}

void extensions(Tracker& ext, Tracker& nest, const RunConfig& cfg, std::mt19937_64& rng) {
    for (int i = 0; i < 25; ++i) {
        const SymbolSeq s = random_member_base(rng);
        const ModelPoint x = endpoint_of(s, cfg);
        std::string at = describe(s);
        try {
            AlphaIndex alpha;
            const auto depth = pick(rng, 0, 2);
            for (std::int64_t d = 0; d < depth; ++d)
                alpha = alpha.extended(find_extension(alpha, x, static_cast<std::uint64_t>(pick(rng, 0, 3)), cfg));
            at += " alpha size " + std::to_string(alpha.dom());
            const std::uint64_t N = find_extension(alpha, x, static_cast<std::uint64_t>(pick(rng, 0, 4)), cfg);
            const AlphaIndex longer = alpha.extended(N);
            const bool member = in_X(longer, x, cfg).is_true();
            ext.observe(member ? 0.0 : -1.0, "extension not certified for " + at);
            if (member) nest.observe(in_X(alpha, x, cfg).is_true() ? 0.0 : -1.0, "nesting fails for " + at);
        } catch (const std::exception& e) {
            ext.fail(at + ": " + e.what());
        }
    }
}

void plane_anchors(Tracker& t) {
    const CycleInfo p = find_cycle({-1.0, 0.0}, 1, {0.1, 0.0});
    t.observe(1e-6 - std::abs(p.points.at(0).value()), "a=-1 fixed point not at 0");
    t.observe(1e-6 - std::abs(p.multiplier.value() - 1.0), "a=-1 multiplier not 1");
    t.observe(p.kind == CycleInfo::Kind::Parabolic ? 0.0 : -1.0, "a=-1 not Parabolic");
    const CycleInfo q = find_cycle({-2.0, 0.0}, 1, {-2.0, 0.0});
    t.observe(1e-5 - std::abs(q.points.at(0).value() + 1.841406), "a=-2 fixed point");
    t.observe(1e-5 - std::abs(q.multiplier.value() - 0.158594), "a=-2 multiplier");
    t.observe(q.kind == CycleInfo::Kind::Attracting ? 0.0 : -1.0, "a=-2 not Attracting");

    const Orbit o = iterate({-1.0, 0.0}, {0.0, 0.0}, 3);
    t.observe(o.points.size() == 4 && std::all_of(o.points.begin(), o.points.end(),
                                                   [](const ComplexPoint& z) { return z.re == 0.0 && z.im == 0.0; })
                  ? 0.0
                  : -1.0,
              "orbit of 0 under e^z - 1");
    const Orbit big = iterate({-1.0, 0.0}, {10.0, 0.0}, 2);
    t.observe(big.escape && *big.escape >= 1 && *big.escape <= 2 ? 0.0 : -1.0, "escape marker for z=10");
    const double tau = 2.0 * std::numbers::pi;
    t.observe(itinerary({-1.0, 0.0}, {0.5, tau}, 1) == std::vector<std::int64_t>{1} ? 0.0 : -1.0, "itinerary 0.5+2 pi i");
    t.observe(itinerary({-1.0, 0.0}, {0.5, -2 * tau}, 1) == std::vector<std::int64_t>{-2} ? 0.0 : -1.0,
              "itinerary 0.5-4 pi i");
    t.observe(escape_region_A({-1.0, 0.0}, 5.0, {10.0, 0.0}, 10).is_true() ? 0.0 : -1.0, "region A at z=10");
    t.observe(escape_region_A({-1.0, 0.0}, 5.0, {0.0, 0.0}, 10).is_false() ? 0.0 : -1.0, "region A at z=0");
}

void real_axis(Tracker& closure, Tracker& mono, std::mt19937_64& rng) {
    for (int i = 0; i < 50; ++i) {
        const double a = -5.0 + 10.0 * static_cast<double>(rng() % 10001) / 10000.0;
        const double z = -5.0 + 10.0 * static_cast<double>(rng() % 10001) / 10000.0;
        const Orbit o = iterate({a, 0.0}, {z, 0.0}, 20);
        bool real = true;
        for (const auto& p : o.points) real = real && p.im == 0.0;
        const auto it = itinerary({a, 0.0}, {z, 0.0}, 20);
        real = real && std::all_of(it.begin(), it.end(), [](std::int64_t v) { return v == 0; });
        closure.observe(real ? 0.0 : -1.0, "real orbit left the axis for a=" + std::to_string(a));
    }
    for (int i = 0; i < 40; ++i) {
        const bool positive = i % 2 == 0;
        const double u = 0.05 + 4.95 * static_cast<double>(rng() % 10001) / 10000.0;
        const double x = positive ? u : -u;
        const Orbit o = iterate({-1.0, 0.0}, {x, 0.0}, 20000);
        bool increasing = true;
        for (std::size_t k = 1; k < o.points.size(); ++k)
            increasing = increasing && (o.points[k].re > o.points[k - 1].re || (!positive && o.points[k].re == 0.0));
        const std::string at = "x=" + std::to_string(x);
        mono.observe(increasing ? 0.0 : -1.0, "orbit not strictly increasing at " + at);
        if (positive) mono.observe(o.escape ? 0.0 : -1.0, "positive orbit did not escape at " + at);
        else mono.observe(1e-3 - std::fabs(o.points.back().re), "negative orbit did not approach 0 at " + at);
    }
}

void multipliers(Tracker& t) {
    const ComplexPoint params[] = {{-2.0, 0.0}, {-3.0, 0.0}, {-1.5, 0.0}, {-2.0, 0.5}, {-4.0, 1.0}, {1.0, 0.0}};
    const ComplexPoint seeds[] = {{-2.0, 0.0}, {-3.0, 0.0}, {-1.0, 0.0}, {-2.0, 0.3}, {2.0, 1.5}, {0.3, 1.3}};
    for (const auto& a : params) {
        for (const auto& z : seeds) {
            for (std::uint64_t period = 1; period <= 2; ++period) {
                CycleInfo c;
                try {
                    c = find_cycle(a, period, z);
                } catch (const NoConvergence&) {
                    continue;
                }
                double re_sum = 0.0;
                for (const auto& p : c.points) re_sum += p.re;
                const double want = std::exp(re_sum);
                t.observe(1e-8 * std::max(1.0, want) - std::fabs(std::abs(c.multiplier.value()) - want),
                          "multiplier modulus mismatch for a=" + std::to_string(a.re) + "+" + std::to_string(a.im) +
                              "i");
            }
        }
    }
}

void render_checks(Tracker& t) {
    const Viewport vp;
    const EscapeImage a = render_escape({-1.0, 0.0}, vp, 100, kEscapeGuard);
    const EscapeImage b = render_escape({-1.0, 0.0}, vp, 100, kEscapeGuard);
    t.observe(a.summary.hash == b.summary.hash && a.gray == b.gray ? 0.0 : -1.0, "render not deterministic");
    t.observe(a.summary.escaped_pixels > 0 ? 0.0 : -1.0, "no escaped pixels");
    t.observe(a.summary.retained_pixels > 0 ? 0.0 : -1.0, "no retained pixels");
    const Viewport one{9.5, 10.5, -0.5, 0.5, 1, 1};
    t.observe(render_escape({-1.0, 0.0}, one, 100, kEscapeGuard).summary.escaped_pixels == 1 ? 0.0 : -1.0,
              "single pixel at z=10 should escape");
}

void round_trips(Tracker& t, const RunConfig& cfg, std::mt19937_64& rng) {
    for (int i = 0; i < 100; ++i) {
        const SymbolSeq s = random_sequence(rng);
        t.observe(parse_seq(seq_to_json(s).dump()) == s ? 0.0 : -1.0, "descriptor round trip for " + describe(s));
    }
    const SymbolSeq w = make_witness(SymbolSeq({2, 7}, FExpTail{10, 0}), AlphaIndex({0, 1}), 4);
    t.observe(parse_seq(seq_to_json(w).dump()) == w ? 0.0 : -1.0, "witness descriptor round trip");
    for (const Interval iv : {Interval::closed(0.0, 1.5), Interval{2.0, kInf, true, false}, t_min(w, cfg).enclosure})
        t.observe(interval_from_json(json::parse(interval_to_json(iv).dump())) == iv ? 0.0 : -1.0,
                  "interval round trip");
    const AlphaIndex al({0, 3, 9});
    t.observe(alpha_from_json(alpha_to_json(al)) == al ? 0.0 : -1.0, "alpha round trip");
}

}  // namespace

SymbolSeq random_sequence(std::mt19937_64& rng) {
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(pick(rng, 0, 5)));
    for (auto& v : prefix) v = pick(rng, -20, 20);
    switch (rng() % 4) {
        case 0: return SymbolSeq(prefix, ConstTail{pick(rng, -5, 5)});
        case 1: {
            PeriodicTail p;
            p.pattern.resize(static_cast<std::size_t>(pick(rng, 1, 4)));
            for (auto& v : p.pattern) v = pick(rng, -6, 6);
            return SymbolSeq(prefix, p);
        }
        case 2: return SymbolSeq(prefix, FExpTail{pick(rng, 1, 4), 0});
        default: return SymbolSeq(prefix, LinExpTail{kRates[rng() % 5], prefix.size()});
    }
}

SymbolSeq random_dominated(const SymbolSeq& big, std::mt19937_64& rng) {
    std::vector<std::int64_t> prefix = big.prefix();
    for (auto& v : prefix) v = shrink(v, rng);
    TailRule tail = std::visit(
        [&](const auto& t) -> TailRule {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstTail>) {
                return ConstTail{shrink(t.c, rng)};
            } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                PeriodicTail p = t;
                for (auto& v : p.pattern) v = shrink(v, rng);
                return p;
            } else if constexpr (std::is_same_v<T, FExpTail>) {
                if (rng() % 4 == 0) return ConstTail{pick(rng, -1, 1)};
                return FExpTail{pick(rng, 1, t.c), t.offset};
            } else {
                Rational r = t.rate;
                for (const auto& c : kRates)
                    if (compare_scaled(c, 1, t.rate, 1) <= 0 && (rng() & 1)) r = c;
                return LinExpTail{r, t.anchor};
            }
        },
        big.tail());
    return SymbolSeq(std::move(prefix), std::move(tail), big.segments());
}

VerifyReport run_verification(const RunConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    VerifyReport rep;
    auto add = [&](CheckResult r) { rep.checks.push_back(std::move(r)); };

    add(guarded("prop1_strictness", prop1));

    {
        Tracker sandwich("sandwich");
        Tracker conv("t_min_convergence");
        try {
            for (int i = 0; i < 100; ++i) {
                const SymbolSeq s = random_sequence(rng);
                const Interval ts = t_star(s);
                if (!ts.finite()) continue;
                const TMinResult tm = t_min(s, cfg);
                const std::string at = describe(s);
                sandwich.observe(tm.enclosure.lo - (ts.lo - cfg.tolerance), "t_min below t* for " + at);
                sandwich.observe(ts.hi + 1.0 + cfg.tolerance - tm.enclosure.hi, "t_min above t*+1 for " + at);
                conv.observe(tm.converged ? cfg.tolerance - tm.enclosure.width() : -tm.enclosure.width(),
                             "t_min did not converge for " + at);
            }
        } catch (const std::exception& e) {
            sandwich.fail(e.what());
        }
        add(sandwich.done());
        add(conv.done());
    }

    add(guarded("monotonicity", [&](Tracker& t) {
        int pairs = 0;
        for (int attempt = 0; attempt < 2000 && pairs < 100; ++attempt) {
            const SymbolSeq big = random_sequence(rng);
            const SymbolSeq small = random_dominated(big, rng);
            if (!dominated_by(small, big).is_true()) continue;
            ++pairs;
            const std::string at = describe(small) + " <= " + describe(big);
            t.observe(t_min(big, cfg).enclosure.hi + cfg.tolerance - t_min(small, cfg).enclosure.hi,
                      "t_min order violated for " + at);
            t.observe(t_star(big).hi + cfg.tolerance - t_star(small).hi, "t_star order violated for " + at);
        }
        if (pairs < 100) t.fail("only " + std::to_string(pairs) + " dominated pairs certified");
    }));

    add(guarded("exact_anchors", [&](Tracker& t) { anchors(t, cfg); }));
    add(guarded("floor_interval", [&](Tracker& t) { floor_interval(t, rng); }));
    add(guarded("nesting_lower_bound", [&](Tracker& t) { nesting_bounds(t, cfg, rng); }));
    add(guarded("shift_identity", [&](Tracker& t) { shift_identity(t, rng); }));
    add(guarded("lower_semicontinuity", [&](Tracker& t) { lower_semicontinuity(t, cfg, rng); }));

    {
        Tracker claims("witness_claims");
        Tracker closure("closure_bound");
        try {
            witness_suite(claims, closure, cfg);
        } catch (const std::exception& e) {
            claims.fail(e.what());
        }
        add(claims.done());
        add(closure.done());
    }
    {
        Tracker ext("find_extension");
        Tracker nest("strata_nesting");
        extensions(ext, nest, cfg, rng);
        add(ext.done());
        add(nest.done());
    }

    add(guarded("plane_anchors", plane_anchors));
    {
        Tracker closure("real_axis_closure");
        Tracker mono("real_axis_escape");
        try {
            real_axis(closure, mono, rng);
        } catch (const std::exception& e) {
            closure.fail(e.what());
        }
        add(closure.done());
        add(mono.done());
    }
    add(guarded("multiplier_consistency", multipliers));
    add(guarded("render_determinism", render_checks));
    add(guarded("json_round_trip", [&](Tracker& t) { round_trips(t, cfg, rng); }));
    return rep;
}

nlohmann::json report_to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j = {{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
        j["margin"] = std::isfinite(c.margin) ? json(c.margin) : json(c.margin > 0 ? "inf" : "-inf");
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
    }
    return {{"passed", r.passed()}, {"checks", checks}};
}

std::string report_to_text(const VerifyReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "  cases=" << c.cases << " margin=" << c.margin;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    os << (r.passed() ? "all checks passed" : "verification FAILED") << "\n";
    return os.str();
}

}  // namespace bouquet

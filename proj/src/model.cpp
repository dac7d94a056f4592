#include "bouquet/model.hpp"

#include <algorithm>
#include <cmath>

#include "bouquet/errors.hpp"

namespace bouquet {

void RunConfig::validate() const {
    if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
    if (budget < 1) throw InvalidInput("budget must be at least 1");
}

double f_map(double t) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidInput("f_map expects a finite nonnegative argument");
    if (t > kOverflowGuard) throw OverflowGuard("F(t) requested above the overflow guard");
    return std::expm1(t);
}

double f_inv_k(std::uint64_t k, double t) {
    if (k < 1) throw InvalidInput("f_inv_k expects k >= 1");
    if (!(t >= 0.0)) throw InvalidInput("f_inv_k expects t >= 0");
    for (std::uint64_t i = 0; i < k && t != 0.0; ++i) t = std::log1p(t);
    return t;
}

Interval f_inv_k_enclosure(std::uint64_t k, double t) {
    if (k < 1) throw InvalidInput("f_inv_k expects k >= 1");
    if (!(t >= 0.0)) throw InvalidInput("f_inv_k expects t >= 0");
    return Interval::closed(finv_k(Bound::value(t), k, Dir::Down).y, finv_k(Bound::value(t), k, Dir::Up).y);
}

Magnitude pot_magnitude(const SymbolSeq& seq, std::uint64_t n, std::uint64_t k) {
    if (k < 1) throw InvalidInput("pot expects k >= 1");
    Magnitude m = finv_k(seq.magnitude_at(n), k);
    const auto* f = std::get_if<FExpTail>(&seq.tail());
    if (f && n >= seq.tail_start()) {
        // floor(F^h(c)) <= F^h(c), so the term never exceeds F^(h-k)(c).
        const auto h = static_cast<std::int64_t>(n - seq.tail_start() + 1 + f->offset);
        const Bound cap = f_power(static_cast<double>(f->c), h - static_cast<std::int64_t>(k), Dir::Up);
        if (compare(cap, m.hi) < 0) m.hi = cap;
    }
    return m;
}

Interval pot(const SymbolSeq& seq, std::uint64_t n, std::uint64_t k) {
    return pot_magnitude(seq, n, k).to_interval();
}

namespace {

constexpr std::uint64_t kSupBudget = 1000000;

Magnitude fexp_level(std::int64_t c, std::int64_t e) {
    const auto cd = static_cast<double>(c);
    return {f_power(cd, e, Dir::Down), f_power(cd, e, Dir::Up)};
}

double scaled_upper(const Rational& r, std::uint64_t index) {
    return up(r.upper() * static_cast<double>(index));
}

double scaled_lower(const Rational& r, std::uint64_t index) {
    return std::max(0.0, down(r.lower() * static_cast<double>(index)));
}

}  // namespace

Magnitude t_star_magnitude(const SymbolSeq& seq, std::uint64_t shift) {
    const std::uint64_t q = seq.tail_start();
    Magnitude best = Magnitude::exact(0.0);
    std::uint64_t k = 1;
    for (; shift + k < q; ++k) best = sup(best, pot_magnitude(seq, shift + k, k));

    const TailRule& tail = seq.tail();
    if (std::holds_alternative<ConstTail>(tail)) {
        // F^-k is decreasing, so the first tail term dominates the rest.
        return sup(best, pot_magnitude(seq, shift + k, k));
    }
    if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
        for (std::uint64_t i = 0; i < p->pattern.size(); ++i)
            best = sup(best, pot_magnitude(seq, shift + k + i, k + i));
        return best;
    }
    if (const auto* f = std::get_if<FExpTail>(&tail)) {
        // Every tail term is F^-k floor(F^(k+e)(c)) with the same e; they lie
        // below F^e(c) and approach it, so the sup is exactly F^e(c).
        const std::int64_t e = static_cast<std::int64_t>(shift) - static_cast<std::int64_t>(q) + 1 +
                               static_cast<std::int64_t>(f->offset);
        return sup(best, fexp_level(f->c, e));
    }
    const auto& l = std::get<LinExpTail>(tail);
    // h(k) = F^-(k-1)(rate (j + anchor) + 1) bounds the k-th term and is
    // nonincreasing once j + anchor >= 1.
    for (std::uint64_t iter = 0; iter < kSupBudget; ++iter, ++k) {
        best = sup(best, pot_magnitude(seq, shift + k, k));
        const std::uint64_t next_index = shift + k + 1 - q + l.anchor;
        const Bound h = finv_k(Bound::value(up(scaled_upper(l.rate, next_index) + 1.0)), k, Dir::Up);
        if (upper_value(h) <= lower_value(best.lo)) return best;
        if (iter + 1 == kSupBudget) best.hi = max_upper(best.hi, h);
    }
    return best;
}

Interval t_star(const SymbolSeq& seq, std::uint64_t shift) { return t_star_magnitude(seq, shift).to_interval(); }

namespace {

bool bounded_tail(const SymbolSeq& seq) { return seq.asymptotics() == Asymptotics::Bounded; }

// Enclosure of t for the tail of seq that starts at index n >= tail_start:
// the fixed point of the backward map composed over one period.
Magnitude periodic_tail_height(const SymbolSeq& seq, std::uint64_t n, double tol) {
    const TailRule rule = bouquet::advance(seq.tail(), n - seq.tail_start());
    std::vector<Magnitude> entries;
    if (const auto* c = std::get_if<ConstTail>(&rule)) {
        entries.push_back(Magnitude::exact(std::fabs(static_cast<double>(c->c))));
    } else {
        // The run starting at n begins with s_n, which does not constrain t.
        const auto& pat = std::get<PeriodicTail>(rule).pattern;
        for (std::size_t i = 1; i <= pat.size(); ++i)
            entries.push_back(Magnitude::exact(std::fabs(static_cast<double>(pat[i % pat.size()]))));
    }
    const bool all_zero =
        std::all_of(entries.begin(), entries.end(), [](const Magnitude& m) { return m.hi.y == 0.0; });
    if (all_zero) return Magnitude::exact(0.0);

    const Magnitude ts = t_star_magnitude(seq, n);
    Magnitude v{ts.lo, add_upper(ts.hi, 1.0)};
    for (int iter = 0; iter < 1000000; ++iter) {
        Magnitude next = v;
        for (auto it = entries.rbegin(); it != entries.rend(); ++it) next = backward_step(*it, next);
        next = intersect(next, v);
        const double w = upper_value(next.hi) - lower_value(next.lo);
        const bool stalled = lower_value(next.lo) <= lower_value(v.lo) && upper_value(next.hi) >= upper_value(v.hi);
        v = next;
        if (w <= tol * 0.125 || stalled) break;
    }
    return v;
}

Magnitude terminal(const SymbolSeq& seq, std::uint64_t n, double tol) {
    if (bounded_tail(seq) && n >= seq.tail_start()) return periodic_tail_height(seq, n, tol);
    const Magnitude ts = t_star_magnitude(seq, n);
    return {ts.lo, add_upper(ts.hi, 1.0)};
}

// t_s = B_1 o ... o B_n (t_{sigma^n s}) with B_j(v) = F^-1(|s_j| + v).
Magnitude chain(const SymbolSeq& seq, std::uint64_t n, double tol) {
    Magnitude v = terminal(seq, n, tol);
    for (std::uint64_t j = n; j >= 1; --j) v = backward_step(seq.magnitude_at(j), v);
    return v;
}

double width(const Magnitude& m) { return upper_value(m.hi) - lower_value(m.lo); }

}  // namespace

TMinResult t_min(const SymbolSeq& seq, const RunConfig& cfg) {
    const double tol = cfg.tolerance;
    Magnitude best = chain(seq, 0, tol);
    std::uint64_t best_depth = 0;
    double best_width = width(best);

    const std::uint64_t limit = bounded_tail(seq) ? seq.tail_start() : cfg.budget;
    int stalled = 0;
    for (std::uint64_t n = 1; n <= limit && best_width > tol; ++n) {
        best = intersect(best, chain(seq, n, tol));
        const double w = width(best);
        if (w < best_width) {
            best_width = w;
            best_depth = n;
            stalled = 0;
        } else if (!bounded_tail(seq) && ++stalled >= 16) {
            break;
        }
    }
    return {best.to_interval(), best_width <= tol, best_depth};
}

Interval nesting_lower_bound(const SymbolSeq& seq, std::uint64_t n) {
    Magnitude v = Magnitude::exact(0.0);
    for (std::uint64_t j = n; j >= 1; --j) v = backward_step(seq.magnitude_at(j), v);
    return v.to_interval();
}

ModelPoint::ModelPoint(double t_, SymbolSeq seq_) : t(t_), seq(std::move(seq_)) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidInput("model point needs a finite t >= 0");
}

ModelPoint endpoint_of(const SymbolSeq& seq, const RunConfig& cfg) {
    const TMinResult r = t_min(seq, cfg);
    if (!std::isfinite(r.enclosure.lo)) throw InvalidInput("sequence has no finite endpoint");
    return ModelPoint(r.enclosure.mid(), seq);
}

StepResult model_step(const ModelPoint& x) {
    if (x.t > kOverflowGuard) return CertifiedLarge{x.t};
    const Interval entry = x.seq.magnitude_at(1).to_interval();
    const double flo = f_round(x.t, Dir::Down);
    const double fhi = f_round(x.t, Dir::Up);
    const Interval next = Interval::closed(down(flo - entry.hi), up(fhi - entry.lo));
    if (next.hi < 0.0) return NotInDomain{next};
    const double t = entry.lo == entry.hi ? std::expm1(x.t) - entry.lo : next.mid();
    return ModelPoint(std::clamp(t, 0.0, std::max(0.0, next.hi)), x.seq.shifted(1));
}

std::vector<StepResult> model_orbit(const ModelPoint& x, std::uint64_t n) {
    std::vector<StepResult> out;
    ModelPoint cur = x;
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(model_step(cur));
        const auto* p = std::get_if<ModelPoint>(&out.back());
        if (!p) break;
        cur = *p;
    }
    return out;
}

std::string to_string(Classification::Kind k) {
    switch (k) {
        case Classification::Kind::NotInJ: return "NotInJ";
        case Classification::Kind::EscapeCertified: return "InJ_EscapeCertified";
        case Classification::Kind::Endpoint: return "InJ_Endpoint";
        case Classification::Kind::NonEscaping: return "InJ_NonEscaping";
        case Classification::Kind::Unknown: return "Unknown";
    }
    return "Unknown";
}

Classification classify(const ModelPoint& x, std::uint64_t budget, const RunConfig& cfg) {
    using Kind = Classification::Kind;
    const TMinResult tm = t_min(x.seq, cfg);
    if (tm.converged && x.t >= tm.enclosure.lo - cfg.tolerance && x.t <= tm.enclosure.hi + cfg.tolerance) {
        // Endpoints map to endpoints, so a bounded address gives an
        // eventually periodic orbit.
        Classification c;
        c.kind = bounded_tail(x.seq) ? Kind::NonEscaping : Kind::Endpoint;
        c.evidence = tm.enclosure;
        return c;
    }

    // Escape certificate: if every iterate up to i is >= 0 and
    // T_i >= t*_{sigma^i} + 2, the gap g to t* satisfies g' >= F(g) - 1 > g + 3,
    // using t*_{sigma^(i+1)} <= F(t*_{sigma^i}).
    Interval t = Interval::point(x.t);
    bool nonneg = true;
    for (std::uint64_t i = 0;; ++i) {
        if (t.hi < 0.0) {
            Classification c;
            c.kind = Kind::NotInJ;
            c.first_failing_step = i;
            c.evidence = t;
            return c;
        }
        if (t.lo < 0.0) nonneg = false;
        if (nonneg && t.lo >= 2.0) {
            const double ts_hi = upper_value(t_star_magnitude(x.seq, i).hi);
            if (down(t.lo - ts_hi) >= 2.0) {
                Classification c;
                c.kind = Kind::EscapeCertified;
                c.certificate_step = i;
                c.evidence = t;
                return c;
            }
        }
        if (i >= budget || t.hi > kOverflowGuard) break;
        const Interval entry = x.seq.magnitude_at(i + 1).to_interval();
        t = Interval::closed(down(f_round(t.lo, Dir::Down) - entry.hi), up(f_round(t.hi, Dir::Up) - entry.lo));
    }
    Classification c;
    c.kind = Kind::Unknown;
    c.evidence = t;
    return c;
}

TriBool in_E_tilde(const SymbolSeq& seq) {
    // t* is finite for every supported rule; escape of the shifted
    // potentials is decided by the tail.
    return TriBool::from(seq.asymptotics() == Asymptotics::DivergesToInfinity);
}

double tail_potential_floor(const SymbolSeq& seq, std::uint64_t n) {
    const std::uint64_t q = seq.tail_start();
    if (n + 1 < q) throw InvalidInput("tail_potential_floor needs n + 1 >= tail start");
    if (const auto* f = std::get_if<FExpTail>(&seq.tail())) {
        const std::int64_t e = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(q) + 1 +
                               static_cast<std::int64_t>(f->offset);
        return lower_value(f_power(static_cast<double>(f->c), e, Dir::Down));
    }
    if (const auto* l = std::get_if<LinExpTail>(&seq.tail())) {
        // F^-1 ceil(F(y)) >= y for the first term.
        return scaled_lower(l->rate, n + 1 - q + l->anchor);
    }
    throw UnsupportedTail("bounded tails have no divergent potential floor");
}

namespace {

double entry_gap(const EntryValue& a, const EntryValue& b) {
    if (a == b) return 0.0;
    const auto* ia = std::get_if<std::int64_t>(&a);
    const auto* ib = std::get_if<std::int64_t>(&b);
    if (ia && ib) return std::min(1.0, std::fabs(static_cast<double>(*ia) - static_cast<double>(*ib)));
    return 1.0;
}

}  // namespace

double model_distance(const ModelPoint& a, const ModelPoint& b) {
    double d = std::fabs(a.t - b.t);
    double w = 1.0;
    for (std::uint64_t n = 0; n < 64; ++n, w *= 0.5) d += w * entry_gap(a.seq.at(n), b.seq.at(n));
    return d;
}

}  // namespace bouquet

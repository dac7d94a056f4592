#include "bouquet/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bouquet/errors.hpp"

namespace bouquet {

AlphaIndex::AlphaIndex(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i] <= entries_[i - 1]) throw InvalidInput("alpha index must be strictly increasing");
}

AlphaIndex AlphaIndex::extended(std::uint64_t N) const {
    if (!entries_.empty() && N <= entries_.back())
        throw PreconditionViolation("extension N=" + std::to_string(N) + " must exceed the last alpha entry " +
                                    std::to_string(entries_.back()));
    auto e = entries_;
    e.push_back(N);
    return AlphaIndex(std::move(e));
}

ShiftScan shifts_exceed(const SymbolSeq& seq, std::uint64_t from, double thr, const RunConfig& cfg) {
    if (seq.asymptotics() == Asymptotics::Bounded)
        throw UnsupportedTail("stratum checks need a divergent tail");
    const std::uint64_t q = seq.tail_start();
    for (std::uint64_t n = from; n - from <= cfg.budget; ++n) {
        const Interval ts = t_star(seq, n);
        if (ts.certainly_greater(thr)) {
            if (n + 1 >= q && tail_potential_floor(seq, n) > thr) return {TriBool::yes(), n};
            continue;
        }
        if (ts.certainly_at_most(thr)) return {TriBool::no(), n};
        return {TriBool::unknown(ts), n};
    }
    return {TriBool::unknown(), from + cfg.budget};
}

TriBool in_X(const AlphaIndex& alpha, const ModelPoint& x, const RunConfig& cfg) {
    if (!in_E_tilde(x.seq).is_true()) return TriBool::no();
    const Classification c = classify(x, cfg.budget, cfg);
    switch (c.kind) {
        case Classification::Kind::Endpoint: break;
        case Classification::Kind::Unknown: return TriBool::unknown(c.evidence);
        default: return TriBool::no();
    }
    for (std::uint64_t i = 0; i < alpha.dom(); ++i) {
        const ShiftScan s = shifts_exceed(x.seq, alpha.entries()[i], AlphaIndex::threshold(i), cfg);
        if (!s.result.is_true()) return s.result;
    }
    return TriBool::yes();
}

std::uint64_t find_extension(const AlphaIndex& alpha, const ModelPoint& x, std::uint64_t N_floor,
                             const RunConfig& cfg) {
    if (!in_X(alpha, x, cfg).is_true()) throw PreconditionViolation("find_extension: point is not a certified member");
    const std::uint64_t start = alpha.empty() ? N_floor : std::max(N_floor, alpha.last() + 1);
    const double thr = AlphaIndex::threshold(alpha.dom());
    const std::uint64_t q = x.seq.tail_start();

    // Every shift that fails (or is undecided) must lie below N.
    std::uint64_t N = start;
    for (std::uint64_t n = start;; ++n) {
        if (n - start > cfg.budget) throw BudgetExceeded("find_extension: no certified extension within budget");
        const Interval ts = t_star(x.seq, n);
        if (!ts.certainly_greater(thr)) {
            N = n + 1;
            continue;
        }
        if (n + 1 >= q && tail_potential_floor(x.seq, n) > thr) break;
    }
    if (!in_X(alpha.extended(N), x, cfg).is_true())
        throw BudgetExceeded("find_extension: extension could not be certified");
    return N;
}

namespace {

EntryValue witness_entry(std::int64_t c3, std::uint64_t height) {
    return rule_entry(FExpTail{c3, height - 1}, 0);
}

Segment single(TailRule rule) { return Segment{std::move(rule), 1}; }

// Rule whose first entry is |s_n|.
TailRule abs_rule_at(const SymbolSeq& seq, std::uint64_t n) {
    const EntryValue v = seq.at(n);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return ConstTail{*i < 0 ? -*i : *i};
    return seq.rule_at(n);  // tower entries come from FExp/LinExp runs and are positive
}

Interval scaled(const Rational& r, std::uint64_t index) {
    const double k = static_cast<double>(index);
    return Interval::closed(std::max(0.0, down(r.lower() * k)), up(r.upper() * k));
}

}  // namespace

SymbolSeq make_witness(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t m) {
    if (alpha.dom() < 1) throw PreconditionViolation("make_witness needs dom(alpha) >= 1");
    if (base.asymptotics() == Asymptotics::Bounded) throw UnsupportedTail("make_witness needs an fexp or linexp base");
    const auto c3 = static_cast<std::int64_t>(3 * alpha.dom());
    const std::uint64_t q = base.tail_start();
    std::vector<Segment> middle;

    auto pick = [&](std::uint64_t n) {
        const Magnitude a = base.magnitude_at(n);
        const Magnitude w = entry_magnitude(witness_entry(c3, n - m));
        if (certainly_le(a, w)) return single(abs_rule_at(base, n));
        if (certainly_gt(a, w)) return single(FExpTail{c3, n - m - 1});
        throw IncomparableTails("make_witness: cannot order |s_" + std::to_string(n) + "| = " + to_string(base.at(n)) +
                                " against floor(F^" + std::to_string(n - m) + "(" + std::to_string(c3) + "))");
    };

    // Finite part of the base beyond m.
    for (std::uint64_t n = m + 1; n < q; ++n) middle.push_back(pick(n));

    const std::uint64_t t0 = std::max(q, m + 1);
    if (const auto* f = std::get_if<FExpTail>(&base.tail())) {
        // Both sides are floor(F^h(.)) with heights differing by a constant.
        const auto hb = static_cast<std::int64_t>(t0 - q + 1 + f->offset);
        const auto hw = static_cast<std::int64_t>(t0 - m);
        const std::int64_t delta = hb - hw;
        const TailRule base_tail = bouquet::advance(base.tail(), t0 - q);
        const TailRule wit_tail = FExpTail{c3, t0 - m - 1};
        if (delta == 0 && f->c == c3) return base.spliced(m + 1, std::move(middle), wit_tail);
        Magnitude a;
        Magnitude w;
        if (delta >= 0) {
            a = {f_power(static_cast<double>(f->c), delta, Dir::Down), f_power(static_cast<double>(f->c), delta, Dir::Up)};
            w = Magnitude::exact(static_cast<double>(c3));
        } else {
            a = Magnitude::exact(static_cast<double>(f->c));
            w = {f_power(static_cast<double>(c3), -delta, Dir::Down), f_power(static_cast<double>(c3), -delta, Dir::Up)};
        }
        if (certainly_le(a, w)) return base.spliced(m + 1, std::move(middle), base_tail);
        if (certainly_gt(a, w)) return base.spliced(m + 1, std::move(middle), wit_tail);
        throw IncomparableTails("make_witness: fexp tails cannot be ordered");
    }

    // LinExp base: the witness tower eventually overtakes ceil(F(y)); once
    // y + 1 <= z and F(z) - z >= rate (z the witness exponent) it stays ahead.
    const auto& l = std::get<LinExpTail>(base.tail());
    for (std::uint64_t n = t0; n < t0 + 100000; ++n) {
        const Interval y = scaled(l.rate, n - q + l.anchor);
        const double z = lower_value(f_power(static_cast<double>(c3), static_cast<std::int64_t>(n - m) - 1, Dir::Down));
        if (y.lo >= 0.16 && z >= up(y.hi + 1.0) && down(f_round(z, Dir::Down) - z) >= l.rate.upper())
            return base.spliced(m + 1, std::move(middle), bouquet::advance(base.tail(), n - q));
        middle.push_back(pick(n));
    }
    throw IncomparableTails("make_witness: no crossover certified within the scan budget");
}

std::uint64_t least_witness_k(const SymbolSeq& seq, std::uint64_t n, double thr, const RunConfig& cfg) {
    for (std::uint64_t k = 1; k <= cfg.budget; ++k)
        if (pot(seq, n + k, k).certainly_greater(thr)) return k;
    throw BudgetExceeded("no k certifies pot(s, n + k, k) > threshold at n=" + std::to_string(n));
}

std::uint64_t min_admissible_M(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t N,
                               const RunConfig& cfg) {
    std::uint64_t kmax = 0;
    const auto& e = alpha.entries();
    for (std::size_t i = 0; i < e.size(); ++i) {
        const std::uint64_t hi = i + 1 < e.size() ? e[i + 1] : N;
        for (std::uint64_t n = e[i]; n < hi; ++n)
            kmax = std::max(kmax, least_witness_k(base, n, AlphaIndex::threshold(i), cfg));
    }
    return N + kmax;
}

std::uint64_t select_m(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t N, std::uint64_t M,
                       const RunConfig& cfg) {
    const AlphaIndex ext = alpha.extended(N);
    if (!in_X(ext, endpoint_of(base, cfg), cfg).is_true())
        throw PreconditionViolation("select_m: base is not a certified member of X_{alpha^N}");
    const std::uint64_t minimum = min_admissible_M(base, alpha, N, cfg);
    if (M < minimum)
        throw PreconditionViolation("select_m: M=" + std::to_string(M) + " is below the admissible minimum " +
                                    std::to_string(minimum));
    const double thr = AlphaIndex::threshold(alpha.dom());
    std::uint64_t m = 0;
    for (std::uint64_t n = N; n <= M; ++n) m = std::max(m, n + least_witness_k(base, n, thr, cfg));
    return m;
}

std::vector<WitnessReport> nowhere_dense_demo(const ModelPoint& base_point, const AlphaIndex& alpha, std::uint64_t N,
                                              std::uint64_t count, const RunConfig& cfg) {
    std::vector<WitnessReport> out;
    if (count == 0) return out;
    if (alpha.dom() < 1) throw PreconditionViolation("nowhere_dense_demo needs dom(alpha) >= 1");
    const AlphaIndex ext = alpha.extended(N);
    if (!in_X(ext, base_point, cfg).is_true())
        throw PreconditionViolation("nowhere_dense_demo: base point is not a certified member of X_{alpha^N}");

    const SymbolSeq& base = base_point.seq;
    const double d3 = 3.0 * static_cast<double>(alpha.dom());
    const Interval base_height = t_min(base, cfg).enclosure;
    std::uint64_t M = min_admissible_M(base, alpha, N, cfg);

    for (std::uint64_t r = 0; r < count; ++r) {
        WitnessReport rep;
        rep.m = select_m(base, alpha, N, M, cfg);
        rep.witness = make_witness(base, alpha, rep.m);
        const std::string where = " (m=" + std::to_string(rep.m) + ")";

        // Every shift n >= m stays above 3 dom(alpha) - 1.
        const std::uint64_t q = rep.witness.tail_start();
        rep.claim1_margin = t_star(rep.witness, rep.m);
        for (std::uint64_t n = rep.m;; ++n) {
            if (n - rep.m > cfg.budget) throw WitnessCheckFailed("claim 1 scan exceeded budget" + where);
            const Interval ts = t_star(rep.witness, n);
            if (ts.lo < rep.claim1_margin.lo) {
                rep.claim1_margin.lo = ts.lo;
                rep.claim1_margin.lo_open = ts.lo_open;
            }
            rep.claim1_margin.hi = std::min(rep.claim1_margin.hi, ts.hi);
            if (n + 1 >= q && tail_potential_floor(rep.witness, n) > d3 - 1.0) {
                rep.horizon = n;
                break;
            }
        }
        if (!rep.claim1_margin.certainly_greater(d3 - 1.0)) throw WitnessCheckFailed("claim 1 margin failed" + where);

        const ModelPoint wp = endpoint_of(rep.witness, cfg);
        if (!in_X(alpha, wp, cfg).is_true()) throw WitnessCheckFailed("witness not certified in X_alpha" + where);

        rep.claim2_bound = t_star(rep.witness, rep.m);
        if (!rep.claim2_bound.certainly_at_most(d3)) throw WitnessCheckFailed("claim 2 bound failed" + where);

        rep.endpoint_height = t_min(rep.witness, cfg).enclosure;
        if (rep.endpoint_height.hi > base_height.hi + cfg.tolerance)
            throw WitnessCheckFailed("witness endpoint above base endpoint" + where);
        rep.distance_to_base = model_distance(wp, base_point);

        M = rep.m;
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace bouquet

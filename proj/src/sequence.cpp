#include "bouquet/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bouquet/errors.hpp"

namespace bouquet {

namespace {

constexpr double kExactLimit = 9007199254740992.0;  // 2^53
constexpr std::uint64_t kFoldLimit = 1u << 20;
constexpr std::uint64_t kScanBudget = 100000;

using i128 = __int128;

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0) throw InvalidInput("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

double Rational::lower() const {
    const double q = static_cast<double>(num) / static_cast<double>(den);
    return den == 1 ? q : down(q);
}

double Rational::upper() const {
    const double q = static_cast<double>(num) / static_cast<double>(den);
    return den == 1 ? q : up(q);
}

std::string Rational::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ParseError("not a rational: '" + text + "'");
    }
}

int compare_scaled(const Rational& a, std::uint64_t x, const Rational& b, std::uint64_t y) {
    const i128 lhs = static_cast<i128>(a.num) * static_cast<i128>(x) * static_cast<i128>(b.den);
    const i128 rhs = static_cast<i128>(b.num) * static_cast<i128>(y) * static_cast<i128>(a.den);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

namespace {

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

EntryValue floor_iterate(std::int64_t c, std::uint64_t height) {
    double lo = static_cast<double>(c);
    double hi = lo;
    for (std::uint64_t i = 0; i < height; ++i) {
        lo = f_round(lo, Dir::Down);
        hi = f_round(hi, Dir::Up);
        if (!(hi < kExactLimit)) return Tower{Tower::Kind::FloorIterate, c, height, Rational{1}, 0};
    }
    const double fl = std::floor(lo);
    if (fl == std::floor(hi)) return static_cast<std::int64_t>(fl);
    return Tower{Tower::Kind::FloorIterate, c, height, Rational{1}, 0};
}

Interval scaled(const Rational& r, std::uint64_t index) {
    const double k = static_cast<double>(index);
    if (index == 0) return Interval::point(0.0);
    if (r.den == 1 && static_cast<double>(r.num) * k < kExactLimit)
        return Interval::point(static_cast<double>(r.num) * k);
    return Interval::closed(std::max(0.0, down(r.lower() * k)), up(r.upper() * k));
}

EntryValue ceil_exp(const Rational& rate, std::uint64_t index) {
    const Interval y = scaled(rate, index);
    const double lo = f_round(y.lo, Dir::Down);
    const double hi = f_round(y.hi, Dir::Up);
    if (hi < kExactLimit) {
        const double cl = std::ceil(lo);
        if (cl == std::ceil(hi)) return static_cast<std::int64_t>(cl);
    }
    return Tower{Tower::Kind::CeilExp, 0, 1, rate, index};
}

}  // namespace

Magnitude entry_magnitude(const EntryValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return Magnitude::exact(static_cast<double>(abs64(*i)));
    const Tower& t = std::get<Tower>(v);
    if (t.kind == Tower::Kind::FloorIterate) {
        // floor(X) > X - 1 and F^h(c) - 1 = F(z - d(z)) with z = F^(h-1)(c),
        // d(z) = -log1p(-e^-z); pushing d(z) down to the base only loosens it.
        const double c = static_cast<double>(t.c);
        const double z = lower_value(f_power(c, static_cast<std::int64_t>(t.height) - 1, Dir::Down));
        const double dz = -down(std::log1p(-up(std::exp(-z))));
        const double base = std::max(0.0, down(c - dz));
        return {normalize(Bound{t.height, base}, Dir::Down), f_power(c, static_cast<std::int64_t>(t.height), Dir::Up)};
    }
    // ceil(F(y)) in [F(y), F(y) + 1)
    const Interval y = scaled(t.rate, t.index);
    return {normalize(Bound{1, y.lo}, Dir::Down), add_upper(normalize(Bound{1, y.hi}, Dir::Up), 1.0)};
}

std::string to_string(const EntryValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    const Tower& t = std::get<Tower>(v);
    std::ostringstream os;
    if (t.kind == Tower::Kind::FloorIterate)
        os << "floor(F^" << t.height << "(" << t.c << "))";
    else
        os << "ceil(F(" << t.rate.to_string() << "*" << t.index << "))";
    return os.str();
}

Asymptotics asymptotics(const TailRule& rule) {
    if (std::holds_alternative<ConstTail>(rule) || std::holds_alternative<PeriodicTail>(rule))
        return Asymptotics::Bounded;
    return Asymptotics::DivergesToInfinity;
}

const char* kind_name(const TailRule& rule) {
    switch (rule.index()) {
        case 0: return "const";
        case 1: return "periodic";
        case 2: return "fexp";
        default: return "linexp";
    }
}

TailRule advance(const TailRule& rule, std::uint64_t r) {
    return std::visit(
        [r](const auto& t) -> TailRule {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstTail>) {
                return t;
            } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                PeriodicTail out = t;
                const auto k = static_cast<std::ptrdiff_t>(r % t.pattern.size());
                std::rotate(out.pattern.begin(), out.pattern.begin() + k, out.pattern.end());
                return out;
            } else if constexpr (std::is_same_v<T, FExpTail>) {
                return FExpTail{t.c, t.offset + r};
            } else {
                return LinExpTail{t.rate, t.anchor + r};
            }
        },
        rule);
}

EntryValue rule_entry(const TailRule& rule, std::uint64_t j) {
    return std::visit(
        [j](const auto& t) -> EntryValue {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstTail>) {
                return t.c;
            } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                return t.pattern[j % t.pattern.size()];
            } else if constexpr (std::is_same_v<T, FExpTail>) {
                return floor_iterate(t.c, j + 1 + t.offset);
            } else {
                return ceil_exp(t.rate, j + t.anchor);
            }
        },
        rule);
}

namespace {

void validate(const TailRule& rule) {
    if (const auto* p = std::get_if<PeriodicTail>(&rule); p && p->pattern.empty())
        throw InvalidInput("periodic tail needs a nonempty pattern");
    if (const auto* f = std::get_if<FExpTail>(&rule); f && f->c < 1)
        throw InvalidInput("fexp tail needs c >= 1");
    if (const auto* l = std::get_if<LinExpTail>(&rule); l && l->rate.num <= 0)
        throw InvalidInput("linexp tail needs a positive rate");
}

}  // namespace

SymbolSeq::SymbolSeq(std::vector<std::int64_t> prefix, TailRule tail, std::vector<Segment> segments)
    : prefix_(std::move(prefix)), segments_(std::move(segments)), tail_(std::move(tail)) {
    validate(tail_);
    for (const auto& s : segments_) validate(s.rule);
    normalize();
}

void SymbolSeq::normalize() {
    std::erase_if(segments_, [](const Segment& s) { return s.length == 0; });
    // Fold leading segments whose entries are all machine integers.
    while (!segments_.empty() && segments_.front().length <= kFoldLimit) {
        const Segment& s = segments_.front();
        std::vector<std::int64_t> vals;
        vals.reserve(s.length);
        bool ok = true;
        for (std::uint64_t j = 0; j < s.length && ok; ++j) {
            const EntryValue v = rule_entry(s.rule, j);
            if (const auto* i = std::get_if<std::int64_t>(&v))
                vals.push_back(*i);
            else
                ok = false;
        }
        if (!ok) break;
        prefix_.insert(prefix_.end(), vals.begin(), vals.end());
        segments_.erase(segments_.begin());
    }
    // Merge adjacent runs that continue each other.
    std::vector<Segment> merged;
    for (const auto& s : segments_) {
        if (!merged.empty() && bouquet::advance(merged.back().rule, merged.back().length) == s.rule)
            merged.back().length += s.length;
        else
            merged.push_back(s);
    }
    segments_ = std::move(merged);
    if (!segments_.empty() && bouquet::advance(segments_.back().rule, segments_.back().length) == tail_) {
        tail_ = segments_.back().rule;
        segments_.pop_back();
    }
    tail_start_ = prefix_.size();
    for (const auto& s : segments_) tail_start_ += s.length;
}

EntryValue SymbolSeq::at(std::uint64_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    std::uint64_t pos = prefix_.size();
    for (const auto& s : segments_) {
        if (n < pos + s.length) return rule_entry(s.rule, n - pos);
        pos += s.length;
    }
    return rule_entry(tail_, n - pos);
}

TailRule SymbolSeq::rule_at(std::uint64_t n) const {
    if (n < prefix_.size()) return ConstTail{prefix_[n]};
    std::uint64_t pos = prefix_.size();
    for (const auto& s : segments_) {
        if (n < pos + s.length) return bouquet::advance(s.rule, n - pos);
        pos += s.length;
    }
    return bouquet::advance(tail_, n - pos);
}

SymbolSeq SymbolSeq::shifted(std::uint64_t n) const {
    if (n == 0) return *this;
    std::vector<std::int64_t> prefix;
    std::uint64_t rest = n;
    if (rest < prefix_.size()) {
        prefix.assign(prefix_.begin() + static_cast<std::ptrdiff_t>(rest), prefix_.end());
        rest = 0;
    } else {
        rest -= prefix_.size();
    }
    std::vector<Segment> segs;
    for (const auto& s : segments_) {
        if (rest >= s.length) {
            rest -= s.length;
            continue;
        }
        segs.push_back(Segment{bouquet::advance(s.rule, rest), s.length - rest});
        rest = 0;
    }
    return SymbolSeq(std::move(prefix), bouquet::advance(tail_, rest), std::move(segs));
}

SymbolSeq SymbolSeq::spliced(std::uint64_t len, std::vector<Segment> middle, TailRule tail) const {
    std::vector<std::int64_t> prefix(prefix_.begin(),
                                     prefix_.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(len, prefix_.size())));
    std::vector<Segment> segs;
    std::uint64_t pos = prefix_.size();
    for (const auto& s : segments_) {
        if (pos >= len) break;
        segs.push_back(Segment{s.rule, std::min(s.length, len - pos)});
        pos += s.length;
    }
    if (pos < len) segs.push_back(Segment{tail_, len - pos});
    segs.insert(segs.end(), std::make_move_iterator(middle.begin()), std::make_move_iterator(middle.end()));
    return SymbolSeq(std::move(prefix), std::move(tail), std::move(segs));
}

SymbolSeq shift(const SymbolSeq& seq, std::uint64_t n) { return seq.shifted(n); }

// ---------------------------------------------------------------------------
// Domination

namespace {

// Explicit check on [from, to).
TriBool check_range(const SymbolSeq& small, const SymbolSeq& big, std::uint64_t from, std::uint64_t to) {
    for (std::uint64_t n = from; n < to; ++n) {
        const Magnitude a = small.magnitude_at(n);
        const Magnitude b = big.magnitude_at(n);
        if (certainly_le(a, b)) continue;
        if (certainly_gt(a, b)) return TriBool::no();
        return TriBool::unknown(a.to_interval());
    }
    return TriBool::yes();
}

std::uint64_t period_of(const TailRule& r) {
    if (const auto* p = std::get_if<PeriodicTail>(&r)) return p->pattern.size();
    return 1;
}

std::int64_t bound_of(const TailRule& r) {
    if (const auto* c = std::get_if<ConstTail>(&r)) return abs64(c->c);
    std::int64_t m = 0;
    for (auto v : std::get<PeriodicTail>(r).pattern) m = std::max(m, abs64(v));
    return m;
}

// Height of the FExp entry of `seq` at absolute index n >= tail_start.
std::uint64_t fexp_height(const SymbolSeq& seq, std::uint64_t n) {
    return n - seq.tail_start() + 1 + std::get<FExpTail>(seq.tail()).offset;
}

std::uint64_t linexp_index(const SymbolSeq& seq, std::uint64_t n) {
    return n - seq.tail_start() + std::get<LinExpTail>(seq.tail()).anchor;
}

}  // namespace

TriBool dominated_by(const SymbolSeq& small, const SymbolSeq& big) {
    const std::uint64_t H = std::max(small.tail_start(), big.tail_start());
    if (TriBool head = check_range(small, big, 0, H); !head.is_true()) return head;

    const TailRule& ts = small.tail();
    const TailRule& tb = big.tail();
    const bool small_bounded = asymptotics(ts) == Asymptotics::Bounded;
    const bool big_bounded = asymptotics(tb) == Asymptotics::Bounded;

    if (small_bounded && big_bounded) {
        const std::uint64_t l = std::lcm(period_of(ts), period_of(tb));
        if (l > kScanBudget) return TriBool::unknown();
        return check_range(small, big, H, H + l);
    }
    if (!small_bounded && big_bounded) return TriBool::no();

    if (small_bounded) {
        // Divergent tails are nondecreasing, so once the big entry clears the
        // bound of the small tail it does so forever.
        const double bound = static_cast<double>(bound_of(ts));
        for (std::uint64_t n = H; n < H + kScanBudget; ++n) {
            const Magnitude b = big.magnitude_at(n);
            if (lower_value(b.lo) >= bound) return TriBool::yes();
            if (TriBool r = check_range(small, big, n, n + 1); !r.is_true()) return r;
        }
        return TriBool::unknown();
    }

    const auto* fs = std::get_if<FExpTail>(&ts);
    const auto* fb = std::get_if<FExpTail>(&tb);
    const auto* ls = std::get_if<LinExpTail>(&ts);
    const auto* lb = std::get_if<LinExpTail>(&tb);

    if (fs && lb) return TriBool::no();

    if (fs && fb) {
        const auto hs = static_cast<std::int64_t>(fexp_height(small, H));
        const auto hb = static_cast<std::int64_t>(fexp_height(big, H));
        const std::int64_t delta = hb - hs;
        if (delta == 0 && fs->c == fb->c) return TriBool::yes();
        // Compare F^hs(cs) with F^hb(cb) after stripping common F applications.
        Magnitude a;
        Magnitude b;
        if (delta >= 0) {
            a = Magnitude::exact(static_cast<double>(fs->c));
            b = {f_power(static_cast<double>(fb->c), delta, Dir::Down), f_power(static_cast<double>(fb->c), delta, Dir::Up)};
        } else {
            a = {f_power(static_cast<double>(fs->c), -delta, Dir::Down), f_power(static_cast<double>(fs->c), -delta, Dir::Up)};
            b = Magnitude::exact(static_cast<double>(fb->c));
        }
        if (certainly_le(a, b)) return TriBool::yes();
        if (certainly_gt(a, b)) return TriBool::no();
        return TriBool::unknown();
    }

    if (ls && lb) {
        const int rate_cmp = compare_scaled(ls->rate, 1, lb->rate, 1);
        const int at_h = compare_scaled(ls->rate, linexp_index(small, H), lb->rate, linexp_index(big, H));
        if (rate_cmp <= 0 && at_h <= 0) return TriBool::yes();
        if (rate_cmp > 0) return TriBool::no();
        if (rate_cmp == 0) return TriBool::no();
        // Smaller rate, currently ahead: scan to the crossing.
        for (std::uint64_t n = H; n < H + kScanBudget; ++n) {
            if (compare_scaled(ls->rate, linexp_index(small, n), lb->rate, linexp_index(big, n)) <= 0)
                return TriBool::yes();
            if (TriBool r = check_range(small, big, n, n + 1); !r.is_true()) return r;
        }
        return TriBool::unknown();
    }

    // LinExp under FExp: certify y + 1 <= z with F(z) - z >= rate, where the
    // small entry is ceil(F(y)) and the big one floor(F(z)); the gap then
    // persists by induction.
    for (std::uint64_t n = H; n < H + kScanBudget; ++n) {
        const Interval y = scaled(ls->rate, linexp_index(small, n));
        const double z = lower_value(f_power(static_cast<double>(fb->c),
                                             static_cast<std::int64_t>(fexp_height(big, n)) - 1, Dir::Down));
        if (y.lo >= 0.16 && z >= up(y.hi + 1.0) && down(f_round(z, Dir::Down) - z) >= ls->rate.upper())
            return TriBool::yes();
        if (TriBool r = check_range(small, big, n, n + 1); !r.is_true()) return r;
    }
    return TriBool::unknown();
}

}  // namespace bouquet

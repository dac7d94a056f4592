#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bouquet/interval.hpp"
#include "bouquet/magnitude.hpp"

namespace bouquet {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double lower() const;
    double upper() const;
    std::string to_string() const;
    static Rational parse(const std::string& text);

    bool operator==(const Rational&) const = default;
};

// Three-way comparison of a*x against b*y for naturals x, y; exact.
int compare_scaled(const Rational& a, std::uint64_t x, const Rational& b, std::uint64_t y);

// Tail rules. Index j counts from the start of the rule's run.
struct ConstTail {
    std::int64_t c = 0;
    bool operator==(const ConstTail&) const = default;
};

struct PeriodicTail {
    std::vector<std::int64_t> pattern;
    bool operator==(const PeriodicTail&) const = default;
};

// s_{start+j} = floor(F^(j+1+offset)(c)), c >= 1.
struct FExpTail {
    std::int64_t c = 1;
    std::uint64_t offset = 0;
    bool operator==(const FExpTail&) const = default;
};

// s_{start+j} = ceil(F(rate * (j + anchor))), rate > 0. With anchor equal to
// the start index this is ceil(F(c n)) at absolute index n.
struct LinExpTail {
    Rational rate{1};
    std::uint64_t anchor = 0;
    bool operator==(const LinExpTail&) const = default;
};

using TailRule = std::variant<ConstTail, PeriodicTail, FExpTail, LinExpTail>;

// A finite run of a rule, used between the prefix and the final tail.
struct Segment {
    TailRule rule;
    std::uint64_t length = 1;
    bool operator==(const Segment&) const = default;
};

enum class Asymptotics { Bounded, DivergesToInfinity };

// Symbolic entry too large to hold in an int64 (or whose floor/ceil is not
// decided in double precision).
struct Tower {
    enum class Kind { FloorIterate, CeilExp };
    Kind kind = Kind::FloorIterate;
    std::int64_t c = 0;         // FloorIterate: floor(F^height(c))
    std::uint64_t height = 0;
    Rational rate{1};           // CeilExp: ceil(F(rate * index))
    std::uint64_t index = 0;

    bool operator==(const Tower&) const = default;
};

using EntryValue = std::variant<std::int64_t, Tower>;

// Enclosure of |value|.
Magnitude entry_magnitude(const EntryValue& v);
std::string to_string(const EntryValue& v);

Asymptotics asymptotics(const TailRule& rule);
TailRule advance(const TailRule& rule, std::uint64_t r);
EntryValue rule_entry(const TailRule& rule, std::uint64_t j);
const char* kind_name(const TailRule& rule);

// Element of Z^omega described by an integer prefix, optional finite
// segments, and an infinite tail rule.
class SymbolSeq {
public:
    SymbolSeq() : SymbolSeq({}, ConstTail{0}) {}
    SymbolSeq(std::vector<std::int64_t> prefix, TailRule tail, std::vector<Segment> segments = {});

    const std::vector<std::int64_t>& prefix() const { return prefix_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const TailRule& tail() const { return tail_; }

    // Index at which the infinite tail starts.
    std::uint64_t tail_start() const { return tail_start_; }

    EntryValue at(std::uint64_t n) const;
    Magnitude magnitude_at(std::uint64_t n) const { return entry_magnitude(at(n)); }

    // A rule whose first entry is s_n.
    TailRule rule_at(std::uint64_t n) const;

    // sigma^n(s).
    SymbolSeq shifted(std::uint64_t n) const;

    // The first len entries as prefix + segments, followed by `tail`.
    SymbolSeq spliced(std::uint64_t len, std::vector<Segment> middle, TailRule tail) const;

    Asymptotics asymptotics() const { return bouquet::asymptotics(tail_); }

    bool operator==(const SymbolSeq&) const = default;

private:
    void normalize();

    std::vector<std::int64_t> prefix_;
    std::vector<Segment> segments_;
    TailRule tail_;
    std::uint64_t tail_start_ = 0;
};

SymbolSeq shift(const SymbolSeq& seq, std::uint64_t n);

// |small_n| <= |big_n| for every n; decided for every pair of supported
// rules except where a floor tie cannot be resolved.
TriBool dominated_by(const SymbolSeq& small, const SymbolSeq& big);

}  // namespace bouquet

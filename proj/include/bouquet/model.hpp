#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bouquet/config.hpp"
#include "bouquet/interval.hpp"
#include "bouquet/magnitude.hpp"
#include "bouquet/sequence.hpp"

namespace bouquet {

inline constexpr double kOverflowGuard = 700.0;

// F(t) = e^t - 1. Throws OverflowGuard above kOverflowGuard.
double f_map(double t);

// F^-k(t) by k-fold ln(t + 1).
double f_inv_k(std::uint64_t k, double t);
Interval f_inv_k_enclosure(std::uint64_t k, double t);

// Enclosure of F^-k |s_n|.
Interval pot(const SymbolSeq& seq, std::uint64_t n, std::uint64_t k);
Magnitude pot_magnitude(const SymbolSeq& seq, std::uint64_t n, std::uint64_t k);

// Enclosure of t*_{sigma^shift(s)} = sup_{k>=1} F^-k |s_{shift+k}|.
Interval t_star(const SymbolSeq& seq, std::uint64_t shift = 0);
Magnitude t_star_magnitude(const SymbolSeq& seq, std::uint64_t shift = 0);

struct TMinResult {
    Interval enclosure;
    bool converged = false;
    std::uint64_t depth = 0;  // number of backward steps in the best chain
};

// Enclosure of the endpoint height t_s.
TMinResult t_min(const SymbolSeq& seq, const RunConfig& cfg = {});

// Backward-nesting constraint u_n from T(F^n(x)) >= 0:
// v <- 0; for j = n..1: v <- F^-1(|s_j| + v).
Interval nesting_lower_bound(const SymbolSeq& seq, std::uint64_t n);

struct ModelPoint {
    double t = 0.0;
    SymbolSeq seq;

    ModelPoint() = default;
    ModelPoint(double t, SymbolSeq seq);
};

// <t_s, s> with t at the midpoint of the t_min enclosure.
ModelPoint endpoint_of(const SymbolSeq& seq, const RunConfig& cfg = {});

struct NotInDomain {
    Interval t_next;
};
struct CertifiedLarge {
    double t;  // the pre-image coordinate that tripped the guard
};
using StepResult = std::variant<ModelPoint, NotInDomain, CertifiedLarge>;

// <F(t) - |s_1|, sigma(s)>.
StepResult model_step(const ModelPoint& x);

// Up to n forward steps; stops at the first non-ModelPoint result.
std::vector<StepResult> model_orbit(const ModelPoint& x, std::uint64_t n);

struct Classification {
    enum class Kind { NotInJ, EscapeCertified, Endpoint, NonEscaping, Unknown };
    Kind kind = Kind::Unknown;
    std::uint64_t first_failing_step = 0;  // NotInJ
    std::uint64_t certificate_step = 0;    // EscapeCertified
    Interval evidence;                     // Unknown
};

std::string to_string(Classification::Kind k);

Classification classify(const ModelPoint& x, std::uint64_t budget, const RunConfig& cfg = {});

// x in E(F) cap I(F) for the endpoint of seq, decided from the tail rule.
TriBool in_E_tilde(const SymbolSeq& seq);

// Certified lower bound for t*_{sigma^n}, nondecreasing in n for
// n + 1 >= tail_start; only defined for divergent tails.
double tail_potential_floor(const SymbolSeq& seq, std::uint64_t n);

// |t - t'| + sum_n 2^-n min(1, |s_n - s'_n|), summed over n < 64.
double model_distance(const ModelPoint& a, const ModelPoint& b);

}  // namespace bouquet

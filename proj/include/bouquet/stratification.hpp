#pragma once

#include <cstdint>
#include <vector>

#include "bouquet/config.hpp"
#include "bouquet/interval.hpp"
#include "bouquet/model.hpp"
#include "bouquet/sequence.hpp"

namespace bouquet {

// Strictly increasing tuple <N_0, ..., N_{k-1}> indexing the stratum X_alpha.
// Constraint i requires t*_{sigma^n} > 3i + 2 for all n >= N_i.
class AlphaIndex {
public:
    AlphaIndex() = default;
    explicit AlphaIndex(std::vector<std::uint64_t> entries);

    const std::vector<std::uint64_t>& entries() const { return entries_; }
    std::uint64_t dom() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::uint64_t last() const { return entries_.back(); }

    static double threshold(std::uint64_t i) { return 3.0 * static_cast<double>(i) + 2.0; }

    // alpha ^ N; requires N > last().
    AlphaIndex extended(std::uint64_t N) const;

    bool operator==(const AlphaIndex&) const = default;

private:
    std::vector<std::uint64_t> entries_;
};

struct ShiftScan {
    TriBool result;
    std::uint64_t horizon = 0;  // last shift inspected explicitly
};

// t*_{sigma^n}(seq) > thr for every n >= from, decided up to the index where
// the tail's monotone potential floor takes over.
ShiftScan shifts_exceed(const SymbolSeq& seq, std::uint64_t from, double thr, const RunConfig& cfg = {});

TriBool in_X(const AlphaIndex& alpha, const ModelPoint& x, const RunConfig& cfg = {});

// Least admissible N (N >= N_floor, N > last entry of alpha) with x in
// X_{alpha^N}.
std::uint64_t find_extension(const AlphaIndex& alpha, const ModelPoint& x, std::uint64_t N_floor,
                             const RunConfig& cfg = {});

// Witness s^m: s_n for n <= m, min(|s_n|, floor(F^(n-m)(3 dom(alpha)))) after.
SymbolSeq make_witness(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t m);

// Least k >= 1 with pot(seq, n + k, k) > thr.
std::uint64_t least_witness_k(const SymbolSeq& seq, std::uint64_t n, double thr, const RunConfig& cfg = {});

// Smallest M with M >= N + max{k_n : n < N}, where k_n uses the threshold of
// the alpha segment containing n.
std::uint64_t min_admissible_M(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t N,
                               const RunConfig& cfg = {});

// m = max{n + k_n : n in [N, M]} at threshold 3 dom(alpha) + 2.
std::uint64_t select_m(const SymbolSeq& base, const AlphaIndex& alpha, std::uint64_t N, std::uint64_t M,
                       const RunConfig& cfg = {});

struct WitnessReport {
    std::uint64_t m = 0;
    SymbolSeq witness;
    Interval claim1_margin;   // min over n >= m of t*_{sigma^n}(witness)
    Interval claim2_bound;    // t*_{sigma^m}(witness)
    double distance_to_base = 0.0;
    Interval endpoint_height;  // t_min(witness)
    std::uint64_t horizon = 0;  // last shift checked explicitly for claim 1
};

// `count` certified witnesses with increasing m showing that X_{alpha^N} is
// nowhere dense in X_alpha around base_point.
std::vector<WitnessReport> nowhere_dense_demo(const ModelPoint& base_point, const AlphaIndex& alpha, std::uint64_t N,
                                              std::uint64_t count, const RunConfig& cfg = {});

}  // namespace bouquet

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bouquet/config.hpp"
#include "bouquet/sequence.hpp"

namespace bouquet {

struct CheckResult {
    std::string name;
    bool passed = false;
    double margin = 0.0;  // smallest slack observed; negative on failure
    std::uint64_t cases = 0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
};

// Random rule-based sequence with a short integer prefix. Tail parameters
// stay small enough that t* is finite in double precision.
SymbolSeq random_sequence(std::mt19937_64& rng);

// A sequence dominated coordinate-wise by `big` (same shape, smaller
// magnitudes).
SymbolSeq random_dominated(const SymbolSeq& big, std::mt19937_64& rng);

// Every invariant of the model, strata and plane modules, sampled with
// cfg.seed. Never throws; failures are reported per check.
VerifyReport run_verification(const RunConfig& cfg);

nlohmann::json report_to_json(const VerifyReport& r);
std::string report_to_text(const VerifyReport& r);

}  // namespace bouquet

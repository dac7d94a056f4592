#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bouquet/interval.hpp"
#include "bouquet/model.hpp"
#include "bouquet/plane.hpp"
#include "bouquet/sequence.hpp"
#include "bouquet/stratification.hpp"

namespace bouquet {

using json = nlohmann::json;

// Sequence descriptor:
//   {"prefix": [int, ...],
//    "segments": [{"kind": ..., "length": n, ...}, ...],   (optional)
//    "tail": {"kind": "const"|"periodic"|"fexp"|"linexp", ...}}
// Rule fields: const {"c": int}; periodic {"pattern": [int, ...]};
// fexp {"c": int >= 1, "offset": n?}; linexp {"c": int or "p/q", "anchor": n?}.
// A missing linexp anchor defaults to the index where the run starts.
SymbolSeq seq_from_json(const json& j);
json seq_to_json(const SymbolSeq& s);
SymbolSeq parse_seq(const std::string& text);

// Infinite endpoints are written as the strings "inf" / "-inf".
json interval_to_json(const Interval& iv);
Interval interval_from_json(const json& j);

json alpha_to_json(const AlphaIndex& a);
AlphaIndex alpha_from_json(const json& j);

json tribool_to_json(const TriBool& b);
json tmin_to_json(const TMinResult& r);
json classification_to_json(const Classification& c);
json witness_to_json(const WitnessReport& r);
json cycle_to_json(const CycleInfo& c);
json render_summary_to_json(const RenderSummary& s);
json complex_to_json(const ComplexPoint& z);

// Accepts {"re": x, "im": y}, [x, y], a number, or a string such as "-1", "0.5+2i".
ComplexPoint complex_from_json(const json& j);
ComplexPoint parse_complex(const std::string& text);

}  // namespace bouquet

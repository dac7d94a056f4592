#include "bouquet/json_io.hpp"

#include <cmath>
#include <cstdlib>

#include "bouquet/errors.hpp"

namespace bouquet {

std::string to_string(const TriBool& b) {
    switch (b.value) {
        case TriBool::Value::True: return "true";
        case TriBool::Value::False: return "false";
        case TriBool::Value::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::int64_t get_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::uint64_t get_nat(const json& j, const char* what) {
    const std::int64_t v = get_int(j, what);
    if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
    return static_cast<std::uint64_t>(v);
}

Rational get_rational(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw ParseError("linexp rate must be an integer or a \"p/q\" string");
}

TailRule rule_from_json(const json& j, std::uint64_t start) {
    if (!j.is_object()) throw ParseError("rule must be an object");
    if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("rule needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    auto need = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw ParseError(kind + " rule needs \"" + key + "\"");
        return j[key];
    };
    if (kind == "const") return ConstTail{get_int(need("c"), "const c")};
    if (kind == "periodic") {
        const json& p = need("pattern");
        if (!p.is_array()) throw ParseError("periodic pattern must be a list");
        PeriodicTail t;
        for (const auto& v : p) t.pattern.push_back(get_int(v, "pattern entry"));
        return t;
    }
    if (kind == "fexp") {
        FExpTail t{get_int(need("c"), "fexp c"), 0};
        if (j.contains("offset")) t.offset = get_nat(j["offset"], "fexp offset");
        return t;
    }
    if (kind == "linexp") {
        LinExpTail t{get_rational(need("c")), start};
        if (j.contains("anchor")) t.anchor = get_nat(j["anchor"], "linexp anchor");
        return t;
    }
    throw ParseError("unknown rule kind \"" + kind + "\"");
}

json rule_to_json(const TailRule& r) {
    json j;
    j["kind"] = kind_name(r);
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstTail>) {
                j["c"] = t.c;
            } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                j["pattern"] = t.pattern;
            } else if constexpr (std::is_same_v<T, FExpTail>) {
                j["c"] = t.c;
                j["offset"] = t.offset;
            } else {
                if (t.rate.den == 1) j["c"] = t.rate.num;
                else j["c"] = t.rate.to_string();
                j["anchor"] = t.anchor;
            }
        },
        r);
    return j;
}

json number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from(const json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ParseError(std::string(what) + " must be a number");
}

}  // namespace

SymbolSeq seq_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ParseError("sequence descriptor must be an object");
        std::vector<std::int64_t> prefix;
        if (j.contains("prefix")) {
            if (!j["prefix"].is_array()) throw ParseError("prefix must be a list");
            for (const auto& v : j["prefix"]) prefix.push_back(get_int(v, "prefix entry"));
        }
        std::uint64_t pos = prefix.size();
        std::vector<Segment> segs;
        if (j.contains("segments")) {
            if (!j["segments"].is_array()) throw ParseError("segments must be a list");
            for (const auto& s : j["segments"]) {
                if (!s.is_object() || !s.contains("length")) throw ParseError("segment needs \"length\"");
                const std::uint64_t len = get_nat(s["length"], "segment length");
                segs.push_back(Segment{rule_from_json(s, pos), len});
                pos += len;
            }
        }
        if (!j.contains("tail")) throw ParseError("sequence descriptor needs \"tail\"");
        return SymbolSeq(std::move(prefix), rule_from_json(j["tail"], pos), std::move(segs));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

json seq_to_json(const SymbolSeq& s) {
    json j;
    j["prefix"] = s.prefix();
    if (!s.segments().empty()) {
        json segs = json::array();
        for (const auto& seg : s.segments()) {
            json r = rule_to_json(seg.rule);
            r["length"] = seg.length;
            segs.push_back(r);
        }
        j["segments"] = segs;
    }
    j["tail"] = rule_to_json(s.tail());
    return j;
}

SymbolSeq parse_seq(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed descriptor: ") + e.what());
    }
    return seq_from_json(j);
}

json interval_to_json(const Interval& iv) {
    return {{"lo", number(iv.lo)}, {"hi", number(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

Interval interval_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi")) throw ParseError("interval needs lo and hi");
    Interval iv{number_from(j["lo"], "lo"), number_from(j["hi"], "hi"), false, false};
    if (j.contains("lo_open")) iv.lo_open = j["lo_open"].get<bool>();
    if (j.contains("hi_open")) iv.hi_open = j["hi_open"].get<bool>();
    return iv;
}

json alpha_to_json(const AlphaIndex& a) { return a.entries(); }

AlphaIndex alpha_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("alpha must be a list of naturals");
    std::vector<std::uint64_t> e;
    for (const auto& v : j) e.push_back(get_nat(v, "alpha entry"));
    try {
        return AlphaIndex(std::move(e));
    } catch (const InvalidInput& ex) {
        throw ParseError(ex.what());
    }
}

json tribool_to_json(const TriBool& b) {
    json j = {{"value", to_string(b)}};
    if (b.evidence) j["evidence"] = interval_to_json(*b.evidence);
    return j;
}

json tmin_to_json(const TMinResult& r) {
    return {{"enclosure", interval_to_json(r.enclosure)}, {"converged", r.converged}, {"depth", r.depth}};
}

json classification_to_json(const Classification& c) {
    json j = {{"kind", to_string(c.kind)}};
    switch (c.kind) {
        case Classification::Kind::NotInJ: j["first_failing_step"] = c.first_failing_step; break;
        case Classification::Kind::EscapeCertified: j["certificate_step"] = c.certificate_step; break;
        case Classification::Kind::Unknown: j["evidence"] = interval_to_json(c.evidence); break;
        default: break;
    }
    return j;
}

json witness_to_json(const WitnessReport& r) {
    return {{"m", r.m},
            {"witness", seq_to_json(r.witness)},
            {"claim1_margin", interval_to_json(r.claim1_margin)},
            {"claim2_bound", interval_to_json(r.claim2_bound)},
            {"distance", r.distance_to_base},
            {"endpoint_height", interval_to_json(r.endpoint_height)},
            {"horizon", r.horizon}};
}

json complex_to_json(const ComplexPoint& z) { return {{"re", z.re}, {"im", z.im}}; }

json cycle_to_json(const CycleInfo& c) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(complex_to_json(p));
    return {{"period", c.period},
            {"points", pts},
            {"multiplier", complex_to_json(c.multiplier)},
            {"kind", to_string(c.kind)},
            {"residual", c.residual}};
}

json render_summary_to_json(const RenderSummary& s) {
    return {{"escaped_pixels", s.escaped_pixels}, {"retained_pixels", s.retained_pixels}, {"hash", s.hash}};
}

ComplexPoint complex_from_json(const json& j) {
    if (j.is_number()) return ComplexPoint(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return ComplexPoint(j[0].get<double>(), j[1].get<double>());
    if (j.is_object() && j.contains("re")) {
        const double im = j.contains("im") ? number_from(j["im"], "im") : 0.0;
        return ComplexPoint(number_from(j["re"], "re"), im);
    }
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw ParseError("cannot read a complex number");
}

ComplexPoint parse_complex(const std::string& text) {
    const char* s = text.c_str();
    char* end = nullptr;
    auto fail = [&]() -> ComplexPoint { throw ParseError("cannot parse complex number \"" + text + "\""); };
    if (text.empty()) return fail();
    const double first = std::strtod(s, &end);
    if (end == s) {
        // "i", "-i", "+i"
        if (text == "i" || text == "+i") return {0.0, 1.0};
        if (text == "-i") return {0.0, -1.0};
        return fail();
    }
    if (*end == '\0') return {first, 0.0};
    if ((*end == 'i' || *end == 'j') && end[1] == '\0') return {0.0, first};
    if (*end != '+' && *end != '-') return fail();
    const char* rest = end;
    double second = 0.0;
    char* end2 = nullptr;
    second = std::strtod(rest, &end2);
    if (end2 == rest) {
        if ((rest[1] == 'i' || rest[1] == 'j') && rest[2] == '\0') second = *rest == '-' ? -1.0 : 1.0;
        else return fail();
        return {first, second};
    }
    if ((*end2 != 'i' && *end2 != 'j') || end2[1] != '\0') return fail();
    return {first, second};
}

}  // namespace bouquet

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bouquet/errors.hpp"
#include "bouquet/json_io.hpp"
#include "bouquet/model.hpp"
#include "bouquet/plane.hpp"
#include "bouquet/stratification.hpp"
#include "bouquet/verify.hpp"

using namespace bouquet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    RunConfig cfg;
    std::string format = "json";
    std::string out;

    std::string seq;
    std::uint64_t shift = 0;
    double t = 0.0;
    bool have_t = false;
    std::string alpha = "[]";
    std::uint64_t N = 1;
    std::int64_t extend_floor = -1;
    std::uint64_t count = 3;

    std::string a = "-1";
    std::string z0 = "0";
    std::uint64_t period = 1;
    std::vector<double> viewport{-2.0, 4.0, -3.141592653589793, 3.141592653589793};
    std::uint32_t width = 200;
    std::uint32_t height = 200;
    std::uint64_t iterations = 100;
    double radius = kEscapeGuard;
};

std::string read_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_arg(const std::string& arg, const char* what) {
    try {
        return json::parse(read_arg(arg));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string interval_text(const Interval& iv) {
    return std::string(iv.lo_open ? "(" : "[") + fmt(iv.lo) + ", " + fmt(iv.hi) + (iv.hi_open ? ")" : "]");
}

void emit(const Options& o, const json& j, const std::string& text) {
    const std::string body = o.cfg.format == OutputFormat::Json ? j.dump(2) + "\n" : text;
    if (o.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error("cannot open " + o.out + " for writing");
    f << body;
}

int cmd_tstar(const Options& o) {
    const SymbolSeq s = seq_from_json(parse_json_arg(o.seq, "sequence descriptor"));
    const Interval iv = t_star(s, o.shift);
    emit(o, interval_to_json(iv), interval_text(iv) + "\n");
    return kExitOk;
}

int cmd_tmin(const Options& o) {
    const SymbolSeq s = seq_from_json(parse_json_arg(o.seq, "sequence descriptor"));
    const TMinResult r = t_min(s, o.cfg);
    emit(o, tmin_to_json(r),
         interval_text(r.enclosure) + (r.converged ? " converged" : " not converged") + " depth " +
             std::to_string(r.depth) + "\n");
    return kExitOk;
}

int cmd_classify(const Options& o) {
    const SymbolSeq s = seq_from_json(parse_json_arg(o.seq, "sequence descriptor"));
    const Classification c = classify(ModelPoint(o.t, s), o.cfg.budget, o.cfg);
    std::string text = to_string(c.kind);
    if (c.kind == Classification::Kind::NotInJ) text += "(" + std::to_string(c.first_failing_step) + ")";
    if (c.kind == Classification::Kind::EscapeCertified) text += " at step " + std::to_string(c.certificate_step);
    if (c.kind == Classification::Kind::Unknown) text += " " + interval_text(c.evidence);
    emit(o, classification_to_json(c), text + "\n");
    return kExitOk;
}

int cmd_strata(const Options& o) {
    const SymbolSeq s = seq_from_json(parse_json_arg(o.seq, "sequence descriptor"));
    const AlphaIndex alpha = alpha_from_json(parse_json_arg(o.alpha, "alpha"));
    const ModelPoint x = o.have_t ? ModelPoint(o.t, s) : endpoint_of(s, o.cfg);
    const TriBool member = in_X(alpha, x, o.cfg);
    json j = {{"alpha", alpha_to_json(alpha)}, {"t", x.t}, {"in_X", tribool_to_json(member)}};
    std::string text = "in_X: " + to_string(member) + "\n";
    if (o.extend_floor >= 0) {
        const std::uint64_t N = find_extension(alpha, x, static_cast<std::uint64_t>(o.extend_floor), o.cfg);
        j["extension"] = N;
        text += "extension N: " + std::to_string(N) + "\n";
    }
    emit(o, j, text);
    return kExitOk;
}

int cmd_witness(const Options& o) {
    const SymbolSeq s = seq_from_json(parse_json_arg(o.seq, "sequence descriptor"));
    const AlphaIndex alpha = alpha_from_json(parse_json_arg(o.alpha, "alpha"));
    const auto reps = nowhere_dense_demo(endpoint_of(s, o.cfg), alpha, o.N, o.count, o.cfg);
    json arr = json::array();
    std::string text;
    for (const auto& r : reps) {
        arr.push_back(witness_to_json(r));
        text += "m=" + std::to_string(r.m) + " claim1 " + interval_text(r.claim1_margin) + " claim2 " +
                interval_text(r.claim2_bound) + " distance " + fmt(r.distance_to_base) + "\n";
    }
    emit(o, arr, text);
    return kExitOk;
}

int cmd_render(const Options& o) {
    if (o.viewport.size() != 4) throw ParseError("--viewport expects re_min,re_max,im_min,im_max");
    const Viewport vp{o.viewport[0], o.viewport[1], o.viewport[2], o.viewport[3], o.width, o.height};
    const std::string path = o.out.empty() ? "escape.ppm" : o.out;
    const RenderSummary s = render_escape(parse_complex(o.a), vp, o.iterations, o.radius, path);
    const json j = render_summary_to_json(s);
    const std::string text = "escaped " + std::to_string(s.escaped_pixels) + " retained " +
                             std::to_string(s.retained_pixels) + " hash " + std::to_string(s.hash) + "\n";
    std::cout << (o.cfg.format == OutputFormat::Json ? j.dump(2) + "\n" : text);
    return kExitOk;
}

int cmd_cycle(const Options& o) {
    const CycleInfo c = find_cycle(parse_complex(o.a), o.period, parse_complex(o.z0));
    std::string text = to_string(c.kind) + " period " + std::to_string(c.period) + " multiplier " +
                       fmt(c.multiplier.re) + (c.multiplier.im < 0 ? "" : "+") + fmt(c.multiplier.im) + "i\n";
    for (const auto& p : c.points) text += "  " + fmt(p.re) + (p.im < 0 ? "" : "+") + fmt(p.im) + "i\n";
    emit(o, cycle_to_json(c), text);
    return kExitOk;
}

int cmd_verify(const Options& o) {
    const VerifyReport r = run_verification(o.cfg);
    emit(o, report_to_json(r), report_to_text(r));
    return r.passed() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cantor bouquet model of exp(z) - 1 and plane dynamics of e^z + a"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--tol", o.cfg.tolerance, "Target enclosure width")->capture_default_str();
    app.add_option("--budget", o.cfg.budget, "Iteration / scan budget")->capture_default_str();
    app.add_option("--seed", o.cfg.seed, "Seed for sampled suites")->capture_default_str();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--out", o.out, "Write the report (render: the image) to this path");

    auto seq_opt = [&](CLI::App* sc) {
        sc->add_option("--seq,seq", o.seq, "Sequence descriptor (JSON, or @file)")->required();
    };

    auto* tstar = app.add_subcommand("tstar", "Enclosure of t* for the shifted sequence");
    seq_opt(tstar);
    tstar->add_option("--shift", o.shift, "Shift n");

    auto* tmin = app.add_subcommand("tmin", "Enclosure of the endpoint height t_s");
    seq_opt(tmin);

    auto* cls = app.add_subcommand("classify", "Classify the model point <t, s>");
    seq_opt(cls);
    cls->add_option("--t", o.t, "Coordinate t >= 0")->required();

    auto* strata = app.add_subcommand("strata", "Membership in X_alpha, optional extension search");
    seq_opt(strata);
    strata->add_option("--alpha", o.alpha, "Alpha index as a JSON list")->capture_default_str();
    auto* topt = strata->add_option("--t", o.t, "Coordinate t (default: the endpoint)");
    strata->add_option("--extend", o.extend_floor, "Search the least extension N >= this floor");

    auto* wit = app.add_subcommand("witness", "Witness family showing X_{alpha^N} is nowhere dense in X_alpha");
    seq_opt(wit);
    wit->add_option("--alpha", o.alpha, "Alpha index as a JSON list")->required();
    wit->add_option("--N", o.N, "Extension N")->required();
    wit->add_option("--count", o.count, "Number of witnesses")->capture_default_str();

    auto* render = app.add_subcommand("render", "Escape-time image of e^z + a (P6)");
    render->add_option("--a", o.a, "Parameter a, e.g. -1 or -2+0.5i")->capture_default_str();
    render->add_option("--viewport", o.viewport, "re_min re_max im_min im_max")->expected(4)->delimiter(',');
    render->add_option("--width", o.width, "Pixels")->capture_default_str();
    render->add_option("--height", o.height, "Pixels")->capture_default_str();
    render->add_option("--iter", o.iterations, "Maximum iterations")->capture_default_str();
    render->add_option("--radius", o.radius, "Escape when Re z exceeds this")->capture_default_str();

    auto* cyc = app.add_subcommand("cycle", "Find a periodic cycle by Newton's method");
    cyc->add_option("--a", o.a, "Parameter a")->capture_default_str();
    cyc->add_option("--period", o.period, "Period")->capture_default_str();
    cyc->add_option("--z0", o.z0, "Starting point")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Run every invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    o.have_t = topt->count() > 0;
    o.cfg.format = o.format == "text" ? OutputFormat::Text : OutputFormat::Json;

    try {
        o.cfg.validate();
        if (*tstar) return cmd_tstar(o);
        if (*tmin) return cmd_tmin(o);
        if (*cls) return cmd_classify(o);
        if (*strata) return cmd_strata(o);
        if (*wit) return cmd_witness(o);
        if (*render) return cmd_render(o);
        if (*cyc) return cmd_cycle(o);
        if (*ver) return cmd_verify(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

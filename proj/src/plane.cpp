#include "bouquet/plane.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "bouquet/errors.hpp"

namespace bouquet {

namespace {

using cplx = std::complex<double>;

void check_param(const ComplexPoint& a) {
    if (std::abs(a.value()) > kMaxParam) throw InvalidInput("|a| must not exceed 10");
}

cplx step(cplx a, cplx z) { return std::exp(z) + a; }

}  // namespace

ComplexPoint::ComplexPoint(double re_, double im_) : re(re_), im(im_) {
    if (!std::isfinite(re) || !std::isfinite(im)) throw InvalidInput("complex point components must be finite");
}

Orbit iterate(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n) {
    check_param(a);
    Orbit o;
    cplx w = z.value();
    o.points.push_back(z);
    for (std::uint64_t k = 0;; ++k) {
        if (w.real() > kEscapeGuard) {
            o.escape = k;
            break;
        }
        if (k == n) break;
        w = step(a.value(), w);
        o.points.push_back(ComplexPoint::from(w));
    }
    return o;
}

std::vector<std::int64_t> itinerary(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n) {
    std::vector<std::int64_t> out;
    if (n == 0) return out;
    const Orbit o = iterate(a, z, n - 1);
    for (const auto& p : o.points) out.push_back(std::llround(p.im / (2.0 * std::numbers::pi)));
    return out;
}

EscapeRecord escape_record(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n) {
    EscapeRecord r;
    const Orbit o = iterate(a, z, n);
    r.escaped = o.escape.has_value();
    r.first_exceed = o.escape;
    for (std::size_t k = 0; k < o.points.size() && k < n; ++k)
        r.itinerary.push_back(std::llround(o.points[k].im / (2.0 * std::numbers::pi)));
    return r;
}

TriBool escape_region_A(const ComplexPoint& a, double R, const ComplexPoint& z, std::uint64_t budget) {
    if (!(R > 0.0)) throw InvalidInput("R must be positive");
    const Orbit o = iterate(a, z, budget);
    for (std::size_t k = 1; k < o.points.size(); ++k)
        if (std::abs(o.points[k].value()) < R) return TriBool::no();
    if (o.points.size() < 2) return TriBool::unknown();
    const ComplexPoint& last = o.points.back();
    if (last.re > R + std::abs(a.value()) + 1.0) return TriBool::yes();
    return TriBool::unknown(Interval::point(last.re));
}

std::string to_string(CycleInfo::Kind k) {
    switch (k) {
        case CycleInfo::Kind::Attracting: return "Attracting";
        case CycleInfo::Kind::Parabolic: return "Parabolic";
        case CycleInfo::Kind::Repelling: return "Repelling";
        case CycleInfo::Kind::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

CycleInfo::Kind classify_multiplier(std::complex<double> m) {
    const double r = std::abs(m);
    if (r < 1.0 - kParabolicTol) return CycleInfo::Kind::Attracting;
    if (r > 1.0 + kParabolicTol) return CycleInfo::Kind::Repelling;
    for (int q = 1; q <= kMaxRootOrder; ++q)
        for (int p = 0; p < q; ++p)
            if (std::abs(m - std::polar(1.0, 2.0 * std::numbers::pi * p / q)) <= kParabolicTol)
                return CycleInfo::Kind::Parabolic;
    return CycleInfo::Kind::Indeterminate;
}

CycleInfo find_cycle(const ComplexPoint& a, std::uint64_t period, const ComplexPoint& seed, std::uint64_t max_steps) {
    check_param(a);
    if (period < 1) throw InvalidInput("period must be at least 1");
    const cplx av = a.value();

    // Returns f^p(z) - z and (f^p)'(z).
    auto eval = [&](cplx z, cplx& deriv) {
        cplx w = z;
        deriv = 1.0;
        for (std::uint64_t i = 0; i < period; ++i) {
            if (w.real() > kEscapeGuard) throw NoConvergence("cycle search left the plane guard");
            deriv *= std::exp(w);
            w = step(av, w);
        }
        return w - z;
    };

    cplx z = seed.value();
    bool converged = false;
    double last_step = kInf;
    for (std::uint64_t it = 0; it < max_steps; ++it) {
        cplx d;
        const cplx g = eval(z, d);
        if (!std::isfinite(std::abs(g))) throw NoConvergence("cycle search diverged");
        if (std::abs(g) < 1e-10) converged = true;
        const cplx denom = d - 1.0;
        if (std::abs(denom) == 0.0) break;
        const cplx dz = g / denom;
        const double s = std::abs(dz);
        // Past convergence, keep refining while steps shrink; a multiple
        // root is approached linearly.
        if (converged && (s >= last_step || s <= 1e-15 * (1.0 + std::abs(z)))) break;
        z -= dz;
        last_step = s;
    }
    cplx d;
    const cplx g = eval(z, d);
    if (!(std::abs(g) < 1e-10)) throw NoConvergence("Newton iteration did not reach residual 1e-10");

    CycleInfo info;
    info.period = period;
    info.residual = std::abs(g);
    cplx w = z;
    cplx mult = 1.0;
    for (std::uint64_t i = 0; i < period; ++i) {
        info.points.push_back(ComplexPoint::from(w));
        mult *= std::exp(w);
        w = step(av, w);
    }
    info.multiplier = ComplexPoint::from(mult);
    info.kind = classify_multiplier(mult);
    return info;
}

void Viewport::validate() const {
    if (!(re_max > re_min) || !(im_max > im_min) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
        !std::isfinite(im_min) || !std::isfinite(im_max))
        throw InvalidInput("viewport is degenerate");
    if (width_px < 1 || height_px < 1) throw InvalidInput("viewport needs at least one pixel");
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string EscapeImage::ppm() const {
    std::string out = "P6\n" + std::to_string(viewport.width_px) + " " + std::to_string(viewport.height_px) + "\n255\n";
    out.reserve(out.size() + gray.size() * 3);
    for (std::uint8_t g : gray) out.append(3, static_cast<char>(g));
    return out;
}

EscapeImage render_escape(const ComplexPoint& a, const Viewport& vp, std::uint64_t max_iter, double R) {
    check_param(a);
    vp.validate();
    if (!(R > 0.0)) throw InvalidInput("R must be positive");
    if (max_iter < 1) throw InvalidInput("max_iter must be at least 1");
    EscapeImage img;
    img.viewport = vp;
    img.gray.resize(static_cast<std::size_t>(vp.width_px) * vp.height_px);
    const double dx = (vp.re_max - vp.re_min) / vp.width_px;
    const double dy = (vp.im_max - vp.im_min) / vp.height_px;
    const cplx av = a.value();
    for (std::uint32_t row = 0; row < vp.height_px; ++row) {
        const double im = vp.im_max - (row + 0.5) * dy;
        for (std::uint32_t col = 0; col < vp.width_px; ++col) {
            cplx z(vp.re_min + (col + 0.5) * dx, im);
            std::uint8_t value = 0;
            for (std::uint64_t n = 0; n <= max_iter; ++n) {
                if (z.real() > R) {
                    value = static_cast<std::uint8_t>(255 - (200 * n) / max_iter);
                    break;
                }
                if (n == max_iter) break;
                z = step(av, z);
            }
            img.gray[static_cast<std::size_t>(row) * vp.width_px + col] = value;
            if (value) ++img.summary.escaped_pixels;
            else ++img.summary.retained_pixels;
        }
    }
    img.summary.hash = fnv1a64(img.ppm());
    return img;
}

RenderSummary render_escape(const ComplexPoint& a, const Viewport& vp, std::uint64_t max_iter, double R,
                            const std::string& path) {
    const EscapeImage img = render_escape(a, vp, max_iter, R);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    const std::string bytes = img.ppm();
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error("failed writing " + path);
    return img.summary;
}

}  // namespace bouquet

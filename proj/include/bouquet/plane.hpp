#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bouquet/interval.hpp"

namespace bouquet {

// Parameters are restricted to |a| <= kMaxParam so that Re z > kEscapeGuard
// forces escape under f_a(z) = e^z + a.
inline constexpr double kMaxParam = 10.0;
inline constexpr double kEscapeGuard = 50.0;
inline constexpr double kParabolicTol = 1e-6;
inline constexpr int kMaxRootOrder = 12;

struct ComplexPoint {
    double re = 0.0;
    double im = 0.0;

    ComplexPoint() = default;
    ComplexPoint(double re, double im = 0.0);

    std::complex<double> value() const { return {re, im}; }
    static ComplexPoint from(std::complex<double> z) { return {z.real(), z.imag()}; }

    bool operator==(const ComplexPoint&) const = default;
};

struct Orbit {
    std::vector<ComplexPoint> points;     // z, f(z), ... up to the guard
    std::optional<std::uint64_t> escape;  // index of the first point with Re > guard
};

struct EscapeRecord {
    bool escaped = false;
    std::optional<std::uint64_t> first_exceed;
    std::vector<std::int64_t> itinerary;
};

// Orbit z, f(z), ..., f^n(z), stopping at the first point past the guard.
Orbit iterate(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n);

// round(Im f^k(z) / 2 pi) for k < n; truncated after the guard point.
std::vector<std::int64_t> itinerary(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n);

EscapeRecord escape_record(const ComplexPoint& a, const ComplexPoint& z, std::uint64_t n);

// |f^n(z)| >= R for 1 <= n <= budget, with Re > R + |a| + 1 at the last
// iterate. Stops early once the guard is passed.
TriBool escape_region_A(const ComplexPoint& a, double R, const ComplexPoint& z, std::uint64_t budget);

struct CycleInfo {
    enum class Kind { Attracting, Parabolic, Repelling, Indeterminate };

    std::uint64_t period = 1;
    std::vector<ComplexPoint> points;
    ComplexPoint multiplier;
    Kind kind = Kind::Indeterminate;
    double residual = 0.0;
};

std::string to_string(CycleInfo::Kind k);

CycleInfo::Kind classify_multiplier(std::complex<double> m);

// Newton's method on f^period(z) - z.
CycleInfo find_cycle(const ComplexPoint& a, std::uint64_t period, const ComplexPoint& seed,
                     std::uint64_t max_steps = 500);

struct Viewport {
    double re_min = -2.0;
    double re_max = 4.0;
    double im_min = -3.141592653589793;
    double im_max = 3.141592653589793;
    std::uint32_t width_px = 200;
    std::uint32_t height_px = 200;

    void validate() const;
};

struct RenderSummary {
    std::uint64_t escaped_pixels = 0;
    std::uint64_t retained_pixels = 0;
    std::uint64_t hash = 0;  // FNV-1a 64 of the P6 file bytes
};

struct EscapeImage {
    Viewport viewport;
    std::vector<std::uint8_t> gray;  // row-major, top row = im_max
    RenderSummary summary;

    // Complete P6 file contents.
    std::string ppm() const;
};

// Pixel centers; an escaping pixel (first n with Re f^n(z) > R) gets
// 255 - floor(200 n / max_iter), a retained pixel gets 0.
EscapeImage render_escape(const ComplexPoint& a, const Viewport& vp, std::uint64_t max_iter, double R);

// Renders and writes the P6 file.
RenderSummary render_escape(const ComplexPoint& a, const Viewport& vp, std::uint64_t max_iter, double R,
                            const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace bouquet

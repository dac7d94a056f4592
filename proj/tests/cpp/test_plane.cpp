#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bouquet/errors.hpp"
#include "bouquet/plane.hpp"

using namespace bouquet;

namespace {

using cd = std::complex<double>;

double bisect(double (*f)(double), double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((f(lo) < 0.0) == (f(mid) < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(Iterate, MatchesDirectEvaluation) {
    const cd a(-0.3, 0.7), z(0.2, -1.1);
    const Orbit o = iterate(ComplexPoint::from(a), ComplexPoint::from(z), 6);
    ASSERT_EQ(o.points.size(), 7u);
    cd w = z;
    for (std::size_t k = 0; k < o.points.size(); ++k) {
        EXPECT_NEAR(o.points[k].re, w.real(), 1e-12 * (1 + std::abs(w)));
        EXPECT_NEAR(o.points[k].im, w.imag(), 1e-12 * (1 + std::abs(w)));
        w = std::exp(w) + a;
    }
    EXPECT_FALSE(o.escape.has_value());
}

TEST(Iterate, StopsAtGuard) {
    const Orbit o = iterate(ComplexPoint(-1.0), ComplexPoint(3.0), 20);
    ASSERT_TRUE(o.escape.has_value());
    EXPECT_EQ(*o.escape, 2u);  // 3 -> e^3 - 1 ~ 19.1 -> e^19.1 - 1
    EXPECT_EQ(o.points.size(), 3u);
    EXPECT_THROW(iterate(ComplexPoint(11.0), ComplexPoint(0.0), 3), InvalidInput);
    EXPECT_THROW(ComplexPoint(std::nan(""), 0.0), InvalidInput);
}

TEST(Itinerary, RealAxisIsZero) {
    for (double x : {-3.0, -0.5, 0.0, 0.5}) {
        for (std::int64_t k : itinerary(ComplexPoint(-2.0), ComplexPoint(x), 10)) EXPECT_EQ(k, 0);
    }
}

TEST(Itinerary, ReadsStripIndex) {
    const double tau = 2.0 * std::numbers::pi;
    const auto it = itinerary(ComplexPoint(-2.0), ComplexPoint(-1.0, 3.0 * tau), 3);
    ASSERT_GE(it.size(), 1u);
    EXPECT_EQ(it[0], 3);
    const EscapeRecord r = escape_record(ComplexPoint(-1.0), ComplexPoint(3.0, tau), 10);
    EXPECT_TRUE(r.escaped);
    EXPECT_EQ(r.itinerary.front(), 1);
}

TEST(RegionA, Decisions) {
    const ComplexPoint a(-1.0);
    EXPECT_TRUE(escape_region_A(a, 5.0, ComplexPoint(3.0), 20).is_true());
    EXPECT_TRUE(escape_region_A(a, 5.0, ComplexPoint(0.5), 20).is_false());
    // f(1.95) ~ 6.03 clears |f| >= 5 but not Re > 7 within one step.
    EXPECT_TRUE(escape_region_A(a, 5.0, ComplexPoint(1.95), 1).is_unknown());
    EXPECT_TRUE(escape_region_A(a, 5.0, ComplexPoint(1.95), 5).is_true());
}

TEST(Cycle, ParabolicFixedPoint) {
    const CycleInfo c = find_cycle(ComplexPoint(-1.0), 1, ComplexPoint(0.3));
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_NEAR(c.points[0].re, 0.0, 1e-5);
    EXPECT_NEAR(c.multiplier.re, 1.0, 1e-5);
    EXPECT_EQ(c.kind, CycleInfo::Kind::Parabolic);
}

TEST(Cycle, AttractingFixedPoint) {
    const double x = bisect([](double t) { return std::exp(t) - 2.0 - t; }, -3.0, 0.0);
    const CycleInfo c = find_cycle(ComplexPoint(-2.0), 1, ComplexPoint(-1.0));
    EXPECT_NEAR(c.points[0].re, x, 1e-10);
    EXPECT_NEAR(c.points[0].im, 0.0, 1e-12);
    EXPECT_NEAR(c.multiplier.re, std::exp(x), 1e-10);
    EXPECT_EQ(c.kind, CycleInfo::Kind::Attracting);
}

TEST(Cycle, PeriodTwoMultiplierIsProductOfDerivatives) {
    const cd a(-2.5, 1.0);
    const CycleInfo c = find_cycle(ComplexPoint::from(a), 2, ComplexPoint(-2.0, 0.5));
    ASSERT_EQ(c.points.size(), 2u);
    const cd z0 = c.points[0].value(), z1 = c.points[1].value();
    EXPECT_LT(std::abs(std::exp(z0) + a - z1), 1e-9);
    EXPECT_LT(std::abs(std::exp(z1) + a - z0), 1e-9);
    const cd m = std::exp(z0) * std::exp(z1);
    EXPECT_NEAR(c.multiplier.re, m.real(), 1e-8);
    EXPECT_NEAR(c.multiplier.im, m.imag(), 1e-8);
}

TEST(Cycle, MultiplierClasses) {
    EXPECT_EQ(classify_multiplier({0.5, 0.0}), CycleInfo::Kind::Attracting);
    EXPECT_EQ(classify_multiplier({2.0, 0.0}), CycleInfo::Kind::Repelling);
    EXPECT_EQ(classify_multiplier(std::polar(1.0, 2.0 * std::numbers::pi / 3.0)), CycleInfo::Kind::Parabolic);
    EXPECT_EQ(classify_multiplier(std::polar(1.0, 1.0)), CycleInfo::Kind::Indeterminate);
    EXPECT_THROW(find_cycle(ComplexPoint(-1.0), 0, ComplexPoint(0.0)), InvalidInput);
}

TEST(Render, CountsAndDeterminism) {
    Viewport vp;
    vp.width_px = 40;
    vp.height_px = 30;
    const EscapeImage a = render_escape(ComplexPoint(-1.0), vp, 60, kEscapeGuard);
    const EscapeImage b = render_escape(ComplexPoint(-1.0), vp, 60, kEscapeGuard);
    EXPECT_EQ(a.summary.escaped_pixels + a.summary.retained_pixels, 1200u);
    EXPECT_EQ(a.summary.hash, b.summary.hash);
    EXPECT_EQ(a.summary.hash, fnv1a64(a.ppm()));
    EXPECT_EQ(a.ppm().rfind("P6\n40 30\n255\n", 0), 0u);
    EXPECT_EQ(a.ppm().size(), std::string("P6\n40 30\n255\n").size() + 3u * 1200u);
    EXPECT_GT(a.summary.escaped_pixels, 0u);
    EXPECT_GT(a.summary.retained_pixels, 0u);
}

TEST(Render, PixelValuesFollowEscapeTime) {
    Viewport vp{-2.0, 4.0, -1.0, 1.0, 12, 4};
    const std::uint64_t max_iter = 40;
    const EscapeImage img = render_escape(ComplexPoint(-1.0), vp, max_iter, kEscapeGuard);
    for (std::uint32_t r = 0; r < vp.height_px; ++r) {
        for (std::uint32_t c = 0; c < vp.width_px; ++c) {
            const double re = vp.re_min + (c + 0.5) * (vp.re_max - vp.re_min) / vp.width_px;
            const double im = vp.im_max - (r + 0.5) * (vp.im_max - vp.im_min) / vp.height_px;
            cd z(re, im);
            int want = 0;
            for (std::uint64_t n = 1; n <= max_iter; ++n) {
                z = std::exp(z) - 1.0;
                if (z.real() > kEscapeGuard) {
                    want = 255 - static_cast<int>(200 * n / max_iter);
                    break;
                }
            }
            EXPECT_EQ(img.gray[r * vp.width_px + c], want) << r << "," << c;
        }
    }
}

TEST(Render, RejectsDegenerateViewport) {
    EXPECT_THROW(render_escape(ComplexPoint(-1.0), Viewport{1.0, 1.0, -1.0, 1.0, 10, 10}, 10, kEscapeGuard),
                 InvalidInput);
    EXPECT_THROW(render_escape(ComplexPoint(-1.0), Viewport{0.0, 1.0, -1.0, 1.0, 0, 10}, 10, kEscapeGuard),
                 InvalidInput);
}

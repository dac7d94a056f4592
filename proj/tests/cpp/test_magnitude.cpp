#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bouquet/magnitude.hpp"

using namespace bouquet;

namespace {

long double F(long double t) { return std::expm1l(t); }

}  // namespace

TEST(DirectedRounding, EnclosesLongDoubleValues) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 200.0);
    for (int i = 0; i < 2000; ++i) {
        const double t = U(rng);
        EXPECT_LE(static_cast<long double>(f_round(t, Dir::Down)), F(t));
        EXPECT_GE(static_cast<long double>(f_round(t, Dir::Up)), F(t));
        EXPECT_LE(static_cast<long double>(finv_round(t, Dir::Down)), std::log1pl(t));
        EXPECT_GE(static_cast<long double>(finv_round(t, Dir::Up)), std::log1pl(t));
    }
    EXPECT_EQ(f_round(0.0, Dir::Up), 0.0);
    EXPECT_EQ(finv_round(0.0, Dir::Down), 0.0);
}

TEST(Bound, SmallPowersMaterialize) {
    const Bound lo = f_power(3.0, 2, Dir::Down);
    const Bound hi = f_power(3.0, 2, Dir::Up);
    EXPECT_EQ(lo.level, 0u);
    const long double oracle = F(F(3.0L));
    EXPECT_LE(static_cast<long double>(lo.y), oracle);
    EXPECT_GE(static_cast<long double>(hi.y), oracle);
    EXPECT_LT(hi.y - lo.y, 1e-13 * oracle);
}

TEST(Bound, TowersStayLifted) {
    const Bound b = f_power(3.0, 4, Dir::Up);
    EXPECT_GE(b.level, 1u);
    EXPECT_EQ(lower_value(f_power(3.0, 4, Dir::Down)), kLiftCap);
    EXPECT_TRUE(std::isinf(upper_value(b)));

    // Stripping the applications back off recovers the base.
    const Bound back_lo = finv_k(f_power(3.0, 4, Dir::Down), 4, Dir::Down);
    const Bound back_hi = finv_k(f_power(3.0, 4, Dir::Up), 4, Dir::Up);
    EXPECT_EQ(back_lo.level, 0u);
    EXPECT_LE(back_lo.y, 3.0);
    EXPECT_GE(back_hi.y, 3.0);
    EXPECT_NEAR(back_hi.y, 3.0, 1e-12);
}

TEST(Bound, NegativePowerIsIteratedLog) {
    const Bound b = f_power(100.0, -2, Dir::Up);
    EXPECT_NEAR(b.y, static_cast<double>(std::log1pl(std::log1pl(100.0L))), 1e-14);
}

TEST(Bound, CompareTowers) {
    EXPECT_EQ(compare(f_power(3.0, 5, Dir::Up), f_power(4.0, 5, Dir::Down)), -1);
    EXPECT_EQ(compare(f_power(4.0, 5, Dir::Down), f_power(3.0, 5, Dir::Up)), 1);
    EXPECT_EQ(compare(f_power(3.0, 6, Dir::Down), f_power(100.0, 4, Dir::Up)), 1);
    EXPECT_EQ(compare(Bound::value(2.0), Bound::value(2.0)), 0);
}

TEST(Bound, AddUpperDominatesSum) {
    const Bound b{1, 5.0};
    EXPECT_GE(upper_value(add_upper(b, 2.0)), static_cast<double>(F(5.0L) + 2.0L));
    // At tower size the increment is absorbed almost entirely.
    const Bound t = normalize(Bound{3, 10.0}, Dir::Up);
    const Bound s = add_upper(t, 1e6);
    EXPECT_EQ(s.level, t.level);
    EXPECT_GE(s.y, t.y);
    EXPECT_LT(s.y - t.y, 1e-9);
}

TEST(Bound, SumOfInverseBrackets) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double a = U(rng), b = U(rng);
        const long double want = std::log1pl(static_cast<long double>(a) + b);
        EXPECT_LE(static_cast<long double>(lower_value(sum_finv_lower(Bound::value(a), Bound::value(b)))), want);
        EXPECT_GE(static_cast<long double>(upper_value(sum_finv_upper(Bound::value(a), Bound::value(b)))), want);
    }
}

TEST(Bound, SumOfInverseWithTower) {
    // ln(1 + F^3(5) + 7) lies just above F^2(5).
    const Bound big_lo = f_power(5.0, 3, Dir::Down);
    const Bound big_hi = f_power(5.0, 3, Dir::Up);
    const Bound lo = sum_finv_lower(big_lo, Bound::value(7.0));
    const Bound hi = sum_finv_upper(big_hi, Bound::value(7.0));
    EXPECT_GE(compare(hi, f_power(5.0, 2, Dir::Down)), 0);
    EXPECT_LE(compare(f_power(5.0, 2, Dir::Down), hi), 0);
    EXPECT_TRUE(certainly_le(Magnitude{lo, lo}, Magnitude{hi, hi}));
    EXPECT_TRUE(certainly_le(Magnitude{f_power(5.0, 2, Dir::Down), f_power(5.0, 2, Dir::Down)}, Magnitude{hi, hi}));
}

TEST(Magnitude, OrderingPredicates) {
    const Magnitude three = Magnitude::exact(3.0);
    const Magnitude tower{f_power(3.0, 4, Dir::Down), f_power(3.0, 4, Dir::Up)};
    EXPECT_TRUE(certainly_le(three, tower));
    EXPECT_TRUE(certainly_gt(tower, three));
    EXPECT_FALSE(certainly_gt(three, three));
    EXPECT_TRUE(certainly_le(three, three));
    EXPECT_TRUE(certainly_greater(tower, 1e200));
    EXPECT_FALSE(certainly_at_most(tower, 1e200));
}

TEST(Magnitude, BackwardStepMatchesOracle) {
    const Magnitude r = backward_step(Magnitude::exact(1.0), Magnitude::exact(0.5));
    const long double want = std::log1pl(1.5L);
    EXPECT_LE(static_cast<long double>(r.lo.y), want);
    EXPECT_GE(static_cast<long double>(r.hi.y), want);
}

#include <gtest/gtest.h>

#include "sidonlab/errors.hpp"
#include "sidonlab/rational.hpp"

using namespace sidonlab;

TEST(rational, parse_forms)
{
    EXPECT_EQ(parse_rational("1/5"), Rational(1, 5));
    EXPECT_EQ(parse_rational("2/10"), Rational(1, 5));
    EXPECT_EQ(parse_rational("0.2"), Rational(1, 5));
    EXPECT_EQ(parse_rational("-3"), Rational(-3));
    EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
    EXPECT_EQ(parse_rational("7/-14"), Rational(-1, 2));
}

TEST(rational, parse_rejects)
{
    for (const char* bad : {"", "1/0", "abc", "1/", "/2", "0.2.3", "1e5", " 1"})
        EXPECT_THROW(parse_rational(bad), ValidationError) << bad;
}

TEST(rational, to_string_canonical)
{
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(4, 2)), "2");
    EXPECT_EQ(parse_rational(to_string(Rational(-22, 7))), Rational(-22, 7));
}

TEST(rational, integer_roots)
{
    for (std::int64_t n = 0; n < 2000; ++n) {
        const auto r = isqrt(n);
        EXPECT_LE(r * r, n);
        EXPECT_GT((r + 1) * (r + 1), n);
        const auto c = ceil_sqrt(n);
        EXPECT_GE(c * c, n);
        if (c > 0) EXPECT_LT((c - 1) * (c - 1), n);
        EXPECT_EQ(is_perfect_square(n), r * r == n);
    }
    EXPECT_EQ(isqrt(3037000499LL * 3037000499LL), 3037000499LL);
}

TEST(rational, floor_ceil)
{
    EXPECT_EQ(floor(Rational(-7, 2)), -4);
    EXPECT_EQ(ceil(Rational(-7, 2)), -3);
    EXPECT_EQ(floor(Rational(7, 2)), 3);
    EXPECT_EQ(ceil(Rational(7, 2)), 4);
    EXPECT_EQ(ceil(Rational(4)), 4);
}

TEST(rational, half_power_scaling)
{
    EXPECT_EQ(scale_by_half_power(Rational(1, 3), 361, 3), Rational(361 * 19, 3));
    EXPECT_EQ(scale_by_half_power(Rational(2), 10, 2), Rational(20));
    EXPECT_EQ(scale_by_half_power(Rational(2), 10, -2), Rational(1, 5));
    EXPECT_FALSE(scale_by_half_power(Rational(2), 10, 1).has_value());
}

TEST(rational, to_int64_range)
{
    EXPECT_EQ(to_int64(BigInt("-9223372036854775808")), INT64_MIN);
    EXPECT_THROW(to_int64(BigInt("9223372036854775808")), ValidationError);
}

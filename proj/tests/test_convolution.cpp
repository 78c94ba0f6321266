#include <gtest/gtest.h>

#include "sidonlab/convolution.hpp"
#include "sidonlab/rng.hpp"

using namespace sidonlab;

namespace {

Sequence random_sequence(SplitMix64& rng, std::size_t len, int bits) {
    Sequence s;
    s.lowest = rng.uniform(-20, 20);
    for (std::size_t i = 0; i < len; ++i) {
        BigInt c = 0;
        for (int b = 0; b < bits; b += 32) c = (c << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
        if (rng() & 1) c = -c;
        s.coeffs.push_back(c);
    }
    return s;
}

Sequence naive_product(std::span<const Sequence> fs) {
    Sequence acc{0, {1}};
    for (const auto& f : fs) {
        Sequence next{acc.lowest + f.lowest, std::vector<BigInt>(acc.coeffs.size() + f.coeffs.size() - 1, 0)};
        for (std::size_t i = 0; i < acc.coeffs.size(); ++i)
            for (std::size_t j = 0; j < f.coeffs.size(); ++j) next.coeffs[i + j] += acc.coeffs[i] * f.coeffs[j];
        acc = next;
    }
    return acc;
}

void expect_same(const Sequence& a, const Sequence& b) {
    for (auto e = std::min(a.lowest, b.lowest); e <= std::max(a.highest(), b.highest()); ++e)
        ASSERT_EQ(a.at(e), b.at(e)) << "exponent " << e;
}

} // namespace

TEST(convolution, matches_naive_both_engines)
{
    SplitMix64 rng(17);
    for (int t = 0; t < 30; ++t) {
        std::vector<Sequence> fs;
        const auto k = rng.uniform(1, 4);
        for (int i = 0; i < k; ++i) fs.push_back(random_sequence(rng, rng.uniform(1, 40), 32 * static_cast<int>(rng.uniform(1, 3))));
        const auto expected = naive_product(fs);
        expect_same(convolve(fs, {}), expected);
        expect_same(convolve(fs, {.ntt_threshold = 0, .threads = 3}), expected);
        for (int probe = 0; probe < 5; ++probe) {
            const auto e = rng.uniform(expected.lowest - 2, expected.highest() + 2);
            EXPECT_EQ(product_coefficient(fs, e, {}), expected.at(e));
            EXPECT_EQ(product_coefficient(fs, e, {.ntt_threshold = 0}), expected.at(e));
        }
    }
}

TEST(convolution, edge_cases)
{
    EXPECT_EQ(convolve(std::span<const Sequence>{}).at(0), 1);
    const std::vector<Sequence> with_zero{{3, {1, 2}}, {0, {}}};
    EXPECT_EQ(convolve(with_zero).coeffs.size(), 0u);
    EXPECT_EQ(product_coefficient(with_zero, 3), 0);
    const std::vector<Sequence> shifted{{-5, {1}}, {7, {2}}};
    const auto p = convolve(shifted, {.ntt_threshold = 0});
    EXPECT_EQ(p.at(2), 2);
    EXPECT_EQ(p.at(1), 0);
}

TEST(convolution, thread_count_does_not_change_result)
{
    SplitMix64 rng(23);
    std::vector<Sequence> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(random_sequence(rng, 300, 64));
    const auto one = convolve(fs, {.ntt_threshold = 0, .threads = 1});
    const auto four = convolve(fs, {.ntt_threshold = 0, .threads = 4});
    EXPECT_EQ(one.lowest, four.lowest);
    EXPECT_EQ(one.coeffs, four.coeffs);
}

TEST(convolution, huge_coefficients_fall_back)
{
    // coefficient bound far beyond the product of all NTT primes
    std::vector<Sequence> fs{{0, {BigInt(1) << 700, 3}}, {0, {BigInt(-1) << 600, 5}}};
    const auto expected = naive_product(fs);
    Sequence out;
    EXPECT_FALSE(ntt::convolve(fs, out));
    expect_same(convolve(fs, {.ntt_threshold = 0}), expected);
}

TEST(ntt, primes_and_roundtrip)
{
    const auto ps = ntt::primes();
    ASSERT_EQ(ps.size(), 16u);
    for (auto p : ps) {
        EXPECT_LT(p, std::uint64_t{1} << 62);
        EXPECT_EQ((p - 1) % (std::uint64_t{1} << 32), 0u);
        EXPECT_EQ(ntt::powmod(3, p - 1, p), 1u);
    }
    SplitMix64 rng(1);
    std::vector<std::uint64_t> a(64);
    for (auto& x : a) x = rng() % ps[2];
    auto b = a;
    ntt::transform(b, false, 2);
    ntt::transform(b, true, 2);
    EXPECT_EQ(a, b);
}

TEST(ntt, crt_lifts_signed)
{
    for (long v : {0L, 1L, -1L, 123456789L, -987654321L}) {
        std::vector<std::uint64_t> r;
        for (std::size_t i = 0; i < 2; ++i) {
            const auto p = ntt::primes()[i];
            r.push_back(v >= 0 ? static_cast<std::uint64_t>(v) % p : p - static_cast<std::uint64_t>(-v) % p);
        }
        EXPECT_EQ(ntt::reconstruct(r), v);
    }
    EXPECT_EQ(ntt::primes_needed(BigInt(1000)), 1u);
    EXPECT_EQ(ntt::primes_needed(BigInt(1) << 62), 2u);
    EXPECT_EQ(ntt::primes_needed(BigInt(1) << 2000), 0u);
}

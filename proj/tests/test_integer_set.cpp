#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "sidonlab/errors.hpp"
#include "sidonlab/integer_set.hpp"
#include "sidonlab/rng.hpp"
#include "sidonlab/suites.hpp"

using namespace sidonlab;

namespace {
std::vector<std::int64_t> elems(const IntegerSet& s) { return {s.elements().begin(), s.elements().end()}; }
}

TEST(integer_set, validation)
{
    EXPECT_NO_THROW(IntegerSet({1, 5}, 5));
    EXPECT_THROW(IntegerSet({0, 2}, 5), ValidationError);
    EXPECT_THROW(IntegerSet({2, 6}, 5), ValidationError);
    EXPECT_THROW(IntegerSet({3, 2}, 5), ValidationError);
    EXPECT_THROW(IntegerSet({2, 2}, 5), ValidationError);
    EXPECT_THROW(IntegerSet({}, 0), ValidationError);
}

TEST(integer_set, erdos_turan_values)
{
    EXPECT_EQ(elems(erdos_turan(3)), (std::vector<std::int64_t>{1, 8, 14}));
    EXPECT_EQ(erdos_turan(3).ambient_n(), 18);
    EXPECT_EQ(elems(erdos_turan(5)), (std::vector<std::int64_t>{1, 12, 25, 35, 42}));
    EXPECT_EQ(erdos_turan(5).ambient_n(), 50);
    EXPECT_THROW(erdos_turan(9), ValidationError);
    EXPECT_THROW(erdos_turan(1), ValidationError);
}

TEST(integer_set, erdos_turan_sidon)
{
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
        const auto s = erdos_turan(p);
        EXPECT_EQ(s.size(), static_cast<std::size_t>(p));
        EXPECT_TRUE(is_sidon(s)) << p;
        EXPECT_TRUE(oracle::sidon_by_sums(s.elements())) << p;
    }
    EXPECT_EQ(representation_profile(erdos_turan(7)).energy(), 91);
}

TEST(integer_set, mian_chowla_values)
{
    EXPECT_EQ(elems(mian_chowla(10)), (std::vector<std::int64_t>{1, 2, 4, 8, 13, 21, 31, 45, 66, 81}));
    EXPECT_EQ(mian_chowla(10).ambient_n(), 81);
    EXPECT_EQ(elems(mian_chowla(30)), oracle::mian_chowla(30));
    EXPECT_THROW(mian_chowla(0), ValidationError);
}

TEST(integer_set, profile_matches_naive)
{
    SplitMix64 rng(11);
    for (int t = 0; t < 40; ++t) {
        const auto s = random_subset(rng, rng.uniform(1, 60));
        const auto prof = representation_profile(s);
        const auto naive = oracle::differences(s.elements());
        for (std::int64_t d = -s.ambient_n(); d <= s.ambient_n(); ++d) {
            const auto it = naive.find(d);
            EXPECT_EQ(prof[d], it == naive.end() ? 0 : it->second);
        }
        EXPECT_EQ(prof.energy(), oracle::quadruple_energy(s.elements()));
        EXPECT_EQ(is_sidon(s), oracle::sidon_by_sums(s.elements()));
    }
}

TEST(integer_set, sidon_energy_criterion)
{
    SplitMix64 rng(5);
    for (int t = 0; t < 60; ++t) {
        const auto s = random_subset(rng, rng.uniform(1, 30));
        const auto k = static_cast<std::int64_t>(s.size());
        EXPECT_EQ(is_sidon(s), representation_profile(s).energy() == 2 * k * k - k);
    }
}

TEST(integer_set, almost_sidon_params)
{
    const auto p = almost_sidon_params(IntegerSet({1, 2, 3}, 3));
    EXPECT_EQ(p.eta, Rational(1, 9));
    EXPECT_EQ(p.delta, Rational(1));
    const auto et = almost_sidon_params(erdos_turan(11));
    EXPECT_EQ(et.eta, 0);
    EXPECT_EQ(et.delta, Rational(11, 16));
    EXPECT_TRUE(et.density_holds);
    // |S| / ceil(sqrt N) = 10/9 is capped
    EXPECT_EQ(almost_sidon_params(mian_chowla(10)).delta, 1);
    EXPECT_THROW(almost_sidon_params(IntegerSet({}, 5)), ValidationError);
}

TEST(integer_set, perturbation)
{
    const auto base = erdos_turan(7);
    EXPECT_EQ(perturb_almost_sidon(base, 0, 7), base);
    const auto a = perturb_almost_sidon(base, 5, 42);
    EXPECT_EQ(a, perturb_almost_sidon(base, 5, 42));
    EXPECT_EQ(a.size(), base.size() + 5);
    EXPECT_EQ(a.ambient_n(), base.ambient_n());
    for (auto x : base.elements()) EXPECT_TRUE(a.contains(x));
    EXPECT_NE(a, perturb_almost_sidon(base, 5, 43));
    const auto full = perturb_almost_sidon(IntegerSet({2}, 4), 3, 1);
    EXPECT_EQ(elems(full), (std::vector<std::int64_t>{1, 2, 3, 4}));
    EXPECT_THROW(perturb_almost_sidon(IntegerSet({2}, 4), 4, 1), ValidationError);
    EXPECT_THROW(perturb_almost_sidon(base, -1, 1), ValidationError);
}

TEST(integer_set, file_round_trip)
{
    SplitMix64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto s = random_subset(rng, rng.uniform(1, 100));
        std::stringstream io;
        write_set(io, s);
        EXPECT_EQ(read_set(io), s);
    }
    std::stringstream empty;
    write_set(empty, IntegerSet({}, 9));
    EXPECT_EQ(read_set(empty), IntegerSet({}, 9));
}

TEST(integer_set, file_parsing)
{
    std::stringstream ok("# comment\nN 10\n1\n# another\n7\n\n");
    EXPECT_EQ(read_set(ok), IntegerSet({1, 7}, 10));
    for (const char* bad : {"", "M 10\n1\n", "N 10\n7\n1\n", "N 10\n11\n", "N 10\nx\n", "N 10\n3 4\n"}) {
        std::stringstream in(bad);
        EXPECT_THROW(read_set(in), ValidationError) << bad;
    }
    EXPECT_THROW(read_set_file("/nonexistent/set.txt"), ValidationError);
}

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sidonlab/errors.hpp"
#include "sidonlab/suites.hpp"
#include "sidonlab/transference.hpp"

using namespace sidonlab;

namespace {
std::vector<std::int64_t> elems(const BohrSet& b) { return b.elements; }
}

TEST(bohr, worked_examples)
{
    const auto empty = bohr_set({}, Rational(1, 10), 100);
    EXPECT_EQ(empty.elements.size(), 21u);
    EXPECT_EQ(empty.width, 10);

    const std::vector<Frequency> half{{1, 2}};
    const auto even = bohr_set(half, Rational(1, 10), 100);
    EXPECT_EQ(even.elements, (std::vector<std::int64_t>{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10}));

    const std::vector<Frequency> third{{1, 3}};
    const auto b = bohr_set(third, Rational(1, 4), 60);
    EXPECT_EQ(b.elements.size(), 11u);
    for (auto n : b.elements) EXPECT_EQ(n % 3, 0);

    EXPECT_THROW(bohr_set(third, Rational(0), 60), ValidationError);
    EXPECT_THROW(bohr_set(third, Rational(3, 5), 60), ValidationError);
}

TEST(bohr, membership_matches_rational_oracle)
{
    SplitMix64 rng(13);
    for (int t = 0; t < 30; ++t) {
        std::vector<Frequency> fs;
        for (int i = 0, r = static_cast<int>(rng.uniform(0, 3)); i < r; ++i) {
            const auto m = rng.uniform(1, 50);
            fs.push_back({rng.uniform(0, m - 1), m});
        }
        const Rational eps(rng.uniform(1, 10), 20);
        const auto n = rng.uniform(1, 200);
        const auto b = bohr_set(fs, eps, n);
        const auto w = floor(eps * n).get_si();
        EXPECT_EQ(b.width, w);
        std::vector<std::int64_t> expected;
        for (std::int64_t x = -w; x <= w; ++x) {
            bool in = true;
            for (const auto& f : fs) in = in && oracle::bohr_member(x, f.k, f.m, eps);
            if (in) expected.push_back(x);
        }
        EXPECT_EQ(elems(b), expected);
        for (auto x : b.elements) {
            EXPECT_TRUE(b.contains(x));
            EXPECT_TRUE(b.contains(-x));
        }
    }
}

TEST(bohr, lower_bound_sign_corrected)
{
    const auto b = bohr_set({}, Rational(1, 10), 100);
    const auto lb = bohr_lower_bound(b, 0);
    EXPECT_EQ(lb.base, 40);
    EXPECT_EQ(lb.bound, Rational(5, 2));
    EXPECT_TRUE(lb.holds);
    EXPECT_FALSE(lb.uncorrected_holds);
}

TEST(lemmas, representation_sum_bound)
{
    const auto sidon = verify_representation_bound(erdos_turan(11));
    EXPECT_EQ(sidon.lhs, 0);
    EXPECT_EQ(sidon.rhs, 11);
    EXPECT_TRUE(sidon.holds);

    const auto small = verify_representation_bound(IntegerSet({1, 2, 3}, 3));
    EXPECT_EQ(small.lhs, 4);
    EXPECT_EQ(small.rhs, 4);
    EXPECT_TRUE(small.holds);

    const auto four = verify_representation_bound(IntegerSet({1, 2, 3, 5}, 5));
    EXPECT_EQ(four.lhs, 8);
    EXPECT_EQ(four.rhs, 8);
    EXPECT_TRUE(four.holds);
}

TEST(lemmas, almost_sidon_size_bound)
{
    const auto pair = verify_size_bound(IntegerSet({1, 2}, 2));
    EXPECT_EQ(pair.lhs, 4);
    EXPECT_EQ(pair.rhs, 8);
    EXPECT_TRUE(pair.holds);
    const auto et = verify_size_bound(erdos_turan(13));
    EXPECT_EQ(et.lhs, 169);
    EXPECT_EQ(et.rhs, 1352);
    const auto small = verify_size_bound(IntegerSet({1, 2, 3}, 3));
    EXPECT_EQ(small.lhs, 8);
    EXPECT_EQ(small.rhs, 12);
    EXPECT_TRUE(small.holds);
    // eta = 3/4 for [1, 4] and 27/8 for [1, 8]
    EXPECT_TRUE(verify_size_bound(IntegerSet({1, 2, 3, 4}, 4)).skipped == false);
    EXPECT_TRUE(verify_size_bound(IntegerSet({1, 2, 3, 4, 5, 6, 7, 8}, 8)).skipped);
}

TEST(lemmas, randomized_perturbations)
{
    SplitMix64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto s = perturb_almost_sidon(erdos_turan(11), rng.uniform(0, 11), rng());
        const auto params = almost_sidon_params(s);
        const auto prof = oracle::differences(s.elements());
        std::int64_t lhs = 0;
        for (const auto& [d, r] : prof)
            if (d != 0 && r > 1) lhs += r;
        const auto v = verify_representation_bound(s);
        EXPECT_EQ(v.lhs, lhs);
        EXPECT_TRUE(v.holds);
        if (params.eta < 1) EXPECT_TRUE(verify_size_bound(s).holds);
    }
}

TEST(l2_reduction, worked_examples)
{
    const auto full = verify_l2_reduction(ScaledFunction::interval(1, 20, 20), Rational(1));
    EXPECT_TRUE(full.hypotheses_hold);
    EXPECT_EQ(full.level_set.size(), 20u);
    EXPECT_TRUE(full.holds);

    const auto half = verify_l2_reduction(ScaledFunction::interval(1, 20, 20).scaled(Rational(1, 2)), Rational(1, 2));
    EXPECT_TRUE(half.hypotheses_hold);
    EXPECT_EQ(half.level_set.size(), 20u);
    EXPECT_TRUE(half.holds);

    // sum f = 1 < delta N: hypotheses fail and are reported as such
    const auto sparse = verify_l2_reduction(ScaledFunction::indicator(IntegerSet({3}, 20)), Rational(1, 2), 20);
    EXPECT_FALSE(sparse.hypotheses_hold);
}

TEST(counting_lemma, interval_example)
{
    const auto nu = ScaledFunction::interval(1, 10, 10);
    const std::vector<ScaledFunction> fns(5, nu);
    const auto v = verify_counting_lemma(nu, fns, EquationCoeffs::parse("1,1,1,1,-4"), 10);
    EXPECT_EQ(v.lhs, 2498);
    EXPECT_EQ(v.nu_mass, 10);
    EXPECT_EQ(v.nu_energy, 670);
    EXPECT_TRUE(v.nu_mass_ok);
    EXPECT_TRUE(v.nu_energy_ok);
    EXPECT_TRUE(v.energy_chain_ok);
    EXPECT_NEAR(v.rhs, 1e4, 1e-6);
    EXPECT_TRUE(v.holds);
}

TEST(counting_lemma, zero_function_and_validation)
{
    const auto nu = ScaledFunction::interval(1, 10, 10);
    std::vector<ScaledFunction> fns(5, nu);
    fns[2] = nu.scaled(Rational(0));
    const auto v = verify_counting_lemma(nu, fns, EquationCoeffs::parse("1,1,1,1,-4"), 10);
    EXPECT_EQ(v.lhs, 0);
    EXPECT_TRUE(v.holds);

    fns[2] = nu.scaled(Rational(2));
    EXPECT_THROW(verify_counting_lemma(nu, fns, EquationCoeffs::parse("1,1,1,1,-4"), 10), ValidationError);
    const std::vector<ScaledFunction> four(4, nu);
    EXPECT_THROW(verify_counting_lemma(nu, four, EquationCoeffs::parse("1,1,1,-3"), 10), ValidationError);
}

TEST(counting_lemma, random_cases)
{
    SplitMix64 rng(99);
    for (int t = 0; t < 5; ++t) {
        const auto c = random_counting_lemma_case(rng);
        const auto v = verify_counting_lemma(c.nu, c.fns, c.eq, c.interval_length);
        EXPECT_TRUE(v.nu_mass_ok && v.nu_energy_ok && v.energy_chain_ok);
        EXPECT_TRUE(v.holds) << "lhs " << v.lhs.get_d() << " rhs " << v.rhs;
    }
}

TEST(dense_model, invariants_on_sidon_sets)
{
    for (std::int64_t p : {5, 7, 11}) {
        const auto s = erdos_turan(p);
        for (const Rational& eps : {Rational(1, 5), Rational(1, 2)}) {
            if (eps > almost_sidon_params(s.with_ambient(ceil_sqrt(s.ambient_n()) * ceil_sqrt(s.ambient_n()))).delta) continue;
            const auto dm = dense_model(s, eps);
            EXPECT_TRUE(is_perfect_square(dm.n()));
            EXPECT_GE(dm.n(), s.ambient_n());
            EXPECT_TRUE(dm.diag.mass_identity);
            EXPECT_TRUE(dm.diag.support_ok);
            EXPECT_EQ(dm.diag.mass, Rational(dm.sqrt_n * static_cast<std::int64_t>(s.size())));
            const auto m = dm.model();
            EXPECT_EQ(m.half_power, 1);
            Rational sum = 0;
            for (const auto& w : m.weights) sum += w;
            EXPECT_EQ(sum * dm.sqrt_n, dm.diag.mass);
            const auto l2 = verify_model_l2(dm);
            EXPECT_TRUE(l2.holds);
            EXPECT_TRUE(l2.routes_agree);
            EXPECT_TRUE(verify_bohr_inclusion(dm.bohr, dm.spectrum).holds);
            for (auto n : dm.bohr.elements)
                for (const auto& f : dm.bohr.freqs) EXPECT_TRUE(oracle::bohr_member(n, f.k, f.m, eps));
        }
    }
}

TEST(dense_model, degenerate_bohr_limit)
{
    // a tiny radius leaves B = {0}, so f = N^{1/2} 1_S
    const auto s = erdos_turan(7);
    const auto dm = dense_model(s, Rational(1, 200));
    ASSERT_EQ(dm.bohr.elements, (std::vector<std::int64_t>{0}));
    EXPECT_EQ(dm.diag.fourier_distance, 0.0);
    const auto l2 = verify_model_l2(dm);
    EXPECT_EQ(l2.lhs, 7);
    EXPECT_TRUE(l2.holds);
}

TEST(dense_model, validation)
{
    EXPECT_THROW(dense_model(erdos_turan(7), Rational(3, 5)), ValidationError);
    EXPECT_THROW(dense_model(erdos_turan(7), Rational(0)), ValidationError);
    // delta = 2/8 for {1, 5} in [1, 64]
    EXPECT_THROW(dense_model(IntegerSet({1, 5}, 64), Rational(1, 3)), ValidationError);
}

TEST(report, mian_chowla_prefix)
{
    const auto rep = transference_report(mian_chowla(10), EquationCoeffs::parse("1,2,-3,1,-1"), Rational(1, 5));
    EXPECT_EQ(rep.n, 81);
    EXPECT_TRUE(rep.theorem_backed_ok());
    EXPECT_TRUE(rep.model_count_paths_agree);
    EXPECT_TRUE(rep.telescope_identity);
}

TEST(report, nontrivial_bohr_set)
{
    const auto rep = transference_report(mian_chowla(10), EquationCoeffs::parse("1,2,-3,1,-1"), Rational(1, 2));
    EXPECT_GT(rep.model.bohr.elements.size(), 1u);
    EXPECT_NE(rep.difference, 0);
    EXPECT_TRUE(rep.telescope_identity);
    EXPECT_TRUE(rep.telescope_bounds_hold);
    EXPECT_TRUE(rep.theorem_backed_ok());
    const auto weights = rep.model.model();
    oracle::Weights w;
    for (std::size_t i = 0; i < weights.weights.size(); ++i)
        if (weights.weights[i] != 0) w[weights.offset + static_cast<std::int64_t>(i)] = weights.weights[i] * 9;
    const std::vector<std::int64_t> a{1, 2, -3, 1, -1};
    EXPECT_EQ(rep.model_count, oracle::count_by_partial_sums(a, {w, w, w, w, w}));
}

TEST(report, small_radius_has_zero_difference)
{
    const auto rep = transference_report(erdos_turan(7), EquationCoeffs::parse("1,1,1,1,-4"), Rational(1, 200));
    EXPECT_EQ(rep.difference, 0);
    EXPECT_EQ(rep.model_count, rep.set_count);
}

TEST(report, rejects_non_invariant)
{
    EXPECT_THROW(transference_report(erdos_turan(7), EquationCoeffs::parse("1,1,1,1,-3"), Rational(1, 5)), ValidationError);
    EXPECT_THROW(transference_report(erdos_turan(7), EquationCoeffs::parse("1,1,-2"), Rational(1, 5)), ValidationError);
}

#include "sidonlab/suites.hpp"

#include <array>
#include <sstream>

#include "sidonlab/errors.hpp"
#include "sidonlab/spectral.hpp"
#include "sidonlab/transference.hpp"

namespace sidonlab {

Json SuiteResult::to_json() const {
    return Json{{"suite", name}, {"trials", trials}, {"passed", passed}, {"ok", ok()}, {"failures", failures}};
}

IntegerSet random_subset(SplitMix64& rng, std::int64_t n) {
    std::vector<std::int64_t> elems;
    for (std::int64_t x = 1; x <= n; ++x)
        if (rng() & 1) elems.push_back(x);
    return IntegerSet(std::move(elems), n);
}

namespace {

std::string set_text(const IntegerSet& s) {
    std::ostringstream out;
    write_set(out, s);
    return out.str();
}

IntegerSet random_sidon_base(SplitMix64& rng) {
    static constexpr std::array<std::int64_t, 6> primes{3, 5, 7, 11, 13, 17};
    if (rng() & 1) return erdos_turan(primes[rng.below(primes.size())]);
    return mian_chowla(rng.uniform(2, 20));
}

std::vector<std::int64_t> random_coeffs(SplitMix64& rng, std::size_t s) {
    std::vector<std::int64_t> a(s);
    for (auto& x : a) {
        do {
            x = rng.uniform(-3, 3);
        } while (x == 0);
    }
    return a;
}

void record(SuiteResult& res, bool ok, Json witness) {
    ++res.trials;
    if (ok)
        ++res.passed;
    else
        res.failures.push_back(std::move(witness));
}

} // namespace

SuiteResult run_lemmas_suite(std::uint64_t seed, std::size_t trials) {
    SuiteResult res{"lemmas", 0, 0, {}};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const IntegerSet base = random_sidon_base(rng);
        const auto room = base.ambient_n() - static_cast<std::int64_t>(base.size());
        const auto extra = rng.uniform(0, std::min<std::int64_t>(room, static_cast<std::int64_t>(base.size())));
        const IntegerSet s = perturb_almost_sidon(base, extra, rng());

        const auto profile = representation_profile(s);
        BigInt total = 0;
        bool symmetric = profile[0] == static_cast<std::int64_t>(s.size());
        for (std::int64_t d = -profile.max_difference(); d <= profile.max_difference(); ++d) {
            total += to_bigint(profile[d]);
            symmetric = symmetric && profile[d] == profile[-d];
        }
        const BigInt size = static_cast<unsigned long>(s.size());
        const bool profile_ok = symmetric && total == size * size;
        const bool fourier_ok = energy_via_fourier(s) == profile.energy();
        const auto l51 = verify_representation_bound(s);
        const auto l52 = verify_size_bound(s);
        const bool base_sidon = is_sidon(base);
        const bool ok = profile_ok && fourier_ok && l51.holds && (l52.skipped || l52.holds) && base_sidon;
        record(res, ok,
               Json{{"trial", t},
                    {"set", set_text(s)},
                    {"profile_ok", profile_ok},
                    {"fourier_energy_ok", fourier_ok},
                    {"representation_bound", l51.holds},
                    {"size_bound", l52.skipped || l52.holds},
                    {"base_sidon", base_sidon}});
    }
    return res;
}

CountingLemmaCase random_counting_lemma_case(SplitMix64& rng, const ConvolutionOptions& opts) {
    static constexpr std::array<std::int64_t, 3> primes{3, 5, 7};
    const IntegerSet base = (rng() & 1) ? erdos_turan(primes[rng.below(primes.size())]) : mian_chowla(rng.uniform(4, 12));
    const IntegerSet s = (rng() & 1) ? base : perturb_almost_sidon(base, rng.uniform(0, 2), rng());
    const std::int64_t root = ceil_sqrt(s.ambient_n());
    // eps in {1/4, 1/5, ..., 1/10}, capped by the density
    Rational eps(1, static_cast<unsigned long>(rng.uniform(4, 10)));
    const Rational density(to_bigint(static_cast<std::int64_t>(s.size())), to_bigint(root));
    if (eps > density) eps = density;
    const DenseModel dm = dense_model(s, eps, std::nullopt, opts);
    const ScaledFunction nu0 = dm.majorant();

    const std::int64_t len = 2 * dm.n();
    const Rational mass = *scale_by_half_power(nu0.weight_sum(), dm.n(), 1);
    const Rational energy = *function_energy(nu0, opts).exact();
    std::int64_t c = 1;
    const Rational l(to_bigint(len));
    while (mass > c * l || energy > Rational(pow(to_bigint(c), 4)) * l * l * l) ++c;

    CountingLemmaCase out{nu0.scaled(Rational(1, static_cast<unsigned long>(c))),
                          {},
                          EquationCoeffs(random_coeffs(rng, 5)),
                          len,
                          c};
    constexpr std::int64_t q = 4;
    for (int i = 0; i < 5; ++i) {
        ScaledFunction f = out.nu;
        for (auto& w : f.weights) w *= Rational(to_bigint(rng.uniform(-q, q)), to_bigint(q));
        out.fns.push_back(std::move(f));
    }
    return out;
}

SuiteResult run_counting_suite(std::uint64_t seed, std::size_t trials, const ConvolutionOptions& opts) {
    SuiteResult res{"counting", 0, 0, {}};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        // weighted count vs brute force
        const auto s = static_cast<std::size_t>(rng.uniform(2, 5));
        const EquationCoeffs eq(random_coeffs(rng, s));
        std::vector<ScaledFunction> fns;
        for (std::size_t i = 0; i < s; ++i) fns.push_back(ScaledFunction::indicator(random_subset(rng, rng.uniform(1, 40))));
        const bool count_ok = count_solutions(eq, fns, opts) == brute_force_count(eq, fns, false);

        // distinct count vs brute force
        const IntegerSet small = random_subset(rng, rng.uniform(1, 25));
        const EquationCoeffs deq(random_coeffs(rng, static_cast<std::size_t>(rng.uniform(2, 5))));
        const std::vector<ScaledFunction> ind(deq.size(), ScaledFunction::indicator(small));
        const bool distinct_ok = count_distinct_solutions(deq, small, opts) == brute_force_count(deq, ind, true);

        const auto lemma_case = random_counting_lemma_case(rng, opts);
        const auto v = verify_counting_lemma(lemma_case.nu, lemma_case.fns, lemma_case.eq, lemma_case.interval_length, opts);
        const bool lemma_ok = v.holds && v.nu_mass_ok && v.nu_energy_ok && v.energy_chain_ok;

        std::vector<std::int64_t> a(eq.coeffs().begin(), eq.coeffs().end());
        record(res, count_ok && distinct_ok && lemma_ok,
               Json{{"trial", t},
                    {"count_ok", count_ok},
                    {"coeffs", a},
                    {"distinct_ok", distinct_ok},
                    {"distinct_set", set_text(small)},
                    {"counting_lemma_ok", lemma_ok},
                    {"counting_lemma_lhs", rational_json(v.lhs)},
                    {"counting_lemma_rhs", v.rhs}});
    }
    return res;
}

SuiteResult run_model_suite(std::uint64_t seed, std::size_t trials, const ConvolutionOptions& opts) {
    SuiteResult res{"model", 0, 0, {}};
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const IntegerSet base = random_sidon_base(rng);
        const auto room = base.ambient_n() - static_cast<std::int64_t>(base.size());
        const IntegerSet s = (rng() & 1) ? base : perturb_almost_sidon(base, rng.uniform(0, std::min<std::int64_t>(room, 3)), rng());
        const std::int64_t root = ceil_sqrt(s.ambient_n());
        Rational eps(1, static_cast<unsigned long>(rng.uniform(3, 12)));
        const Rational density(to_bigint(static_cast<std::int64_t>(s.size())), to_bigint(root));
        if (eps > density) eps = density;
        if (eps > Rational(1, 2)) eps = Rational(1, 2);

        const DenseModel dm = dense_model(s, eps, std::nullopt, opts);
        const auto l2 = verify_model_l2(dm);
        const auto incl = verify_bohr_inclusion(dm.bohr, dm.spectrum);
        const auto sieve = large_sieve_diagnostic(dm.set, dm.spectrum);
        bool bohr_exact = true;
        for (std::int64_t x = -dm.bohr.width; x <= dm.bohr.width; ++x) {
            bool member = true;
            for (const auto& a : dm.bohr.freqs) member = member && bohr_condition(x, a, dm.bohr.radius);
            bohr_exact = bohr_exact && member == dm.bohr.contains(x) && dm.bohr.contains(x) == dm.bohr.contains(-x);
        }
        const bool ok = dm.diag.mass_identity && dm.diag.support_ok && l2.holds && l2.routes_agree && incl.holds &&
                        sieve.classical_holds && bohr_exact && dm.bohr.contains(0);
        record(res, ok,
               Json{{"trial", t},
                    {"set", set_text(s)},
                    {"eps", rational_json(eps)},
                    {"mass_identity", dm.diag.mass_identity},
                    {"support_ok", dm.diag.support_ok},
                    {"model_l2", l2.holds && l2.routes_agree},
                    {"bohr_inclusion", incl.holds},
                    {"bohr_exact", bohr_exact},
                    {"large_sieve_classical", sieve.classical_holds}});
    }
    return res;
}

} // namespace sidonlab

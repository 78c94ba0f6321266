#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidonlab/counting.hpp"
#include "sidonlab/json_io.hpp"
#include "sidonlab/rng.hpp"

namespace sidonlab {

/// Outcome of one randomized verification suite. Every check in a suite is
/// backed by a proved statement, so any failure indicates a defect.
struct SuiteResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::vector<Json> failures; // serialized witnesses

    bool ok() const { return passed == trials; }
    Json to_json() const;
};

/// Profile invariants, Fourier energy, and the two almost-Sidon lemmas on perturbed Sidon sets.
SuiteResult run_lemmas_suite(std::uint64_t seed, std::size_t trials);

/// Fast count vs brute force, distinct count vs brute force, and the counting lemma.
SuiteResult run_counting_suite(std::uint64_t seed, std::size_t trials, const ConvolutionOptions& opts = {});

/// Dense-model identities and proof-step inequalities on Sidon and almost-Sidon sets.
SuiteResult run_model_suite(std::uint64_t seed, std::size_t trials, const ConvolutionOptions& opts = {});

/// A counting-lemma instance: nu is a dense-model majorant divided by the least
/// integer c making sum nu <= L and E(nu) <= L^3; each f_i is nu times an
/// independent random factor in [-1, 1].
struct CountingLemmaCase {
    ScaledFunction nu;
    std::vector<ScaledFunction> fns;
    EquationCoeffs eq;
    std::int64_t interval_length;
    std::int64_t normalizer;
};
CountingLemmaCase random_counting_lemma_case(SplitMix64& rng, const ConvolutionOptions& opts = {});

/// Random subset of [1, n] where each point is kept with probability 1/2.
IntegerSet random_subset(SplitMix64& rng, std::int64_t n);

} // namespace sidonlab

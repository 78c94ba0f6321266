#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sidonlab/counting.hpp"
#include "sidonlab/integer_set.hpp"
#include "sidonlab/rational.hpp"
#include "sidonlab/spectral.hpp"

namespace sidonlab {

/// {n in [-W, W] : ||n alpha||_T <= radius for every stored alpha}, W = floor(radius * N).
struct BohrSet {
    std::vector<Frequency> freqs;
    Rational radius;
    std::int64_t ambient_n = 0;
    std::int64_t width = 0;
    std::vector<std::int64_t> elements; // sorted, symmetric, contains 0

    std::size_t size() const { return elements.size(); }
    bool contains(std::int64_t n) const;
};

/// ||n k/m||_T <= radius, i.e. min(nk mod m, m - nk mod m) <= radius * m, in integers.
bool bohr_condition(std::int64_t n, const Frequency& alpha, const Rational& radius);

/// Exact scan of [-floor(eps N), floor(eps N)]. Requires 0 < eps <= 1/2 and n >= 1.
BohrSet bohr_set(std::span<const Frequency> freqs, const Rational& eps, std::int64_t n);

/// |B| >= ceil(4/eps)^{-(1+R)} N, checked as |B| ceil(4/eps)^{1+R} >= N.
/// The same bound with a positive exponent, |B| >= ceil(4/eps)^{1+R} N, is evaluated too, and is
/// expected to fail for every R >= 0 once |B| <= N.
struct BohrLowerBound {
    std::size_t rank = 0;
    BigInt base;    // ceil(4/eps)
    Rational bound; // N / base^{1+R}
    bool holds = false;
    bool uncorrected_holds = false;
};
BohrLowerBound bohr_lower_bound(const BohrSet& bohr, std::size_t rank);

/// B contains {n in [-eps N/2, eps N/2] : ||alpha_i n||_T <= eps/2} for the separated alpha_i.
struct BohrInclusion {
    std::size_t inner_size = 0;
    bool holds = false;
};
BohrInclusion verify_bohr_inclusion(const BohrSet& bohr, const Spectrum& spectrum);

struct DenseModelDiagnostics {
    Rational mass;           // sum_n f(n) = N^{1/2} |S|, exact (N is a square)
    Rational l2_value;       // sum_n f(n)^2 = N sum g^2 / |B|^2
    double fourier_distance = 0.0; // grid max of |N^{1/2} 1_S^ - f^|
    Frequency fourier_argmax;
    std::int64_t fourier_grid = 0;
    double fourier_grid_factor = 1.0;
    bool mass_identity = false;    // sum g == |S| |B|
    bool support_ok = false;       // supp g inside (-eps N, (1 + eps) N]
};

/// f = N^{1/2} 1_S * mu_B on the ambient interval padded to a perfect square.
struct DenseModel {
    IntegerSet set;              // S with the padded ambient N
    std::int64_t original_n = 0;
    std::int64_t sqrt_n = 0;     // N = sqrt_n^2
    Rational eps;
    Spectrum spectrum;
    BohrSet bohr;
    ScaledFunction base;         // g = 1_S * 1_B, integer weights, no N-scaling
    DenseModelDiagnostics diag;

    std::int64_t n() const { return set.ambient_n(); }
    /// f = N^{1/2} g / |B|
    ScaledFunction model() const;
    /// N^{1/2} 1_S
    ScaledFunction scaled_indicator() const;
    /// nu = f + N^{1/2} 1_S
    ScaledFunction majorant() const;
};

/// Pads N to ceil(sqrt N)^2 and requires 0 < eps <= min(1/2, delta) with
/// delta = |S| / sqrt(N). Default grid: default_grid(N).
DenseModel dense_model(const IntegerSet& s, const Rational& eps, std::optional<std::int64_t> grid_m = std::nullopt,
                       const ConvolutionOptions& opts = {});

struct RepresentationBoundVerdict {
    BigInt lhs;   // sum_{n != 0, r_S(n) > 1} r_S(n)
    Rational rhs; // eta |S|^2 + |S|
    bool holds = false;
};
RepresentationBoundVerdict verify_representation_bound(const IntegerSet& s);

struct SizeBoundVerdict {
    bool skipped = false; // eta >= 1
    Rational lhs;         // (1 - eta) |S|^2
    BigInt rhs;           // 4 N
    bool holds = false;
};
SizeBoundVerdict verify_size_bound(const IntegerSet& s);

struct L2ReductionVerdict {
    std::int64_t interval_length = 0;
    Rational delta;
    Rational mass;
    Rational l2;
    bool hypotheses_hold = false; // f >= 0, sum f >= delta L, sum f^2 <= L
    std::vector<std::int64_t> level_set; // {x : f(x) >= delta/2}
    bool holds = false;                  // 4 |A| >= delta^2 L
};
/// interval_length defaults to the support width of f.
L2ReductionVerdict verify_l2_reduction(const ScaledFunction& f, const Rational& delta,
                                       std::optional<std::int64_t> interval_length = std::nullopt);

struct CountingLemmaVerdict {
    std::int64_t interval_length = 0;
    Rational nu_mass;
    Rational nu_energy;
    bool nu_mass_ok = false;    // sum nu <= L
    bool nu_energy_ok = false;  // E(nu) <= L^3
    bool energy_chain_ok = false; // E(f_i) <= E(nu) and sum |f_i| <= sum nu for every i
    Rational lhs;               // exact signed count
    double rhs = 0.0;           // L^{s-2} min_i (grid sup |f_i^|)
    double grid_factor = 1.0;
    double slack = 0.0;         // rhs / |lhs|
    bool holds = false;         // |lhs| <= rhs (1 + 1e-9)
};
/// Throws ValidationError unless |f_i| <= nu pointwise (exact) and s >= 5.
CountingLemmaVerdict verify_counting_lemma(const ScaledFunction& nu, std::span<const ScaledFunction> fns,
                                           const EquationCoeffs& eq,
                                           std::optional<std::int64_t> interval_length = std::nullopt,
                                           const ConvolutionOptions& opts = {});

struct ModelL2Verdict {
    BigInt lhs;          // sum_n r_S(n) r_B(n)
    BigInt lhs_via_g;    // sum_n g(n)^2, the same quantity by a second route
    bool routes_agree = false;
    Rational rhs;        // |B|^2 + (eta |S|^2 + 2|S|) |B|
    bool holds = false;
    Rational l2_ratio;   // sum f^2 / N
    /// (sum f^2 / N - 1) (1 - eta) / (eta + N^{-1/2}): the factor the
    /// dense-model L2 bound hides in exp(eps^{-O(1)}). Reported only.
    std::optional<double> implied_constant;
};
ModelL2Verdict verify_model_l2(const DenseModel& model);

struct TelescopeTerm {
    Rational value;      // exact
    double bound = 0.0;  // s-independent per-term bound c^{s-1} L^{s-2} ||f^ - N^{1/2} 1_S^||_inf (upper)
    bool holds = false;
};

struct TransferenceReport {
    std::vector<std::int64_t> coeffs;
    std::int64_t original_n = 0;
    std::int64_t n = 0;
    std::size_t set_size = 0;
    Rational delta;          // |S| / sqrt(N), padded N, capped at 1
    double delta_original = 0.0;
    Rational eta;
    Rational eps;

    DenseModel model;
    BohrLowerBound bohr_lower;
    BohrInclusion bohr_inclusion;
    LargeSieveReport large_sieve;
    RepresentationBoundVerdict representation_bound;
    SizeBoundVerdict size_bound;
    ModelL2Verdict model_l2;
    L2ReductionVerdict l2_reduction;

    // nu = f + N^{1/2} 1_S on an interval of length L = 2N
    std::int64_t interval_length = 0;
    Rational nu_mass;
    Rational nu_energy;
    bool nu_mass_ok = false;   // sum nu <= 4N
    bool nu_energy_ok = false; // E(nu) <= 64 N^3
    std::int64_t normalizer = 1; // least integer c with sum nu <= cL, E(nu) <= c^4 L^3

    Rational model_count;      // sum prod f(x_i)
    bool model_count_paths_agree = false; // schoolbook and NTT engines
    BigInt set_count_raw;      // sum prod 1_S(x_i)
    Rational set_count;        // N^{s/2} set_count_raw
    Rational difference;       // model_count - set_count
    std::vector<TelescopeTerm> telescope;
    bool telescope_identity = false; // sum of terms == difference
    bool telescope_bounds_hold = false;
    double eps_scale = 0.0;    // eps N^{s-1}
    double difference_ratio = 0.0; // |difference| / (eps N^{s-1})
    double main_term_scale = 0.0;  // N^{s/2 - 1}
    std::optional<BigInt> distinct_count;

    bool fourier_ok = false;   // fourier_distance <= fourier_constant * eps N
    Rational fourier_constant;

    /// Every verdict that follows from a proved statement (with the grid factor where relevant).
    bool theorem_backed_ok() const;
    /// Verdicts whose constants were fixed by this implementation.
    bool calibrated_ok() const;
};

inline const Rational kDefaultFourierConstant{16};

/// Requires s >= 5 and a translation-invariant equation.
TransferenceReport transference_report(const IntegerSet& s, const EquationCoeffs& eq, const Rational& eps,
                                       const ConvolutionOptions& opts = {},
                                       const Rational& fourier_constant = kDefaultFourierConstant);

} // namespace sidonlab

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sidonlab/convolution.hpp"
#include "sidonlab/integer_set.hpp"
#include "sidonlab/rational.hpp"

namespace sidonlab {

/// Nonzero integer coefficients a_1..a_s (s >= 2) of a_1 x_1 + ... + a_s x_s = 0.
class EquationCoeffs {
public:
    explicit EquationCoeffs(std::vector<std::int64_t> coeffs);

    /// "1,1,1,1,-4"
    static EquationCoeffs parse(std::string_view text);

    std::span<const std::int64_t> coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }
    bool translation_invariant() const;
    EquationCoeffs negated() const;

private:
    std::vector<std::int64_t> coeffs_;
};

/// x -> weights[x - offset] * N^{half_power / 2}, zero off the stored window.
/// Weights are exact rationals and may be signed; the N^{1/2} powers are kept
/// symbolic so that nothing irrational is ever rounded.
struct ScaledFunction {
    std::int64_t offset = 0;
    std::vector<Rational> weights;
    int half_power = 0;
    std::int64_t ambient_n = 1;

    static ScaledFunction indicator(const IntegerSet& s, int half_power = 0);
    /// 1 on [lo, hi]
    static ScaledFunction interval(std::int64_t lo, std::int64_t hi, std::int64_t ambient_n);

    std::int64_t last() const { return offset + static_cast<std::int64_t>(weights.size()) - 1; }
    Rational weight(std::int64_t x) const;
    /// Exact value at x when N^{half_power/2} is rational.
    std::optional<Rational> value(std::int64_t x) const;
    /// Same function with leading/trailing zero weights removed.
    ScaledFunction trimmed() const;
    std::size_t support_size() const;
    bool nonnegative() const;
    Rational weight_sum() const;
    ScaledFunction scaled(const Rational& q) const;
};

/// Integer image of a function: weights == values / denominator, indexed by x.
struct IntegerWeights {
    Sequence values;
    BigInt denominator = 1;
};
IntegerWeights to_integer_weights(const ScaledFunction& f);

/// value * N^{half_power / 2}
struct SolutionCount {
    Rational value;
    int half_power = 0;
    std::int64_t ambient_n = 1;

    std::optional<Rational> exact() const;
    friend bool operator==(const SolutionCount&, const SolutionCount&) = default;
};

/// Weighted solution count sum_{a.x = 0} prod_i f_i(x_i), computed exactly by
/// convolving the dilated sequences h_i(a_i x) = f_i(x) and reading the
/// coefficient at 0. Throws ValidationError on an arity mismatch or on
/// half-powers taken against different ambient N.
SolutionCount count_solutions(const EquationCoeffs& eq, std::span<const ScaledFunction> fns,
                              const ConvolutionOptions& opts = {});

inline constexpr std::size_t kMaxDistinctVariables = 12;

/// Solutions in S^s with all coordinates pairwise distinct, by Mobius
/// inversion over the partition lattice of {1..s}. Throws ValidationError for
/// s > kMaxDistinctVariables.
SolutionCount count_distinct_solutions(const EquationCoeffs& eq, const IntegerSet& s,
                                       const ConvolutionOptions& opts = {});

inline constexpr std::uint64_t kDefaultBruteForceBudget = 1'000'000'000;

/// Direct enumeration over the supports of f_1..f_{s-1}, solving for x_s.
/// Throws BudgetExceeded when the product of those support sizes exceeds budget.
SolutionCount brute_force_count(const EquationCoeffs& eq, std::span<const ScaledFunction> fns, bool distinct_only,
                                std::uint64_t budget = kDefaultBruteForceBudget);

struct DegenerateReport {
    BigInt energy;           // E(S)
    std::size_t shifts_checked = 0;
    BigInt max_count;        // max over shifts n of #{(x1,x2,x3) in S^3 : a1x1+a2x2+a3x3 = -n}
    bool bound_holds = true; // every count c has c^4 <= E(S)^3
    BigInt pair_total;       // solutions with x_{s-1} = x_s
    BigInt total;            // all solutions in S^s
    BigInt distinct;         // solutions with pairwise distinct coordinates
    BigInt degenerate_total; // total - distinct
    BigInt union_bound;      // sum over pairs i<j of solutions with x_i = x_j
    bool union_bound_holds = true;
};

/// For s >= 5: fixes x_4..x_s with x_{s-1} = x_s and bounds the remaining
/// three-variable counts by E(S)^{3/4}, compared as fourth powers.
DegenerateReport degenerate_bound_check(const EquationCoeffs& eq, const IntegerSet& s,
                                        const ConvolutionOptions& opts = {});

/// All set partitions of {0..n-1} as restricted growth strings (block label per element).
std::vector<std::vector<int>> set_partitions(std::size_t n);

} // namespace sidonlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sidonlab/rational.hpp"

namespace sidonlab {

/// Laurent polynomial sum_i coeffs[i] * z^(lowest + i) with exact integer coefficients.
/// An empty coefficient vector is the zero polynomial.
struct Sequence {
    std::int64_t lowest = 0;
    std::vector<BigInt> coeffs;

    std::int64_t highest() const { return lowest + static_cast<std::int64_t>(coeffs.size()) - 1; }
    BigInt at(std::int64_t exponent) const;
};

struct ConvolutionOptions {
    /// Products whose output length exceeds this go through the multi-prime NTT;
    /// shorter ones use schoolbook multiplication. 0 forces the NTT path.
    std::size_t ntt_threshold = std::size_t{1} << 14;
    /// Cap on worker threads (parallel over NTT primes). Output does not depend on it.
    unsigned threads = 1;
};

/// Exact product of all factors. No factors gives the constant 1.
Sequence convolve(std::span<const Sequence> factors, const ConvolutionOptions& opts = {});

/// Coefficient of z^exponent in the product of all factors, without
/// materializing the full product on the NTT path.
BigInt product_coefficient(std::span<const Sequence> factors, std::int64_t exponent,
                           const ConvolutionOptions& opts = {});

namespace ntt {

/// The fixed NTT-friendly primes c * 2^32 + 1 < 2^62 used for CRT reconstruction.
std::span<const std::uint64_t> primes();

/// Number of primes whose product exceeds 2 * bound + 1; 0 if even all of them do not.
std::size_t primes_needed(const BigInt& bound);

/// In-place length-2^k NTT modulo primes()[prime_index]; forward uses w = g^((p-1)/len),
/// inverse includes the 1/len factor.
void transform(std::vector<std::uint64_t>& a, bool inverse, std::size_t prime_index);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p);

/// CRT over the first residues.size() primes, lifted into (-M/2, M/2].
BigInt reconstruct(std::span<const std::uint64_t> residues);

/// Cyclic-free convolution modulo every prime followed by CRT; exposed for tests.
/// Returns false (leaving out untouched) when the coefficient bound exceeds the prime budget.
bool convolve(std::span<const Sequence> factors, Sequence& out, unsigned threads = 1);

} // namespace ntt

} // namespace sidonlab

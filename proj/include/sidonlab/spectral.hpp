#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "sidonlab/counting.hpp"
#include "sidonlab/integer_set.hpp"
#include "sidonlab/rational.hpp"

namespace sidonlab {

/// alpha = k/m in [0, 1). Equality and ordering are by exact rational value.
struct Frequency {
    std::int64_t k = 0;
    std::int64_t m = 1;

    Rational value() const;
    double as_double() const { return static_cast<double>(k) / static_cast<double>(m); }

    friend bool operator==(const Frequency& a, const Frequency& b) {
        return static_cast<__int128>(a.k) * b.m == static_cast<__int128>(b.k) * a.m;
    }
    friend std::strong_ordering operator<=>(const Frequency& a, const Frequency& b) {
        return static_cast<__int128>(a.k) * b.m <=> static_cast<__int128>(b.k) * a.m;
    }
};

/// ||alpha - beta||_T > 1/n, decided exactly.
bool separated(const Frequency& a, const Frequency& b, std::int64_t n);

struct SpectrumEntry {
    Frequency freq;
    double magnitude = 0.0;
};

/// Grid sample of Spec(S, eps) = {alpha : |1_S^(alpha)| >= eps |S|} and a
/// maximal (1/N)-separated subsequence of it.
struct Spectrum {
    Rational threshold;
    std::int64_t grid_m = 0;
    std::int64_t ambient_n = 0;
    std::size_t set_size = 0;
    std::vector<SpectrumEntry> entries;  // increasing alpha
    std::vector<std::size_t> separated;  // indices into entries, increasing

    std::size_t r_count() const { return separated.size(); }
    std::vector<Frequency> frequencies() const;
    std::vector<Frequency> separated_frequencies() const;
};

/// Absolute tolerance, relative to |S|, on the threshold comparison.
inline constexpr double kSpectrumTolerance = 1e-9;

/// |f^(k/m)| for k = 0..m-1 where f^(alpha) = sum_n f(n) e(alpha n).
/// Power-of-two m goes through an FFT of the weights folded mod m.
std::vector<double> dft_magnitudes(const ScaledFunction& f, std::int64_t m);

struct SupEstimate {
    double value = 0.0;
    Frequency argmax;
    std::int64_t grid_m = 0;
    /// 1/cos(pi/rho): the true sup is at most value * grid_factor.
    double grid_factor = 1.0;
};

/// Grid maximum of |f^| on the smallest power-of-two grid of size at least
/// rho * (support width). A lower bound on the sup over the torus. Requires rho >= 4.
SupEstimate sup_norm_estimate(const ScaledFunction& f, int oversample);

/// Smallest power of two >= 8 * width.
std::int64_t default_grid(std::int64_t width);

/// Requires 0 < eps <= 1 and m >= 1. Separation is measured against s.ambient_n().
Spectrum large_spectrum(const IntegerSet& s, const Rational& eps, std::int64_t m);

/// E(S) = M^{-1} sum_k |1_S^(k/M)|^4 on the cyclic group Z_M, M >= 2N,
/// evaluated exactly in modular arithmetic (NTT) and recombined by CRT.
BigInt energy_via_fourier(const IntegerSet& s);

/// E(f) = sum_{x - x' = y - y'} f(x) f(x') f(y) f(y') for real, possibly signed f,
/// as sum_n (f * f~)(n)^2; scale exponent 4 * half_power.
SolutionCount function_energy(const ScaledFunction& f, const ConvolutionOptions& opts = {});

struct LargeSieveReport {
    std::size_t r_count = 0;
    double lhs = 0.0;         // sum_i |1_S^(alpha_i)|^4
    BigInt rhs;               // 2 N E(S)
    bool holds = false;       // lhs <= rhs (1 + 1e-9)
    BigInt classical_rhs;     // (2N - 2 + N) E(S): length 2N-1 polynomial, spacing > 1/N
    bool classical_holds = false;
    Rational r_lhs;           // R eps^4 |S|^4
    Rational r_rhs;           // 2 N (2 + eta) |S|^2
    bool r_bound_holds = false;
};

LargeSieveReport large_sieve_diagnostic(const IntegerSet& s, const Spectrum& spectrum);

} // namespace sidonlab

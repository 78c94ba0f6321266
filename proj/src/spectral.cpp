#include "sidonlab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>

#include <fftw3.h>

#include "sidonlab/errors.hpp"

namespace sidonlab {

Rational Frequency::value() const {
    Rational q(to_bigint(k), to_bigint(m));
    q.canonicalize();
    return q;
}

bool separated(const Frequency& a, const Frequency& b, std::int64_t n) {
    // ||a - b||_T = min(d, D - d) / D with d = |a.k b.m - b.k a.m| mod D, D = a.m b.m
    const __int128 den = static_cast<__int128>(a.m) * b.m;
    __int128 d = static_cast<__int128>(a.k) * b.m - static_cast<__int128>(b.k) * a.m;
    d %= den;
    if (d < 0) d += den;
    const __int128 dist = std::min(d, den - d);
    return dist * n > den;
}

std::vector<Frequency> Spectrum::frequencies() const {
    std::vector<Frequency> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.freq);
    return out;
}

std::vector<Frequency> Spectrum::separated_frequencies() const {
    std::vector<Frequency> out;
    out.reserve(separated.size());
    for (auto i : separated) out.push_back(entries[i].freq);
    return out;
}

namespace {

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

double scale_factor(const ScaledFunction& f) {
    if (f.half_power == 0) return 1.0;
    return std::pow(static_cast<double>(f.ambient_n), 0.5 * f.half_power);
}

std::vector<double> folded_weights(const ScaledFunction& f, std::int64_t m) {
    std::vector<double> bins(static_cast<std::size_t>(m), 0.0);
    const double scale = scale_factor(f);
    for (std::size_t i = 0; i < f.weights.size(); ++i) {
        if (f.weights[i] == 0) continue;
        std::int64_t idx = (f.offset + static_cast<std::int64_t>(i)) % m;
        if (idx < 0) idx += m;
        bins[static_cast<std::size_t>(idx)] += f.weights[i].get_d() * scale;
    }
    return bins;
}

std::vector<double> fft_magnitudes(const std::vector<double>& bins) {
    const auto m = static_cast<int>(bins.size());
    FftwBuffer in(fftw_alloc_complex(bins.size()));
    FftwBuffer out(fftw_alloc_complex(bins.size()));
    fftw_plan plan = fftw_plan_dft_1d(m, in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    for (int j = 0; j < m; ++j) {
        in[j][0] = bins[static_cast<std::size_t>(j)];
        in[j][1] = 0.0;
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> mags(bins.size());
    for (int k = 0; k < m; ++k) mags[static_cast<std::size_t>(k)] = std::hypot(out[k][0], out[k][1]);
    return mags;
}

std::vector<double> direct_magnitudes(const std::vector<double>& bins) {
    const auto m = static_cast<std::int64_t>(bins.size());
    std::vector<std::complex<double>> table(bins.size());
    for (std::int64_t j = 0; j < m; ++j)
        table[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
    std::vector<std::int64_t> nz;
    for (std::int64_t j = 0; j < m; ++j)
        if (bins[static_cast<std::size_t>(j)] != 0.0) nz.push_back(j);
    std::vector<double> mags(bins.size());
    for (std::int64_t k = 0; k < m; ++k) {
        std::complex<double> acc = 0.0;
        for (auto j : nz)
            acc += bins[static_cast<std::size_t>(j)] * table[static_cast<std::size_t>(static_cast<__int128>(k) * j % m)];
        mags[static_cast<std::size_t>(k)] = std::abs(acc);
    }
    return mags;
}

double magnitude_at(const IntegerSet& s, const Frequency& a) {
    std::complex<double> acc = 0.0;
    for (auto x : s.elements()) {
        const auto r = static_cast<std::int64_t>(static_cast<__int128>(x) * a.k % a.m);
        acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(a.m));
    }
    return std::abs(acc);
}

} // namespace

std::vector<double> dft_magnitudes(const ScaledFunction& f, std::int64_t m) {
    if (m < 1) throw ValidationError("DFT grid size must be positive");
    const auto bins = folded_weights(f, m);
    if (std::has_single_bit(static_cast<std::uint64_t>(m))) return fft_magnitudes(bins);
    return direct_magnitudes(bins);
}

std::int64_t default_grid(std::int64_t width) {
    return static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(std::max<std::int64_t>(1, 8 * width))));
}

SupEstimate sup_norm_estimate(const ScaledFunction& f, int oversample) {
    if (oversample < 4) throw ValidationError("sup_norm_estimate: oversampling factor must be at least 4");
    const ScaledFunction t = f.trimmed();
    const auto width = std::max<std::int64_t>(1, static_cast<std::int64_t>(t.weights.size()));
    SupEstimate est;
    est.grid_m = static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(oversample * width)));
    est.grid_factor = 1.0 / std::cos(std::numbers::pi / oversample);
    const auto mags = dft_magnitudes(t, est.grid_m);
    const auto it = std::max_element(mags.begin(), mags.end());
    est.value = *it;
    est.argmax = Frequency{static_cast<std::int64_t>(it - mags.begin()), est.grid_m};
    return est;
}

Spectrum large_spectrum(const IntegerSet& s, const Rational& eps, std::int64_t m) {
    if (eps <= 0 || eps > 1) throw ValidationError("large_spectrum: eps must lie in (0, 1]");
    if (m < 1) throw ValidationError("large_spectrum: grid size must be positive");
    Spectrum spec;
    spec.threshold = eps;
    spec.grid_m = m;
    spec.ambient_n = s.ambient_n();
    spec.set_size = s.size();
    const auto mags = dft_magnitudes(ScaledFunction::indicator(s), m);
    const double size = static_cast<double>(s.size());
    const double cut = eps.get_d() * size - kSpectrumTolerance * size;
    for (std::int64_t k = 0; k < m; ++k)
        if (mags[static_cast<std::size_t>(k)] >= cut) spec.entries.push_back({Frequency{k, m}, mags[static_cast<std::size_t>(k)]});
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        const bool far = std::all_of(spec.separated.begin(), spec.separated.end(), [&](std::size_t j) {
            return separated(spec.entries[i].freq, spec.entries[j].freq, spec.ambient_n);
        });
        if (far) spec.separated.push_back(i);
    }
    return spec;
}

BigInt energy_via_fourier(const IntegerSet& s) {
    if (s.empty()) return 0;
    const auto m = std::bit_ceil(static_cast<std::uint64_t>(2 * s.ambient_n()));
    const BigInt size = static_cast<unsigned long>(s.size());
    const std::size_t count = ntt::primes_needed(size * size * size);
    const auto primes = ntt::primes();
    std::vector<std::uint64_t> residues(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const std::uint64_t p = primes[idx];
        std::vector<std::uint64_t> a(m, 0);
        for (auto x : s.elements()) a[static_cast<std::size_t>(x) % m] = 1;
        ntt::transform(a, false, idx);
        std::uint64_t sum = 0;
        for (std::size_t k = 0; k < m; ++k) {
            // |1_S^(k/M)|^2 is A(k) A(-k) over the field
            const std::uint64_t sq = ntt::mulmod(a[k], a[(m - k) % m], p);
            sum += ntt::mulmod(sq, sq, p);
            if (sum >= p) sum -= p;
        }
        residues[idx] = ntt::mulmod(sum, ntt::powmod(m % p, p - 2, p), p);
    }
    return ntt::reconstruct(residues);
}

SolutionCount function_energy(const ScaledFunction& f, const ConvolutionOptions& opts) {
    const IntegerWeights w = to_integer_weights(f);
    SolutionCount out{Rational(0), 4 * f.half_power, f.ambient_n};
    if (w.values.coeffs.empty()) return out;
    Sequence reflected{-w.values.highest(), {w.values.coeffs.rbegin(), w.values.coeffs.rend()}};
    const std::vector<Sequence> factors{w.values, reflected};
    const Sequence r = convolve(factors, opts);
    BigInt total = 0;
    for (const auto& c : r.coeffs) mpz_addmul(total.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
    out.value = Rational(total, pow(w.denominator, 4));
    out.value.canonicalize();
    return out;
}

LargeSieveReport large_sieve_diagnostic(const IntegerSet& s, const Spectrum& spectrum) {
    if (spectrum.separated.empty()) throw ValidationError("large sieve diagnostic needs a nonempty separated set");
    LargeSieveReport rep;
    const BigInt energy = representation_profile(s).energy();
    const BigInt n = to_bigint(s.ambient_n());
    rep.r_count = spectrum.r_count();
    for (const auto& a : spectrum.separated_frequencies()) {
        const double mag = magnitude_at(s, a);
        rep.lhs += (mag * mag) * (mag * mag);
    }
    rep.rhs = 2 * n * energy;
    rep.holds = rep.lhs <= rep.rhs.get_d() * (1.0 + 1e-9);
    rep.classical_rhs = (3 * n - 2) * energy;
    rep.classical_holds = rep.lhs <= rep.classical_rhs.get_d() * (1.0 + 1e-9);

    const Rational eta = almost_sidon_params(s).eta;
    const Rational size(static_cast<unsigned long>(s.size()));
    rep.r_lhs = Rational(static_cast<unsigned long>(rep.r_count)) * pow(spectrum.threshold, 4) * pow(size, 4);
    rep.r_rhs = Rational(2 * n) * (2 + eta) * size * size;
    rep.r_bound_holds = rep.r_lhs <= rep.r_rhs;
    return rep;
}

} // namespace sidonlab

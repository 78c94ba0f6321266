#include "sidonlab/convolution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <thread>

#include "sidonlab/errors.hpp"

namespace sidonlab {

BigInt Sequence::at(std::int64_t exponent) const {
    if (coeffs.empty() || exponent < lowest || exponent > highest()) return 0;
    return coeffs[static_cast<std::size_t>(exponent - lowest)];
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// c * 2^32 + 1, each with primitive root alongside
constexpr std::array<u64, 16> kPrimes = {
    4611685941117976577ULL, 4611685692009873409ULL, 4611685606110527489ULL, 4611685318347718657ULL,
    4611685232448372737ULL, 4611685219563470849ULL, 4611685125074190337ULL, 4611685090714451969ULL,
    4611685039174844417ULL, 4611685021994975233ULL, 4611684738527133697ULL, 4611684691282493441ULL,
    4611684674102624257ULL, 4611684609678114817ULL, 4611684588203278337ULL, 4611684274670665729ULL,
};
constexpr std::array<u64, 16> kRoots = {3, 19, 3, 5, 3, 3, 5, 3, 3, 5, 7, 3, 5, 5, 3, 7};
constexpr std::size_t kMaxLogLength = 32;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 base, u64 e, u64 p) {
    u64 r = 1;
    base %= p;
    while (e) {
        if (e & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void transform(std::vector<u64>& a, bool inverse, u64 p, u64 g) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 wlen = powmod(g, (p - 1) / len, p);
        if (inverse) wlen = invmod(wlen, p);
        const std::size_t half = len / 2;
        std::vector<u64> w(half);
        w[0] = 1;
        for (std::size_t j = 1; j < half; ++j) w[j] = mulmod(w[j - 1], wlen, p);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const u64 u = a[i + j];
                const u64 v = mulmod(a[i + j + half], w[j], p);
                const u64 s = u + v;
                a[i + j] = s >= p ? s - p : s;
                a[i + j + half] = u >= v ? u - v : u + p - v;
            }
        }
    }
    if (inverse) {
        const u64 ninv = invmod(n % p, p);
        for (auto& x : a) x = mulmod(x, ninv, p);
    }
}

u64 residue(const BigInt& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::size_t product_length(std::span<const Sequence> factors) {
    std::size_t len = 1;
    for (const auto& f : factors) len += f.coeffs.size() - 1;
    return len;
}

BigInt l1_norm(const Sequence& s) {
    BigInt total = 0;
    for (const auto& c : s.coeffs) total += abs(c);
    return total;
}

// Pointwise product of the transforms of every factor modulo prime `idx`.
std::vector<u64> transformed_product(std::span<const Sequence> factors, std::size_t length, std::size_t idx) {
    const u64 p = kPrimes[idx];
    const u64 g = kRoots[idx];
    std::vector<u64> acc(length, 1);
    std::vector<u64> buf(length);
    for (const auto& f : factors) {
        std::fill(buf.begin(), buf.end(), 0);
        for (std::size_t i = 0; i < f.coeffs.size(); ++i)
            if (f.coeffs[i] != 0) buf[i] = residue(f.coeffs[i], p);
        transform(buf, false, p, g);
        for (std::size_t k = 0; k < length; ++k) acc[k] = mulmod(acc[k], buf[k], p);
    }
    return acc;
}

class Crt {
public:
    explicit Crt(std::size_t count) : count_(count), modulus_(1) {
        inv_.assign(count, std::vector<u64>(count, 0));
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < i; ++j) inv_[j][i] = invmod(kPrimes[j] % kPrimes[i], kPrimes[i]);
        for (std::size_t i = 0; i < count; ++i) modulus_ *= BigInt(static_cast<unsigned long>(kPrimes[i]));
        half_ = modulus_ / 2;
    }

    // Garner mixed-radix reconstruction, then the symmetric lift into (-M/2, M/2].
    BigInt reconstruct(std::span<const u64> residues) const {
        std::vector<u64> digits(count_);
        for (std::size_t i = 0; i < count_; ++i) {
            const u64 p = kPrimes[i];
            u64 t = residues[i];
            for (std::size_t j = 0; j < i; ++j) {
                const u64 d = digits[j] % p;
                t = t >= d ? t - d : t + p - d;
                t = mulmod(t, inv_[j][i], p);
            }
            digits[i] = t;
        }
        BigInt x = static_cast<unsigned long>(digits[count_ - 1]);
        for (std::size_t j = count_ - 1; j-- > 0;) {
            x *= static_cast<unsigned long>(kPrimes[j]);
            x += static_cast<unsigned long>(digits[j]);
        }
        if (x > half_) x -= modulus_;
        return x;
    }

private:
    std::size_t count_;
    std::vector<std::vector<u64>> inv_;
    BigInt modulus_;
    BigInt half_;
};

BigInt coefficient_bound(std::span<const Sequence> factors) {
    BigInt bound = 1;
    for (const auto& f : factors) bound *= l1_norm(f);
    return bound;
}

Sequence convolve_pair_schoolbook(const Sequence& a, const Sequence& b) {
    Sequence out;
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.lowest = a.lowest + b.lowest;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    std::vector<std::size_t> nz_b;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
        if (b.coeffs[j] != 0) nz_b.push_back(j);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (auto j : nz_b)
            mpz_addmul(out.coeffs[i + j].get_mpz_t(), a.coeffs[i].get_mpz_t(), b.coeffs[j].get_mpz_t());
    }
    return out;
}

Sequence convolve_schoolbook(std::span<const Sequence> factors) {
    Sequence acc{0, {BigInt(1)}};
    for (const auto& f : factors) acc = convolve_pair_schoolbook(acc, f);
    return acc;
}

bool has_zero_factor(std::span<const Sequence> factors) {
    return std::any_of(factors.begin(), factors.end(), [](const Sequence& f) { return f.coeffs.empty(); });
}

std::int64_t lowest_sum(std::span<const Sequence> factors) {
    std::int64_t low = 0;
    for (const auto& f : factors) low += f.lowest;
    return low;
}

} // namespace

namespace ntt {

std::span<const std::uint64_t> primes() { return kPrimes; }

void transform(std::vector<std::uint64_t>& a, bool inverse, std::size_t prime_index) {
    if (prime_index >= kPrimes.size()) throw ValidationError("NTT prime index out of range");
    if (!std::has_single_bit(a.size())) throw ValidationError("NTT length must be a power of two");
    sidonlab::transform(a, inverse, kPrimes[prime_index], kRoots[prime_index]);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return sidonlab::mulmod(a, b, p); }
std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) { return sidonlab::powmod(base, e, p); }

BigInt reconstruct(std::span<const std::uint64_t> residues) {
    if (residues.empty() || residues.size() > kPrimes.size()) throw ValidationError("bad CRT residue count");
    return Crt(residues.size()).reconstruct(residues);
}

std::size_t primes_needed(const BigInt& bound) {
    const BigInt target = 2 * bound + 1;
    BigInt m = 1;
    for (std::size_t i = 0; i < kPrimes.size(); ++i) {
        m *= static_cast<unsigned long>(kPrimes[i]);
        if (m > target) return i + 1;
    }
    return 0;
}

bool convolve(std::span<const Sequence> factors, Sequence& out, unsigned threads) {
    if (factors.empty() || has_zero_factor(factors)) {
        out = factors.empty() ? Sequence{0, {BigInt(1)}} : Sequence{};
        return true;
    }
    const std::size_t count = primes_needed(coefficient_bound(factors));
    const std::size_t len = product_length(factors);
    const std::size_t length = std::bit_ceil(len);
    if (count == 0 || length > (std::size_t{1} << kMaxLogLength)) return false;

    std::vector<std::vector<u64>> images(count);
    parallel_for(count, threads, [&](std::size_t idx) {
        auto acc = transformed_product(factors, length, idx);
        sidonlab::transform(acc, true, kPrimes[idx], kRoots[idx]);
        images[idx] = std::move(acc);
    });

    const Crt crt(count);
    out.lowest = lowest_sum(factors);
    out.coeffs.assign(len, 0);
    std::vector<u64> residues(count);
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t i = 0; i < count; ++i) residues[i] = images[i][t];
        out.coeffs[t] = crt.reconstruct(residues);
    }
    return true;
}

} // namespace ntt

Sequence convolve(std::span<const Sequence> factors, const ConvolutionOptions& opts) {
    if (has_zero_factor(factors)) return Sequence{};
    if (product_length(factors) > opts.ntt_threshold) {
        Sequence out;
        if (ntt::convolve(factors, out, opts.threads)) return out;
    }
    return convolve_schoolbook(factors);
}

BigInt product_coefficient(std::span<const Sequence> factors, std::int64_t exponent, const ConvolutionOptions& opts) {
    if (factors.empty()) return exponent == 0 ? BigInt(1) : BigInt(0);
    if (has_zero_factor(factors)) return 0;
    const std::int64_t low = lowest_sum(factors);
    const std::size_t len = product_length(factors);
    if (exponent < low || exponent >= low + static_cast<std::int64_t>(len)) return 0;
    const auto t = static_cast<u64>(exponent - low);

    if (len > opts.ntt_threshold) {
        const std::size_t count = ntt::primes_needed(coefficient_bound(factors));
        const std::size_t length = std::bit_ceil(len);
        if (count != 0 && length <= (std::size_t{1} << kMaxLogLength)) {
            std::vector<u64> residues(count);
            parallel_for(count, opts.threads, [&](std::size_t idx) {
                const u64 p = kPrimes[idx];
                const auto acc = transformed_product(factors, length, idx);
                // c_t = L^{-1} sum_k P(k) w^{-kt}
                const u64 w = invmod(powmod(kRoots[idx], (p - 1) / length, p), p);
                const u64 step = powmod(w, t, p);
                u64 phase = 1;
                u64 sum = 0;
                for (std::size_t k = 0; k < length; ++k) {
                    sum += mulmod(acc[k], phase, p);
                    if (sum >= p) sum -= p;
                    phase = mulmod(phase, step, p);
                }
                residues[idx] = mulmod(sum, invmod(length % p, p), p);
            });
            return Crt(count).reconstruct(residues);
        }
    }

    // schoolbook: multiply all but the last factor, then one dot product
    const Sequence head = convolve_schoolbook(factors.first(factors.size() - 1));
    const Sequence& last = factors.back();
    BigInt total = 0;
    for (std::size_t j = 0; j < last.coeffs.size(); ++j) {
        if (last.coeffs[j] == 0) continue;
        const std::int64_t need = exponent - (last.lowest + static_cast<std::int64_t>(j));
        if (need < head.lowest || need > head.highest() || head.coeffs.empty()) continue;
        mpz_addmul(total.get_mpz_t(), head.coeffs[static_cast<std::size_t>(need - head.lowest)].get_mpz_t(),
                   last.coeffs[j].get_mpz_t());
    }
    return total;
}

} // namespace sidonlab

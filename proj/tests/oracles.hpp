#pragma once

// Naive reference implementations. They share no algorithm with the library:
// counts enumerate every tuple, energies every quadruple, Bohr membership uses
// exact rational distances.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "sidonlab/rational.hpp"

namespace oracle {

using sidonlab::BigInt;
using sidonlab::Rational;

// weighted function as a sparse map x -> f(x)
using Weights = std::map<std::int64_t, Rational>;

inline Weights indicator(std::span<const std::int64_t> elements) {
    Weights w;
    for (auto x : elements) w[x] = 1;
    return w;
}

namespace detail {
inline void enumerate(std::span<const std::int64_t> a, const std::vector<Weights>& fns, bool distinct, std::size_t i,
                      std::int64_t partial, const Rational& weight, std::vector<std::int64_t>& chosen, Rational& total) {
    if (i == a.size()) {
        if (partial == 0) total += weight;
        return;
    }
    for (const auto& [x, w] : fns[i]) {
        if (distinct) {
            bool clash = false;
            for (auto y : chosen) clash = clash || y == x;
            if (clash) continue;
        }
        chosen.push_back(x);
        enumerate(a, fns, distinct, i + 1, partial + a[i] * x, weight * w, chosen, total);
        chosen.pop_back();
    }
}
} // namespace detail

// sum over all s-tuples with a.x = 0 of prod f_i(x_i)
inline Rational count(std::span<const std::int64_t> a, const std::vector<Weights>& fns, bool distinct = false) {
    Rational total = 0;
    std::vector<std::int64_t> chosen;
    detail::enumerate(a, fns, distinct, 0, 0, Rational(1), chosen, total);
    return total;
}

// Splits the variables in two halves, tabulates the weighted partial sums of
// each half in a map and joins on sum = 0.
inline Rational count_by_partial_sums(std::span<const std::int64_t> a, const std::vector<Weights>& fns) {
    const std::size_t half = a.size() / 2;
    auto table = [&](std::size_t lo, std::size_t hi) {
        std::map<std::int64_t, Rational> t{{0, Rational(1)}};
        for (std::size_t i = lo; i < hi; ++i) {
            std::map<std::int64_t, Rational> next;
            for (const auto& [sum, w] : t)
                for (const auto& [x, fx] : fns[i]) next[sum + a[i] * x] += w * fx;
            t = std::move(next);
        }
        return t;
    };
    const auto left = table(0, half);
    const auto right = table(half, a.size());
    Rational total = 0;
    for (const auto& [sum, w] : left)
        if (auto it = right.find(-sum); it != right.end()) total += w * it->second;
    return total;
}

inline std::int64_t quadruple_energy(std::span<const std::int64_t> s) {
    std::int64_t e = 0;
    for (auto x : s)
        for (auto x2 : s)
            for (auto y : s)
                for (auto y2 : s) e += (x - x2 == y - y2);
    return e;
}

inline std::map<std::int64_t, std::int64_t> differences(std::span<const std::int64_t> s) {
    std::map<std::int64_t, std::int64_t> r;
    for (auto x : s)
        for (auto y : s) ++r[x - y];
    return r;
}

inline bool sidon_by_sums(std::span<const std::int64_t> s) {
    std::set<std::int64_t> sums;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i; j < s.size(); ++j)
            if (!sums.insert(s[i] + s[j]).second) return false;
    return true;
}

inline std::vector<std::int64_t> mian_chowla(std::size_t k) {
    std::vector<std::int64_t> out;
    for (std::int64_t c = 1; out.size() < k; ++c) {
        out.push_back(c);
        if (!sidon_by_sums(out)) out.pop_back();
    }
    return out;
}

// ||n k / m||_T <= eps with the fractional part taken as an exact rational
inline bool bohr_member(std::int64_t n, std::int64_t k, std::int64_t m, const Rational& eps) {
    Rational x(BigInt(n) * k, BigInt(m));
    x.canonicalize();
    Rational frac = x - Rational(sidonlab::floor(x));
    const Rational dist = frac < Rational(1, 2) ? frac : Rational(1) - frac;
    return dist <= eps;
}

inline std::complex<double> dft(const Weights& f, double alpha) {
    std::complex<long double> acc = 0;
    for (const auto& [x, w] : f) {
        const long double t = 2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>(alpha) * x;
        acc += static_cast<long double>(w.get_d()) * std::complex<long double>(std::cos(t), std::sin(t));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace oracle

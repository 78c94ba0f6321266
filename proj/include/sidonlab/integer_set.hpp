#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sidonlab/rational.hpp"

namespace sidonlab {

/// A finite set S of integers inside the ambient interval [1, N].
/// Immutable once constructed; the constructor enforces the invariants.
class IntegerSet {
public:
    /// The empty subset of [1, 1].
    IntegerSet() = default;
    IntegerSet(std::vector<std::int64_t> elements, std::int64_t ambient_n);

    std::span<const std::int64_t> elements() const { return elements_; }
    std::int64_t ambient_n() const { return ambient_n_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(std::int64_t x) const;

    /// Same elements, larger ambient interval (used when padding N to a square).
    IntegerSet with_ambient(std::int64_t ambient_n) const;

    friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

private:
    std::vector<std::int64_t> elements_;
    std::int64_t ambient_n_ = 1;
};

/// n -> r_S(n), the number of ordered pairs (n1, n2) in S^2 with n1 - n2 = n,
/// for n in [-(N-1), N-1], together with E(S) = sum_n r_S(n)^2.
class RepresentationProfile {
public:
    RepresentationProfile(std::vector<std::int64_t> counts, std::int64_t ambient_n, BigInt energy);

    std::int64_t ambient_n() const { return ambient_n_; }
    /// r_S(n); zero outside [-(N-1), N-1].
    std::int64_t operator[](std::int64_t n) const;
    std::int64_t max_difference() const { return ambient_n_ - 1; }
    const BigInt& energy() const { return energy_; }
    std::span<const std::int64_t> raw() const { return counts_; }

private:
    std::vector<std::int64_t> counts_; // index n + (N - 1)
    std::int64_t ambient_n_;
    BigInt energy_;
};

struct AlmostSidonParams {
    Rational eta;   // least eta >= 0 with E(S) <= (2 + eta)|S|^2
    Rational delta; // min(1, |S| / ceil(sqrt N))
    /// Exact comparison delta^2 N <= |S|^2, i.e. |S| >= delta N^{1/2}.
    bool density_holds = false;
};

bool is_prime(std::int64_t n);

/// {2pa + (a^2 mod p) + 1 : 0 <= a < p} in [1, 2p^2]. Throws ValidationError for non-prime p.
IntegerSet erdos_turan(std::int64_t p);

/// First k terms of the greedy Sidon sequence 1, 2, 4, 8, 13, ...; ambient N is the last term.
IntegerSet mian_chowla(std::int64_t k);

RepresentationProfile representation_profile(const IntegerSet& s);

bool is_sidon(const IntegerSet& s);

/// Throws ValidationError for the empty set.
AlmostSidonParams almost_sidon_params(const IntegerSet& s);

/// S plus `extra` distinct new points drawn uniformly from [1, N] \ S by a
/// SplitMix64 stream seeded with `seed`.
IntegerSet perturb_almost_sidon(const IntegerSet& s, std::int64_t extra, std::uint64_t seed);

// Set file: "N <ambient_n>" on the first line, then one element per line in
// increasing order; lines starting with '#' are comments.
IntegerSet read_set(std::istream& in);
IntegerSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const IntegerSet& s);
void write_set_file(const std::string& path, const IntegerSet& s);

} // namespace sidonlab

#include "sidonlab/integer_set.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sidonlab/errors.hpp"
#include "sidonlab/rng.hpp"

namespace sidonlab {

IntegerSet::IntegerSet(std::vector<std::int64_t> elements, std::int64_t ambient_n)
    : elements_(std::move(elements)), ambient_n_(ambient_n) {
    if (ambient_n_ < 1) throw ValidationError("ambient N must be positive, got " + std::to_string(ambient_n_));
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const auto x = elements_[i];
        if (x < 1 || x > ambient_n_)
            throw ValidationError("element " + std::to_string(x) + " outside [1, " + std::to_string(ambient_n_) + "]");
        if (i > 0 && elements_[i - 1] >= x) throw ValidationError("elements must be strictly increasing");
    }
}

bool IntegerSet::contains(std::int64_t x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

IntegerSet IntegerSet::with_ambient(std::int64_t ambient_n) const { return IntegerSet(elements_, ambient_n); }

RepresentationProfile::RepresentationProfile(std::vector<std::int64_t> counts, std::int64_t ambient_n, BigInt energy)
    : counts_(std::move(counts)), ambient_n_(ambient_n), energy_(std::move(energy)) {}

std::int64_t RepresentationProfile::operator[](std::int64_t n) const {
    if (n < -max_difference() || n > max_difference()) return 0;
    return counts_[static_cast<std::size_t>(n + max_difference())];
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

IntegerSet erdos_turan(std::int64_t p) {
    if (!is_prime(p)) throw ValidationError("erdos_turan: p = " + std::to_string(p) + " is not prime");
    std::vector<std::int64_t> elems;
    elems.reserve(static_cast<std::size_t>(p));
    for (std::int64_t a = 0; a < p; ++a) elems.push_back(2 * p * a + (a * a) % p + 1);
    return IntegerSet(std::move(elems), 2 * p * p);
}

IntegerSet mian_chowla(std::int64_t k) {
    if (k < 1) throw ValidationError("mian_chowla: k must be positive");
    std::vector<std::int64_t> seq{1};
    std::vector<bool> used_diff{true}; // difference 0 is always taken
    while (static_cast<std::int64_t>(seq.size()) < k) {
        for (std::int64_t c = seq.back() + 1;; ++c) {
            if (static_cast<std::size_t>(c) >= used_diff.size()) used_diff.resize(static_cast<std::size_t>(2 * c), false);
            bool ok = true;
            for (auto x : seq)
                if (used_diff[static_cast<std::size_t>(c - x)]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (auto x : seq) used_diff[static_cast<std::size_t>(c - x)] = true;
            seq.push_back(c);
            break;
        }
    }
    const auto n = seq.back();
    return IntegerSet(std::move(seq), n);
}

RepresentationProfile representation_profile(const IntegerSet& s) {
    const auto n = s.ambient_n();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * n - 1), 0);
    const auto elems = s.elements();
    for (auto x : elems)
        for (auto y : elems) ++counts[static_cast<std::size_t>(x - y + n - 1)];
    BigInt energy = 0;
    for (auto c : counts)
        if (c != 0) energy += to_bigint(c) * c;
    return RepresentationProfile(std::move(counts), n, std::move(energy));
}

bool is_sidon(const IntegerSet& s) {
    const auto k = to_bigint(static_cast<std::int64_t>(s.size()));
    return representation_profile(s).energy() == 2 * k * k - k;
}

AlmostSidonParams almost_sidon_params(const IntegerSet& s) {
    if (s.empty()) throw ValidationError("almost_sidon_params: empty set");
    const auto k = to_bigint(static_cast<std::int64_t>(s.size()));
    const BigInt e = representation_profile(s).energy();
    AlmostSidonParams out;
    Rational excess(e, k * k);
    excess.canonicalize();
    excess -= 2;
    out.eta = excess > 0 ? excess : Rational(0);
    Rational delta(k, to_bigint(ceil_sqrt(s.ambient_n())));
    delta.canonicalize();
    out.delta = delta > 1 ? Rational(1) : delta;
    out.density_holds = out.delta * out.delta * s.ambient_n() <= Rational(k * k);
    return out;
}

IntegerSet perturb_almost_sidon(const IntegerSet& s, std::int64_t extra, std::uint64_t seed) {
    if (extra < 0) throw ValidationError("perturb: extra must be nonnegative");
    const auto n = s.ambient_n();
    if (extra + static_cast<std::int64_t>(s.size()) > n)
        throw ValidationError("perturb: not enough room in [1, N] for " + std::to_string(extra) + " new points");
    std::vector<std::int64_t> free;
    free.reserve(static_cast<std::size_t>(n) - s.size());
    for (std::int64_t x = 1; x <= n; ++x)
        if (!s.contains(x)) free.push_back(x);
    // partial Fisher-Yates: the first `extra` slots become a uniform sample
    SplitMix64 rng(seed);
    for (std::int64_t i = 0; i < extra; ++i) {
        const auto j = i + static_cast<std::int64_t>(rng.below(free.size() - static_cast<std::size_t>(i)));
        std::swap(free[static_cast<std::size_t>(i)], free[static_cast<std::size_t>(j)]);
    }
    std::vector<std::int64_t> elems(s.elements().begin(), s.elements().end());
    elems.insert(elems.end(), free.begin(), free.begin() + extra);
    std::sort(elems.begin(), elems.end());
    return IntegerSet(std::move(elems), n);
}

IntegerSet read_set(std::istream& in) {
    std::string line;
    std::int64_t n = -1;
    std::vector<std::int64_t> elems;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "N")
                throw ValidationError("set file line " + std::to_string(lineno) + ": expected 'N <ambient_n>'");
        } else {
            std::int64_t x;
            if (!(ls >> x)) throw ValidationError("set file line " + std::to_string(lineno) + ": expected an integer");
            elems.push_back(x);
        }
        std::string trailing;
        if (ls >> trailing) throw ValidationError("set file line " + std::to_string(lineno) + ": trailing text");
    }
    if (n < 0) throw ValidationError("set file: missing 'N <ambient_n>' header");
    return IntegerSet(std::move(elems), n);
}

IntegerSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open set file '" + path + "'");
    return read_set(in);
}

void write_set(std::ostream& out, const IntegerSet& s) {
    out << "N " << s.ambient_n() << '\n';
    for (auto x : s.elements()) out << x << '\n';
}

void write_set_file(const std::string& path, const IntegerSet& s) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write set file '" + path + "'");
    write_set(out, s);
}

} // namespace sidonlab

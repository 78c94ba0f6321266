#include "sidonlab/counting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "sidonlab/errors.hpp"

namespace sidonlab {

EquationCoeffs::EquationCoeffs(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw ValidationError("an equation needs at least two variables");
    if (std::find(coeffs_.begin(), coeffs_.end(), 0) != coeffs_.end())
        throw ValidationError("equation coefficients must be nonzero");
}

EquationCoeffs EquationCoeffs::parse(std::string_view text) {
    std::vector<std::int64_t> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        item = first == std::string::npos ? std::string() : item.substr(first, item.find_last_not_of(" \t") - first + 1);
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ValidationError("bad coefficient '" + item + "' in '" + std::string(text) + "'");
        out.push_back(v);
    }
    return EquationCoeffs(std::move(out));
}

bool EquationCoeffs::translation_invariant() const {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0}) == 0;
}

EquationCoeffs EquationCoeffs::negated() const {
    std::vector<std::int64_t> neg(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), neg.begin(), [](auto a) { return -a; });
    return EquationCoeffs(std::move(neg));
}

ScaledFunction ScaledFunction::indicator(const IntegerSet& s, int half_power) {
    ScaledFunction f;
    f.half_power = half_power;
    f.ambient_n = s.ambient_n();
    if (s.empty()) {
        f.offset = 1;
        return f;
    }
    const auto elems = s.elements();
    f.offset = elems.front();
    f.weights.assign(static_cast<std::size_t>(elems.back() - elems.front() + 1), Rational(0));
    for (auto x : elems) f.weights[static_cast<std::size_t>(x - f.offset)] = 1;
    return f;
}

ScaledFunction ScaledFunction::interval(std::int64_t lo, std::int64_t hi, std::int64_t ambient_n) {
    ScaledFunction f;
    f.offset = lo;
    f.ambient_n = ambient_n;
    if (hi >= lo) f.weights.assign(static_cast<std::size_t>(hi - lo + 1), Rational(1));
    return f;
}

Rational ScaledFunction::weight(std::int64_t x) const {
    if (weights.empty() || x < offset || x > last()) return 0;
    return weights[static_cast<std::size_t>(x - offset)];
}

std::optional<Rational> ScaledFunction::value(std::int64_t x) const {
    return scale_by_half_power(weight(x), ambient_n, half_power);
}

ScaledFunction ScaledFunction::trimmed() const {
    ScaledFunction out{offset, {}, half_power, ambient_n};
    std::size_t first = 0;
    while (first < weights.size() && weights[first] == 0) ++first;
    std::size_t end = weights.size();
    while (end > first && weights[end - 1] == 0) --end;
    out.offset = offset + static_cast<std::int64_t>(first);
    out.weights.assign(weights.begin() + static_cast<std::ptrdiff_t>(first), weights.begin() + static_cast<std::ptrdiff_t>(end));
    return out;
}

std::size_t ScaledFunction::support_size() const {
    return static_cast<std::size_t>(std::count_if(weights.begin(), weights.end(), [](const Rational& w) { return w != 0; }));
}

bool ScaledFunction::nonnegative() const {
    return std::all_of(weights.begin(), weights.end(), [](const Rational& w) { return w >= 0; });
}

Rational ScaledFunction::weight_sum() const {
    Rational total = 0;
    for (const auto& w : weights) total += w;
    return total;
}

ScaledFunction ScaledFunction::scaled(const Rational& q) const {
    ScaledFunction out = *this;
    for (auto& w : out.weights) w *= q;
    return out;
}

std::optional<Rational> SolutionCount::exact() const { return scale_by_half_power(value, ambient_n, half_power); }

namespace {

using IntegerFunction = IntegerWeights;

IntegerFunction integerize(const ScaledFunction& f) {
    const ScaledFunction t = f.trimmed();
    IntegerFunction out;
    for (const auto& w : t.weights) out.denominator = lcm(out.denominator, w.get_den());
    out.values.lowest = t.offset;
    out.values.coeffs.reserve(t.weights.size());
    for (const auto& w : t.weights) out.values.coeffs.push_back(w.get_num() * (out.denominator / w.get_den()));
    return out;
}

IntegerFunction integerize(const IntegerSet& s) { return integerize(ScaledFunction::indicator(s)); }

// h(m) = f(x) at m = a x
Sequence dilate(const Sequence& f, std::int64_t a) {
    if (f.coeffs.empty()) return {};
    if (a == 0) {
        BigInt total = 0;
        for (const auto& c : f.coeffs) total += c;
        return Sequence{0, {total}};
    }
    const auto len = f.coeffs.size();
    const auto step = static_cast<std::size_t>(a > 0 ? a : -a);
    Sequence out;
    out.lowest = a > 0 ? a * f.lowest : a * f.highest();
    out.coeffs.assign((len - 1) * step + 1, 0);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t pos = a > 0 ? i * step : (len - 1 - i) * step;
        out.coeffs[pos] = f.coeffs[i];
    }
    return out;
}

// sum over a.x = 0 of prod f_i(x_i); any s >= 0, zero coefficients allowed.
BigInt integer_count(std::span<const std::int64_t> coeffs, std::span<const Sequence> fns, const ConvolutionOptions& opts) {
    std::vector<Sequence> dilated;
    dilated.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) dilated.push_back(dilate(fns[i], coeffs[i]));
    return product_coefficient(dilated, 0, opts);
}

std::int64_t common_ambient(std::span<const ScaledFunction> fns) {
    std::optional<std::int64_t> ambient;
    for (const auto& f : fns) {
        if (f.half_power == 0) continue;
        if (ambient && *ambient != f.ambient_n)
            throw ValidationError("functions carry N^{1/2} powers against different ambient N");
        ambient = f.ambient_n;
    }
    if (ambient) return *ambient;
    return fns.empty() ? 1 : fns.front().ambient_n;
}

void check_arity(const EquationCoeffs& eq, std::size_t n) {
    if (n != eq.size())
        throw ValidationError("expected " + std::to_string(eq.size()) + " functions, got " + std::to_string(n));
}

// Solutions constant on each block of `labels`; blocks whose coefficients cancel are free.
BigInt merged_count(std::span<const std::int64_t> coeffs, std::span<const int> labels, const Sequence& indicator,
                    std::size_t set_size, const ConvolutionOptions& opts) {
    const int blocks = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::int64_t> merged(static_cast<std::size_t>(blocks), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) merged[static_cast<std::size_t>(labels[i])] += coeffs[i];
    std::vector<std::int64_t> live;
    unsigned long free_blocks = 0;
    for (auto c : merged) {
        if (c == 0)
            ++free_blocks;
        else
            live.push_back(c);
    }
    std::vector<Sequence> fns(live.size(), indicator);
    return pow(BigInt(static_cast<unsigned long>(set_size)), free_blocks) * integer_count(live, fns, opts);
}

BigInt mobius_weight(std::span<const int> labels) {
    const int blocks = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<unsigned long> sizes(static_cast<std::size_t>(blocks), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    BigInt mu = 1;
    for (auto b : sizes) {
        BigInt fact;
        mpz_fac_ui(fact.get_mpz_t(), b - 1);
        mu *= (b % 2 == 1) ? fact : BigInt(-fact);
    }
    return mu;
}

struct SupportPoint {
    std::int64_t x;
    BigInt z;
};

std::vector<SupportPoint> support_points(const IntegerFunction& f) {
    std::vector<SupportPoint> pts;
    for (std::size_t i = 0; i < f.values.coeffs.size(); ++i)
        if (f.values.coeffs[i] != 0) pts.push_back({f.values.lowest + static_cast<std::int64_t>(i), f.values.coeffs[i]});
    return pts;
}

// Enumerates x_1..x_{s-1} and solves a_s x_s = -sum.
template <class Acc>
class Enumerator {
public:
    Enumerator(std::span<const std::int64_t> coeffs, const std::vector<std::vector<SupportPoint>>& supports,
               const std::vector<std::vector<Acc>>& weights, const IntegerFunction& last, bool distinct)
        : coeffs_(coeffs), supports_(supports), weights_(weights), last_(last), distinct_(distinct),
          chosen_(coeffs.size()) {
        for (const auto& c : last.values.coeffs) last_weights_.push_back(convert(c));
    }

    Acc run() {
        Acc total = 0;
        recurse(0, 0, Acc(1), total);
        return total;
    }

private:
    static Acc convert(const BigInt& z) {
        if constexpr (std::is_same_v<Acc, BigInt>)
            return z;
        else
            return static_cast<Acc>(mpz_get_si(z.get_mpz_t()));
    }

    void recurse(std::size_t depth, std::int64_t partial, const Acc& product, Acc& total) {
        const std::size_t s = coeffs_.size();
        if (depth + 1 == s) {
            const std::int64_t a = coeffs_[s - 1];
            if (partial % a != 0) return;
            const std::int64_t x = -partial / a;
            if (x < last_.values.lowest || x > last_.values.highest()) return;
            const auto& w = last_weights_[static_cast<std::size_t>(x - last_.values.lowest)];
            if (w == 0) return;
            if (distinct_)
                for (std::size_t j = 0; j < depth; ++j)
                    if (chosen_[j] == x) return;
            total += product * w;
            return;
        }
        const auto& pts = supports_[depth];
        const auto& ws = weights_[depth];
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const std::int64_t x = pts[k].x;
            if (distinct_) {
                bool clash = false;
                for (std::size_t j = 0; j < depth && !clash; ++j) clash = chosen_[j] == x;
                if (clash) continue;
            }
            chosen_[depth] = x;
            recurse(depth + 1, partial + coeffs_[depth] * x, Acc(product * ws[k]), total);
        }
    }

    std::span<const std::int64_t> coeffs_;
    const std::vector<std::vector<SupportPoint>>& supports_;
    const std::vector<std::vector<Acc>>& weights_;
    const IntegerFunction& last_;
    bool distinct_;
    std::vector<std::int64_t> chosen_;
    std::vector<Acc> last_weights_;
};

} // namespace

IntegerWeights to_integer_weights(const ScaledFunction& f) { return integerize(f); }

SolutionCount count_solutions(const EquationCoeffs& eq, std::span<const ScaledFunction> fns, const ConvolutionOptions& opts) {
    check_arity(eq, fns.size());
    SolutionCount out;
    out.ambient_n = common_ambient(fns);
    std::vector<Sequence> seqs;
    BigInt denominator = 1;
    for (const auto& f : fns) {
        auto ints = integerize(f);
        denominator *= ints.denominator;
        seqs.push_back(std::move(ints.values));
        out.half_power += f.half_power;
    }
    out.value = Rational(integer_count(eq.coeffs(), seqs, opts), denominator);
    out.value.canonicalize();
    return out;
}

std::vector<std::vector<int>> set_partitions(std::size_t n) {
    std::vector<std::vector<int>> out;
    std::vector<int> labels(n, 0);
    std::vector<int> max_prefix(n, 0); // max label among labels[0..i-1]
    if (n == 0) return {{}};
    // restricted growth strings: labels[i] <= 1 + max(labels[0..i-1])
    for (;;) {
        out.push_back(labels);
        std::size_t i = n;
        while (i-- > 1) {
            max_prefix[i] = *std::max_element(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(i));
            if (labels[i] <= max_prefix[i]) break;
        }
        if (i == 0) break;
        ++labels[i];
        for (std::size_t j = i + 1; j < n; ++j) labels[j] = 0;
    }
    return out;
}

SolutionCount count_distinct_solutions(const EquationCoeffs& eq, const IntegerSet& s, const ConvolutionOptions& opts) {
    if (eq.size() > kMaxDistinctVariables)
        throw ValidationError("distinct counting supports at most " + std::to_string(kMaxDistinctVariables) +
                              " variables (partition lattice too large); use brute force instead");
    const Sequence indicator = integerize(s).values;
    BigInt total = 0;
    for (const auto& labels : set_partitions(eq.size()))
        total += mobius_weight(labels) * merged_count(eq.coeffs(), labels, indicator, s.size(), opts);
    return SolutionCount{Rational(total), 0, s.ambient_n()};
}

SolutionCount brute_force_count(const EquationCoeffs& eq, std::span<const ScaledFunction> fns, bool distinct_only,
                                std::uint64_t budget) {
    check_arity(eq, fns.size());
    SolutionCount out;
    out.ambient_n = common_ambient(fns);
    for (const auto& f : fns) out.half_power += f.half_power;

    std::vector<IntegerFunction> ints;
    BigInt denominator = 1;
    for (const auto& f : fns) {
        ints.push_back(integerize(f));
        denominator *= ints.back().denominator;
    }
    const std::size_t s = eq.size();
    std::vector<std::vector<SupportPoint>> supports;
    BigInt tuples = 1;
    for (std::size_t i = 0; i + 1 < s; ++i) {
        supports.push_back(support_points(ints[i]));
        tuples *= static_cast<unsigned long>(supports.back().size());
    }
    if (tuples > BigInt(static_cast<unsigned long>(budget)))
        throw BudgetExceeded("brute force would enumerate " + tuples.get_str() + " tuples (budget " +
                             std::to_string(budget) + ")");

    // machine-word accumulation whenever every partial product and the total provably fit
    BigInt max_product = 1;
    bool small = true;
    for (const auto& f : ints) {
        BigInt m = 0;
        for (const auto& c : f.values.coeffs) m = std::max<BigInt>(m, abs(c));
        small = small && mpz_sizeinbase(m.get_mpz_t(), 2) <= 62;
        max_product *= m;
    }
    small = small && mpz_sizeinbase(max_product.get_mpz_t(), 2) + mpz_sizeinbase(tuples.get_mpz_t(), 2) < 120;

    BigInt total;
    if (small) {
        std::vector<std::vector<__int128>> weights;
        for (const auto& pts : supports) {
            weights.emplace_back();
            for (const auto& p : pts) weights.back().push_back(mpz_get_si(p.z.get_mpz_t()));
        }
        Enumerator<__int128> en(eq.coeffs(), supports, weights, ints.back(), distinct_only);
        const __int128 t = en.run();
        // split into two 64-bit halves for GMP
        const bool neg = t < 0;
        const unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-t) : static_cast<unsigned __int128>(t);
        total = BigInt(static_cast<unsigned long>(mag >> 64));
        total <<= 64;
        total += BigInt(static_cast<unsigned long>(mag & 0xffffffffffffffffULL));
        if (neg) total = -total;
    } else {
        std::vector<std::vector<BigInt>> weights;
        for (const auto& pts : supports) {
            weights.emplace_back();
            for (const auto& p : pts) weights.back().push_back(p.z);
        }
        Enumerator<BigInt> en(eq.coeffs(), supports, weights, ints.back(), distinct_only);
        total = en.run();
    }
    out.value = Rational(total, denominator);
    out.value.canonicalize();
    return out;
}

DegenerateReport degenerate_bound_check(const EquationCoeffs& eq, const IntegerSet& s, const ConvolutionOptions& opts) {
    const std::size_t n = eq.size();
    if (n < 5) throw ValidationError("degenerate_bound_check needs s >= 5");
    const Sequence indicator = integerize(s).values;
    const auto a = eq.coeffs();

    DegenerateReport rep;
    rep.energy = representation_profile(s).energy();
    const BigInt energy_cubed = pow(rep.energy, 3);

    // shift multiplicities: n = a_4 x_4 + ... + a_{s-2} x_{s-2} + (a_{s-1} + a_s) x_s
    std::vector<Sequence> shift_factors;
    for (std::size_t i = 3; i + 2 < n; ++i) shift_factors.push_back(dilate(indicator, a[i]));
    shift_factors.push_back(dilate(indicator, a[n - 2] + a[n - 1]));
    const Sequence shifts = convolve(shift_factors, opts);

    const std::vector<Sequence> head{dilate(indicator, a[0]), dilate(indicator, a[1]), dilate(indicator, a[2])};
    const Sequence triples = convolve(head, opts);

    rep.max_count = 0;
    rep.pair_total = 0;
    for (std::size_t i = 0; i < shifts.coeffs.size(); ++i) {
        const BigInt& mult = shifts.coeffs[i];
        if (mult == 0) continue;
        const std::int64_t shift = shifts.lowest + static_cast<std::int64_t>(i);
        const BigInt c = triples.at(-shift);
        ++rep.shifts_checked;
        rep.max_count = std::max(rep.max_count, c);
        if (pow(c, 4) > energy_cubed) rep.bound_holds = false;
        rep.pair_total += mult * c;
    }

    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    rep.total = merged_count(a, identity, indicator, s.size(), opts);
    rep.distinct = count_distinct_solutions(eq, s, opts).value.get_num();
    rep.degenerate_total = rep.total - rep.distinct;
    rep.union_bound = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<int> labels(n);
            int next = 0;
            for (std::size_t k = 0; k < n; ++k) labels[k] = k == j ? labels[i] : next++;
            rep.union_bound += merged_count(a, labels, indicator, s.size(), opts);
        }
    rep.union_bound_holds = rep.degenerate_total <= rep.union_bound;
    return rep;
}

} // namespace sidonlab

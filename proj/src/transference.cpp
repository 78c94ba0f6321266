#include "sidonlab/transference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sidonlab/errors.hpp"

namespace sidonlab {

bool BohrSet::contains(std::int64_t n) const { return std::binary_search(elements.begin(), elements.end(), n); }

bool bohr_condition(std::int64_t n, const Frequency& alpha, const Rational& radius) {
    __int128 r = static_cast<__int128>(n) * alpha.k % alpha.m;
    if (r < 0) r += alpha.m;
    const __int128 dist = std::min<__int128>(r, alpha.m - r);
    // dist / m <= num / den
    return BigInt(static_cast<long>(dist)) * radius.get_den() <= radius.get_num() * alpha.m;
}

BohrSet bohr_set(std::span<const Frequency> freqs, const Rational& eps, std::int64_t n) {
    if (eps <= 0 || eps > Rational(1, 2)) throw ValidationError("bohr_set: radius must lie in (0, 1/2]");
    if (n < 1) throw ValidationError("bohr_set: N must be positive");
    for (const auto& a : freqs)
        if (a.m < 1) throw ValidationError("bohr_set: frequency denominators must be positive");
    BohrSet b;
    b.freqs.assign(freqs.begin(), freqs.end());
    b.radius = eps;
    b.ambient_n = n;
    b.width = to_int64(floor(eps * n));
    for (std::int64_t x = -b.width; x <= b.width; ++x) {
        const bool member = std::all_of(freqs.begin(), freqs.end(), [&](const Frequency& a) { return bohr_condition(x, a, eps); });
        if (member) b.elements.push_back(x);
    }
    return b;
}

BohrLowerBound bohr_lower_bound(const BohrSet& bohr, std::size_t rank) {
    BohrLowerBound out;
    out.rank = rank;
    out.base = ceil(Rational(4) / bohr.radius);
    const BigInt power = pow(out.base, static_cast<unsigned long>(rank + 1));
    const BigInt size = static_cast<unsigned long>(bohr.size());
    out.bound = Rational(to_bigint(bohr.ambient_n), power);
    out.bound.canonicalize();
    out.holds = size * power >= bohr.ambient_n;
    out.uncorrected_holds = size >= power * bohr.ambient_n;
    return out;
}

BohrInclusion verify_bohr_inclusion(const BohrSet& bohr, const Spectrum& spectrum) {
    const Rational half = bohr.radius / 2;
    const std::int64_t inner_width = to_int64(floor(half * bohr.ambient_n));
    const auto freqs = spectrum.separated_frequencies();
    BohrInclusion out;
    out.holds = true;
    for (std::int64_t x = -inner_width; x <= inner_width; ++x) {
        const bool member = std::all_of(freqs.begin(), freqs.end(), [&](const Frequency& a) { return bohr_condition(x, a, half); });
        if (!member) continue;
        ++out.inner_size;
        if (!bohr.contains(x)) out.holds = false;
    }
    return out;
}

namespace {

Sequence indicator_sequence(std::span<const std::int64_t> sorted) {
    Sequence seq;
    if (sorted.empty()) return seq;
    seq.lowest = sorted.front();
    seq.coeffs.assign(static_cast<std::size_t>(sorted.back() - sorted.front() + 1), 0);
    for (auto x : sorted) seq.coeffs[static_cast<std::size_t>(x - seq.lowest)] = 1;
    return seq;
}

// weights of 1_S on the window [offset, offset + len)
std::vector<Rational> indicator_on_window(const IntegerSet& s, std::int64_t offset, std::size_t len) {
    std::vector<Rational> w(len, Rational(0));
    for (auto x : s.elements()) {
        const auto i = x - offset;
        if (i >= 0 && static_cast<std::size_t>(i) < len) w[static_cast<std::size_t>(i)] = 1;
    }
    return w;
}

Rational exact_or_throw(const std::optional<Rational>& v, const char* what) {
    if (!v) throw ValidationError(std::string(what) + ": value is irrational (pad N to a perfect square)");
    return *v;
}

} // namespace

ScaledFunction DenseModel::model() const {
    ScaledFunction f = base.scaled(Rational(1, static_cast<unsigned long>(bohr.size())));
    f.half_power = 1;
    return f;
}

ScaledFunction DenseModel::scaled_indicator() const { return ScaledFunction::indicator(set, 1); }

ScaledFunction DenseModel::majorant() const {
    ScaledFunction nu = model();
    const auto ind = indicator_on_window(set, nu.offset, nu.weights.size());
    for (std::size_t i = 0; i < ind.size(); ++i) nu.weights[i] += ind[i];
    return nu;
}

DenseModel dense_model(const IntegerSet& s, const Rational& eps, std::optional<std::int64_t> grid_m,
                       const ConvolutionOptions& opts) {
    if (s.empty()) throw ValidationError("dense_model: empty set");
    const std::int64_t root = ceil_sqrt(s.ambient_n());
    const std::int64_t n = root * root;
    const BigInt size = static_cast<unsigned long>(s.size());
    if (eps <= 0 || eps > Rational(1, 2)) throw ValidationError("dense_model: eps must lie in (0, 1/2]");
    if (eps * eps * n > Rational(size * size))
        throw ValidationError("dense_model: eps exceeds the density |S|/N^{1/2} = " + to_string(Rational(size, root)));

    DenseModel dm{s.with_ambient(n), s.ambient_n(), root, eps, {}, {}, {}, {}};
    dm.spectrum = large_spectrum(dm.set, eps, grid_m.value_or(default_grid(n)));
    const auto freqs = dm.spectrum.frequencies();
    dm.bohr = bohr_set(freqs, eps, n);

    const std::vector<Sequence> factors{indicator_sequence(dm.set.elements()), indicator_sequence(dm.bohr.elements)};
    const Sequence g = convolve(factors, opts);
    dm.base.offset = g.lowest;
    dm.base.half_power = 0;
    dm.base.ambient_n = n;
    dm.base.weights.reserve(g.coeffs.size());
    BigInt mass = 0;
    BigInt sum_sq = 0;
    for (const auto& c : g.coeffs) {
        dm.base.weights.emplace_back(c);
        mass += c;
        sum_sq += c * c;
    }

    const BigInt bsize = static_cast<unsigned long>(dm.bohr.size());
    dm.diag.mass_identity = mass == size * bsize;
    dm.diag.mass = Rational(mass * root, bsize);
    dm.diag.mass.canonicalize();
    dm.diag.l2_value = Rational(sum_sq * n, bsize * bsize);
    dm.diag.l2_value.canonicalize();
    dm.diag.support_ok = Rational(g.lowest) > -eps * n && Rational(g.highest()) <= (1 + eps) * n;

    ScaledFunction diff = dm.model();
    const auto ind = indicator_on_window(dm.set, diff.offset, diff.weights.size());
    for (std::size_t i = 0; i < ind.size(); ++i) diff.weights[i] = ind[i] - diff.weights[i];
    const SupEstimate sup = sup_norm_estimate(diff, 8);
    dm.diag.fourier_distance = sup.value;
    dm.diag.fourier_argmax = sup.argmax;
    dm.diag.fourier_grid = sup.grid_m;
    dm.diag.fourier_grid_factor = sup.grid_factor;
    return dm;
}

RepresentationBoundVerdict verify_representation_bound(const IntegerSet& s) {
    const auto profile = representation_profile(s);
    RepresentationBoundVerdict v;
    v.lhs = 0;
    for (std::int64_t d = -profile.max_difference(); d <= profile.max_difference(); ++d)
        if (d != 0 && profile[d] > 1) v.lhs += to_bigint(profile[d]);
    const Rational size(static_cast<unsigned long>(s.size()));
    v.rhs = (s.empty() ? Rational(0) : almost_sidon_params(s).eta) * size * size + size;
    v.holds = Rational(v.lhs) <= v.rhs;
    return v;
}

SizeBoundVerdict verify_size_bound(const IntegerSet& s) {
    SizeBoundVerdict v;
    v.rhs = 4 * to_bigint(s.ambient_n());
    if (s.empty()) {
        v.lhs = 0;
        v.holds = true;
        return v;
    }
    const Rational eta = almost_sidon_params(s).eta;
    if (eta >= 1) {
        v.skipped = true;
        return v;
    }
    const Rational size(static_cast<unsigned long>(s.size()));
    v.lhs = (1 - eta) * size * size;
    v.holds = v.lhs <= Rational(v.rhs);
    return v;
}

L2ReductionVerdict verify_l2_reduction(const ScaledFunction& f, const Rational& delta,
                                       std::optional<std::int64_t> interval_length) {
    if (delta <= 0 || delta > 1) throw ValidationError("verify_l2_reduction: delta must lie in (0, 1]");
    const ScaledFunction t = f.trimmed();
    const auto width = static_cast<std::int64_t>(t.weights.size());
    L2ReductionVerdict v;
    v.interval_length = interval_length.value_or(std::max<std::int64_t>(width, 1));
    if (width > v.interval_length)
        throw ValidationError("verify_l2_reduction: support does not fit in an interval of the given length");
    v.delta = delta;
    v.mass = 0;
    v.l2 = 0;
    bool nonneg = true;
    const Rational half = delta / 2;
    for (std::size_t i = 0; i < t.weights.size(); ++i) {
        const std::int64_t x = t.offset + static_cast<std::int64_t>(i);
        const Rational val = exact_or_throw(t.value(x), "verify_l2_reduction");
        nonneg = nonneg && val >= 0;
        v.mass += val;
        v.l2 += val * val;
        if (val >= half) v.level_set.push_back(x);
    }
    const Rational len(to_bigint(v.interval_length));
    v.hypotheses_hold = nonneg && v.mass >= delta * len && v.l2 <= len;
    v.holds = 4 * Rational(static_cast<unsigned long>(v.level_set.size())) >= delta * delta * len;
    return v;
}

CountingLemmaVerdict verify_counting_lemma(const ScaledFunction& nu, std::span<const ScaledFunction> fns,
                                           const EquationCoeffs& eq, std::optional<std::int64_t> interval_length,
                                           const ConvolutionOptions& opts) {
    if (eq.size() < 5) throw ValidationError("counting lemma needs s >= 5");
    if (fns.size() != eq.size()) throw ValidationError("counting lemma: one function per variable");
    const ScaledFunction nut = nu.trimmed();
    CountingLemmaVerdict v;
    const auto width = static_cast<std::int64_t>(nut.weights.size());
    v.interval_length = interval_length.value_or(std::max<std::int64_t>(width, 1));
    if (width > v.interval_length) throw ValidationError("counting lemma: supp(nu) exceeds the interval length");

    v.nu_mass = 0;
    for (std::size_t i = 0; i < nut.weights.size(); ++i) {
        const Rational val = exact_or_throw(nut.value(nut.offset + static_cast<std::int64_t>(i)), "counting lemma");
        if (val < 0) throw ValidationError("counting lemma: nu must be nonnegative");
        v.nu_mass += val;
    }
    std::vector<Rational> abs_mass;
    for (const auto& f : fns) {
        Rational total = 0;
        for (std::size_t i = 0; i < f.weights.size(); ++i) {
            if (f.weights[i] == 0) continue;
            const std::int64_t x = f.offset + static_cast<std::int64_t>(i);
            const Rational val = abs(exact_or_throw(f.value(x), "counting lemma"));
            if (val > exact_or_throw(nu.value(x), "counting lemma"))
                throw ValidationError("counting lemma: |f_i(" + std::to_string(x) + ")| exceeds nu");
            total += val;
        }
        abs_mass.push_back(total);
    }
    const Rational len(to_bigint(v.interval_length));
    v.nu_energy = exact_or_throw(function_energy(nu, opts).exact(), "counting lemma");
    v.nu_mass_ok = v.nu_mass <= len;
    v.nu_energy_ok = v.nu_energy <= len * len * len;
    v.energy_chain_ok = true;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        const Rational e = exact_or_throw(function_energy(fns[i], opts).exact(), "counting lemma");
        v.energy_chain_ok = v.energy_chain_ok && e <= v.nu_energy && abs_mass[i] <= v.nu_mass;
    }

    v.lhs = exact_or_throw(count_solutions(eq, fns, opts).exact(), "counting lemma");
    double min_sup = std::numeric_limits<double>::infinity();
    for (const auto& f : fns) {
        const auto est = sup_norm_estimate(f, 8);
        min_sup = std::min(min_sup, est.value);
        v.grid_factor = est.grid_factor;
    }
    v.rhs = std::pow(static_cast<double>(v.interval_length), static_cast<double>(eq.size() - 2)) * min_sup;
    const double lhs_abs = std::abs(v.lhs.get_d());
    v.slack = lhs_abs > 0 ? v.rhs / lhs_abs : std::numeric_limits<double>::infinity();
    v.holds = lhs_abs <= v.rhs * (1.0 + 1e-9);
    return v;
}

ModelL2Verdict verify_model_l2(const DenseModel& model) {
    ModelL2Verdict v;
    const auto rs = representation_profile(model.set);
    const auto& b = model.bohr.elements;
    const std::int64_t span = 2 * model.bohr.width;
    std::vector<std::int64_t> rb(static_cast<std::size_t>(2 * span + 1), 0);
    for (auto x : b)
        for (auto y : b) ++rb[static_cast<std::size_t>(x - y + span)];
    v.lhs = 0;
    for (std::int64_t d = -span; d <= span; ++d) {
        const auto r = rb[static_cast<std::size_t>(d + span)];
        if (r != 0) v.lhs += to_bigint(rs[d]) * r;
    }
    v.lhs_via_g = 0;
    for (const auto& w : model.base.weights) v.lhs_via_g += w.get_num() * w.get_num();
    v.routes_agree = v.lhs == v.lhs_via_g;

    const Rational size(static_cast<unsigned long>(model.set.size()));
    const Rational bsize(static_cast<unsigned long>(b.size()));
    const Rational eta = almost_sidon_params(model.set).eta;
    v.rhs = bsize * bsize + (eta * size * size + 2 * size) * bsize;
    v.holds = Rational(v.lhs) <= v.rhs;
    v.l2_ratio = Rational(v.lhs_via_g) / (bsize * bsize);
    if (eta < 1) {
        const double scale = eta.get_d() + 1.0 / static_cast<double>(model.sqrt_n);
        v.implied_constant = (v.l2_ratio.get_d() - 1.0) * (1.0 - eta.get_d()) / scale;
    }
    return v;
}

bool TransferenceReport::theorem_backed_ok() const {
    const bool l2_ok = !l2_reduction.hypotheses_hold || l2_reduction.holds;
    return representation_bound.holds && (size_bound.skipped || size_bound.holds) && model_l2.holds && model_l2.routes_agree &&
           model.diag.mass_identity && model.diag.support_ok && bohr_inclusion.holds && large_sieve.classical_holds &&
           model_count_paths_agree && telescope_identity && telescope_bounds_hold && l2_ok;
}

bool TransferenceReport::calibrated_ok() const {
    return nu_mass_ok && nu_energy_ok && fourier_ok && bohr_lower.holds && large_sieve.holds && large_sieve.r_bound_holds;
}

TransferenceReport transference_report(const IntegerSet& s, const EquationCoeffs& eq, const Rational& eps,
                                       const ConvolutionOptions& opts, const Rational& fourier_constant) {
    if (eq.size() < 5) throw ValidationError("transference_report needs s >= 5");
    if (!eq.translation_invariant()) throw ValidationError("transference_report needs coefficients summing to 0");

    TransferenceReport rep;
    rep.model = dense_model(s, eps, std::nullopt, opts);
    const DenseModel& dm = rep.model;
    const std::size_t vars = eq.size();
    const std::int64_t n = dm.n();
    const BigInt size = static_cast<unsigned long>(s.size());

    rep.coeffs.assign(eq.coeffs().begin(), eq.coeffs().end());
    rep.original_n = s.ambient_n();
    rep.n = n;
    rep.set_size = s.size();
    rep.delta = std::min(Rational(1), Rational(size, to_bigint(dm.sqrt_n)));
    rep.delta.canonicalize();
    rep.delta_original = static_cast<double>(s.size()) / std::sqrt(static_cast<double>(s.ambient_n()));
    rep.eta = almost_sidon_params(dm.set).eta;
    rep.eps = eps;
    rep.fourier_constant = fourier_constant;

    rep.bohr_lower = bohr_lower_bound(dm.bohr, dm.spectrum.r_count());
    rep.bohr_inclusion = verify_bohr_inclusion(dm.bohr, dm.spectrum);
    rep.large_sieve = large_sieve_diagnostic(dm.set, dm.spectrum);
    rep.representation_bound = verify_representation_bound(dm.set);
    rep.size_bound = verify_size_bound(dm.set);
    rep.model_l2 = verify_model_l2(dm);

    const ScaledFunction f = dm.model();
    const ScaledFunction ind = dm.scaled_indicator();
    const ScaledFunction nu = dm.majorant();
    rep.interval_length = 2 * n;
    rep.l2_reduction = verify_l2_reduction(f, rep.delta / 2, rep.interval_length);

    const BigInt len = to_bigint(rep.interval_length);
    const BigInt nn = to_bigint(n);
    rep.nu_mass = *scale_by_half_power(nu.weight_sum(), n, 1);
    rep.nu_energy = *function_energy(nu, opts).exact();
    rep.nu_mass_ok = rep.nu_mass <= Rational(4 * nn);
    rep.nu_energy_ok = rep.nu_energy <= Rational(64 * nn * nn * nn);
    while (rep.nu_mass > Rational(rep.normalizer * len) ||
           rep.nu_energy > Rational(pow(to_bigint(rep.normalizer), 4) * len * len * len))
        ++rep.normalizer;

    const std::vector<ScaledFunction> model_fns(vars, f);
    rep.model_count = *count_solutions(eq, model_fns, opts).exact();
    ConvolutionOptions ntt_opts = opts;
    ntt_opts.ntt_threshold = 0;
    ConvolutionOptions school_opts = opts;
    school_opts.ntt_threshold = std::numeric_limits<std::size_t>::max();
    rep.model_count_paths_agree = *count_solutions(eq, model_fns, ntt_opts).exact() == rep.model_count &&
                                  *count_solutions(eq, model_fns, school_opts).exact() == rep.model_count;

    const std::vector<ScaledFunction> set_fns(vars, ScaledFunction::indicator(dm.set));
    rep.set_count_raw = count_solutions(eq, set_fns, opts).value.get_num();
    rep.set_count = *scale_by_half_power(Rational(rep.set_count_raw), n, static_cast<int>(vars));
    rep.difference = rep.model_count - rep.set_count;

    ScaledFunction diff = f;
    const auto ind_w = indicator_on_window(dm.set, diff.offset, diff.weights.size());
    for (std::size_t i = 0; i < ind_w.size(); ++i) diff.weights[i] -= ind_w[i];
    const double per_term = std::pow(static_cast<double>(rep.normalizer), static_cast<double>(vars - 1)) *
                            std::pow(static_cast<double>(rep.interval_length), static_cast<double>(vars - 2)) *
                            dm.diag.fourier_distance * dm.diag.fourier_grid_factor;
    Rational telescoped = 0;
    rep.telescope_bounds_hold = true;
    for (std::size_t j = 0; j < vars; ++j) {
        std::vector<ScaledFunction> fns;
        for (std::size_t i = 0; i < vars; ++i) fns.push_back(i < j ? f : (i == j ? diff : ind));
        TelescopeTerm term;
        term.value = *count_solutions(eq, fns, opts).exact();
        term.bound = per_term;
        term.holds = std::abs(term.value.get_d()) <= per_term * (1.0 + 1e-9);
        rep.telescope_bounds_hold = rep.telescope_bounds_hold && term.holds;
        telescoped += term.value;
        rep.telescope.push_back(std::move(term));
    }
    rep.telescope_identity = telescoped == rep.difference;

    rep.eps_scale = eps.get_d() * std::pow(static_cast<double>(n), static_cast<double>(vars - 1));
    rep.difference_ratio = std::abs(rep.difference.get_d()) / rep.eps_scale;
    rep.main_term_scale = std::pow(static_cast<double>(n), 0.5 * static_cast<double>(vars) - 1.0);
    if (vars <= kMaxDistinctVariables) rep.distinct_count = count_distinct_solutions(eq, dm.set, opts).value.get_num();

    rep.fourier_ok = dm.diag.fourier_distance <= Rational(fourier_constant * eps * n).get_d();
    return rep;
}

} // namespace sidonlab

#include "sidonlab/json_io.hpp"

#include <cstdio>

#include "sidonlab/errors.hpp"

namespace sidonlab {

Json rational_json(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return Json{{"numerator", c.get_num().get_str()}, {"denominator", c.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
    try {
        Rational q(BigInt(j.at("numerator").get<std::string>()), BigInt(j.at("denominator").get<std::string>()));
        q.canonicalize();
        return q;
    } catch (const std::exception& e) {
        throw ValidationError(std::string("bad rational in JSON: ") + e.what());
    }
}

Json count_json(const SolutionCount& c) {
    return Json{{"value_numerator", c.value.get_num().get_str()},
                {"value_denominator", c.value.get_den().get_str()},
                {"half_power", c.half_power}};
}

SolutionCount count_from_json(const Json& j, std::int64_t ambient_n) {
    SolutionCount c;
    c.value = Rational(BigInt(j.at("value_numerator").get<std::string>()), BigInt(j.at("value_denominator").get<std::string>()));
    c.value.canonicalize();
    c.half_power = j.at("half_power").get<int>();
    c.ambient_n = ambient_n;
    return c;
}

Json frequency_json(const Frequency& f) { return Json{{"k", f.k}, {"m", f.m}, {"alpha", f.as_double()}}; }

Json set_summary_json(const IntegerSet& s) {
    Json j{{"size", s.size()}, {"N", s.ambient_n()}};
    if (s.empty()) return j;
    const auto params = almost_sidon_params(s);
    j["energy"] = representation_profile(s).energy().get_str();
    j["is_sidon"] = is_sidon(s);
    j["eta"] = rational_json(params.eta);
    j["delta"] = rational_json(params.delta);
    j["density_holds"] = params.density_holds;
    return j;
}

Json degenerate_json(const DegenerateReport& r) {
    return Json{{"energy", r.energy.get_str()},
                {"shifts_checked", r.shifts_checked},
                {"max_count", r.max_count.get_str()},
                {"bound_holds", r.bound_holds},
                {"pair_total", r.pair_total.get_str()},
                {"total", r.total.get_str()},
                {"distinct", r.distinct.get_str()},
                {"degenerate_total", r.degenerate_total.get_str()},
                {"union_bound", r.union_bound.get_str()},
                {"union_bound_holds", r.union_bound_holds}};
}

Json bohr_json(const BohrSet& b, bool with_elements) {
    Json freqs = Json::array();
    for (const auto& f : b.freqs) freqs.push_back(frequency_json(f));
    Json j{{"radius", rational_json(b.radius)}, {"N", b.ambient_n}, {"width", b.width}, {"size", b.size()}, {"freqs", freqs}};
    if (with_elements) j["elements"] = b.elements;
    return j;
}

Json large_sieve_json(const LargeSieveReport& r) {
    return Json{{"R", r.r_count},
                {"lhs", r.lhs},
                {"rhs_2NE", r.rhs.get_str()},
                {"holds", r.holds},
                {"rhs_classical", r.classical_rhs.get_str()},
                {"classical_holds", r.classical_holds},
                {"r_lhs", rational_json(r.r_lhs)},
                {"r_rhs", rational_json(r.r_rhs)},
                {"r_bound_holds", r.r_bound_holds}};
}

Json dense_model_json(const DenseModel& m) {
    Json sep = Json::array();
    for (const auto& f : m.spectrum.separated_frequencies()) sep.push_back(frequency_json(f));
    return Json{{"original_N", m.original_n},
                {"N", m.n()},
                {"eps", rational_json(m.eps)},
                {"grid_m", m.spectrum.grid_m},
                {"spectrum_size", m.spectrum.entries.size()},
                {"R", m.spectrum.r_count()},
                {"separated", sep},
                {"bohr_size", m.bohr.size()},
                {"bohr_width", m.bohr.width},
                {"mass", rational_json(m.diag.mass)},
                {"mass_identity", m.diag.mass_identity},
                {"support_ok", m.diag.support_ok},
                {"l2_value", rational_json(m.diag.l2_value)},
                {"fourier_distance", m.diag.fourier_distance},
                {"fourier_argmax", frequency_json(m.diag.fourier_argmax)},
                {"fourier_grid", m.diag.fourier_grid},
                {"fourier_grid_factor", m.diag.fourier_grid_factor}};
}

Json report_json(const TransferenceReport& r) {
    Json params{{"coeffs", r.coeffs},
                {"original_N", r.original_n},
                {"N", r.n},
                {"size", r.set_size},
                {"delta", rational_json(r.delta)},
                {"delta_original", r.delta_original},
                {"eta", rational_json(r.eta)},
                {"eps", rational_json(r.eps)}};

    Json lemmas{
        {"representation_bound", {{"lhs", r.representation_bound.lhs.get_str()}, {"rhs", rational_json(r.representation_bound.rhs)}, {"holds", r.representation_bound.holds}}},
        {"size_bound",
         {{"skipped", r.size_bound.skipped},
          {"lhs", rational_json(r.size_bound.lhs)},
          {"rhs", r.size_bound.rhs.get_str()},
          {"holds", r.size_bound.holds}}},
        {"model_l2",
         {{"lhs", r.model_l2.lhs.get_str()},
          {"lhs_via_g", r.model_l2.lhs_via_g.get_str()},
          {"routes_agree", r.model_l2.routes_agree},
          {"rhs", rational_json(r.model_l2.rhs)},
          {"holds", r.model_l2.holds},
          {"l2_ratio", rational_json(r.model_l2.l2_ratio)},
          {"implied_constant", r.model_l2.implied_constant ? Json(*r.model_l2.implied_constant) : Json(nullptr)}}},
        {"l2_reduction",
         {{"interval_length", r.l2_reduction.interval_length},
          {"delta", rational_json(r.l2_reduction.delta)},
          {"mass", rational_json(r.l2_reduction.mass)},
          {"l2", rational_json(r.l2_reduction.l2)},
          {"hypotheses_hold", r.l2_reduction.hypotheses_hold},
          {"level_set_size", r.l2_reduction.level_set.size()},
          {"holds", r.l2_reduction.holds}}},
        {"bohr_lower_bound",
         {{"R", r.bohr_lower.rank},
          {"base", r.bohr_lower.base.get_str()},
          {"bound", rational_json(r.bohr_lower.bound)},
          {"bohr_size", r.model.bohr.size()},
          {"holds", r.bohr_lower.holds},
          {"positive_exponent_holds", r.bohr_lower.uncorrected_holds}}},
        {"bohr_inclusion", {{"inner_size", r.bohr_inclusion.inner_size}, {"holds", r.bohr_inclusion.holds}}},
        {"large_sieve", large_sieve_json(r.large_sieve)},
    };

    Json nu{{"interval_length", r.interval_length},
            {"mass", rational_json(r.nu_mass)},
            {"energy", rational_json(r.nu_energy)},
            {"mass_ok", r.nu_mass_ok},
            {"energy_ok", r.nu_energy_ok},
            {"normalizer", r.normalizer}};

    Json terms = Json::array();
    for (const auto& t : r.telescope)
        terms.push_back(Json{{"value", rational_json(t.value)}, {"bound", t.bound}, {"holds", t.holds}});
    Json counts{{"model_count", rational_json(r.model_count)},
                {"model_count_paths_agree", r.model_count_paths_agree},
                {"set_count_raw", r.set_count_raw.get_str()},
                {"set_count", rational_json(r.set_count)},
                {"difference", rational_json(r.difference)},
                {"eps_N_pow", r.eps_scale},
                {"difference_ratio", r.difference_ratio},
                {"telescope", terms},
                {"telescope_identity", r.telescope_identity},
                {"telescope_bounds_hold", r.telescope_bounds_hold},
                {"main_term_scale", r.main_term_scale},
                {"distinct_count", r.distinct_count ? Json(r.distinct_count->get_str()) : Json(nullptr)}};

    return Json{{"params", params},
                {"model", dense_model_json(r.model)},
                {"fourier", {{"constant", rational_json(r.fourier_constant)}, {"holds", r.fourier_ok}}},
                {"verdicts", lemmas},
                {"nu", nu},
                {"counts", counts},
                {"theorem_backed_ok", r.theorem_backed_ok()},
                {"calibrated_ok", r.calibrated_ok()}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_tsv(std::ostream& out, const Spectrum& spec, std::span<const double> magnitudes) {
    const auto row = [&](std::int64_t k, double mag, bool sel) {
        const Frequency f{k, spec.grid_m};
        out << k << '\t' << spec.grid_m << '\t' << format_double(f.as_double()) << '\t' << format_double(mag) << '\t'
            << (sel ? 1 : 0) << '\n';
    };
    out << "k\tm\talpha\tmagnitude\tselected\n";
    std::vector<bool> selected(spec.entries.size(), false);
    for (auto i : spec.separated) selected[i] = true;
    if (magnitudes.empty()) {
        for (std::size_t i = 0; i < spec.entries.size(); ++i) row(spec.entries[i].freq.k, spec.entries[i].magnitude, selected[i]);
        return;
    }
    std::size_t next = 0;
    for (std::int64_t k = 0; k < spec.grid_m; ++k) {
        bool sel = false;
        if (next < spec.entries.size() && spec.entries[next].freq.k == k) sel = selected[next++];
        row(k, magnitudes[static_cast<std::size_t>(k)], sel);
    }
}

} // namespace sidonlab

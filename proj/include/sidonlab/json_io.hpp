#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "sidonlab/counting.hpp"
#include "sidonlab/integer_set.hpp"
#include "sidonlab/spectral.hpp"
#include "sidonlab/transference.hpp"

namespace sidonlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {"numerator": "p", "denominator": "q"}; decimal strings so nothing is truncated.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"value_numerator", "value_denominator", "half_power"}
Json count_json(const SolutionCount& c);
SolutionCount count_from_json(const Json& j, std::int64_t ambient_n);

Json frequency_json(const Frequency& f);
Json set_summary_json(const IntegerSet& s);
Json degenerate_json(const DegenerateReport& r);
Json bohr_json(const BohrSet& b, bool with_elements = true);
Json large_sieve_json(const LargeSieveReport& r);
Json dense_model_json(const DenseModel& m);
Json report_json(const TransferenceReport& r);

/// Header plus rows k, m, alpha, magnitude, selected(0/1): one row per spectrum
/// entry, or per grid point when the full magnitude array is passed.
void write_spectrum_tsv(std::ostream& out, const Spectrum& spec, std::span<const double> magnitudes);

/// printf("%.17g")
std::string format_double(double v);

} // namespace sidonlab

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tonality {

/// Every tunable of the scoring model in one place.
///
/// Defaults reproduce the reference configuration: a uniform tonal-word
/// weight of 0.6, equal priors, a decision band of 0.25 around zero, negative
/// evidence counted at 75%, and words within 0.1 of 1/2 dropped from lexicons.
struct ModelParams {
  double alpha = 0.6;           // uniform per-word weight, (0,1)
  double lambda = 1.0;          // prior odds P(not H)/P(H), > 0
  double beta = 0.25;           // decision threshold on delta, [0,1]
  double gamma = 0.75;          // negative-count attenuation, (0,1]
  double tau_expressive = 0.8;  // both outputs at least this => expressive, (0,1)
  double exclusion_band = 0.1;  // half-width of the ignored band around 1/2, [0,0.5)
  double weight_floor = 0.6;    // minimum p(t|H) to admit a word, [0.5,1)

  bool operator==(const ModelParams&) const = default;
};

// Throws ArgumentError naming the first out-of-range field.
void validate(const ModelParams& params);

// Key/value pairs in canonical order, values as round-trip decimals.
std::vector<std::pair<std::string, std::string>> param_entries(const ModelParams& params);

// Sets one field by its canonical key. Returns false for an unknown key;
// throws ArgumentError for an unparsable value.
bool set_param(ModelParams& params, std::string_view key, std::string_view value);

// Writes "PARAMS" followed by one key=value line per field.
void write_params_block(std::ostream& out, const ModelParams& params);

// One-line "alpha=0.6 lambda=1 ..." summary.
std::string describe(const ModelParams& params);

}  // namespace tonality

#include "tonality/params.h"

#include <cmath>
#include <ostream>

#include "tonality/error.h"
#include "tonality/number_format.h"

namespace tonality {
namespace {

struct Field {
  const char* key;
  double ModelParams::*member;
};

constexpr Field kFields[] = {
    {"alpha", &ModelParams::alpha},
    {"lambda", &ModelParams::lambda},
    {"beta", &ModelParams::beta},
    {"gamma", &ModelParams::gamma},
    {"tau", &ModelParams::tau_expressive},
    {"exclusion_band", &ModelParams::exclusion_band},
    {"weight_floor", &ModelParams::weight_floor},
};

void require(bool ok, const char* message) {
  if (!ok) throw ArgumentError(message);
}

}  // namespace

void validate(const ModelParams& p) {
  for (const auto& f : kFields) {
    if (!std::isfinite(p.*f.member)) {
      throw ArgumentError(std::string(f.key) + " must be finite");
    }
  }
  require(p.alpha > 0.0 && p.alpha < 1.0, "alpha must lie in (0,1)");
  require(p.lambda > 0.0, "lambda must be positive");
  require(p.beta >= 0.0 && p.beta <= 1.0, "beta must lie in [0,1]");
  require(p.gamma > 0.0 && p.gamma <= 1.0, "gamma must lie in (0,1]");
  require(p.tau_expressive > 0.0 && p.tau_expressive < 1.0, "tau must lie in (0,1)");
  require(p.exclusion_band >= 0.0 && p.exclusion_band < 0.5,
          "exclusion_band must lie in [0,0.5)");
  require(p.weight_floor >= 0.5 && p.weight_floor < 1.0, "weight_floor must lie in [0.5,1)");
}

std::vector<std::pair<std::string, std::string>> param_entries(const ModelParams& params) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(std::size(kFields));
  for (const auto& f : kFields) out.emplace_back(f.key, format_round_trip(params.*f.member));
  return out;
}

bool set_param(ModelParams& params, std::string_view key, std::string_view value) {
  for (const auto& f : kFields) {
    if (key != f.key) continue;
    auto parsed = parse_double(value);
    if (!parsed) {
      throw ArgumentError("invalid value '" + std::string(value) + "' for " + std::string(key));
    }
    params.*f.member = *parsed;
    return true;
  }
  return false;
}

void write_params_block(std::ostream& out, const ModelParams& params) {
  out << "PARAMS\n";
  for (const auto& [key, value] : param_entries(params)) out << key << '=' << value << '\n';
}

std::string describe(const ModelParams& params) {
  std::string out;
  for (const auto& [key, value] : param_entries(params)) {
    if (!out.empty()) out += ' ';
    out += key + '=' + value;
  }
  return out;
}

}  // namespace tonality

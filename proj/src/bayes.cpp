#include "tonality/bayes.h"

#include <cmath>
#include <vector>

#include "tonality/error.h"

namespace tonality {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError(std::string(what) + " must lie in [0,1]");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be positive");
}

double log_odds(double w) { return std::log(w / (1.0 - w)); }

std::vector<double> matched_weights(const TokenSet& tokens, const WeightMap& map) {
  std::vector<double> out;
  for (const auto& word : tokens.types) {
    if (auto it = map.find(word); it != map.end()) out.push_back(it->second);
  }
  return out;
}

std::size_t matched_count(const TokenSet& tokens, const WeightMap& map) {
  std::size_t n = 0;
  for (const auto& word : tokens.types) n += map.contains(word) ? 1 : 0;
  return n;
}

}  // namespace

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kPositive: return "positive";
    case Label::kNegative: return "negative";
    case Label::kNeutral: return "neutral";
  }
  return "unknown";
}

TonalityScore decide(double out_pos, double out_neg, const ModelParams& params) {
  TonalityScore s;
  s.out_pos = out_pos;
  s.out_neg = out_neg;
  s.delta = out_pos - out_neg;
  if (s.delta > params.beta) {
    s.label = Label::kPositive;
  } else if (s.delta < -params.beta) {
    s.label = Label::kNegative;
  } else {
    s.label = Label::kNeutral;
  }
  s.expressive = s.label == Label::kNeutral && out_pos >= params.tau_expressive &&
                 out_neg >= params.tau_expressive;
  return s;
}

double bayes_posterior(double p_a_given_s, double p_a_given_not_s, double lambda) {
  check_probability(p_a_given_s, "P(A|S)");
  check_probability(p_a_given_not_s, "P(A|not S)");
  check_lambda(lambda);
  if (p_a_given_s == 0.0 && p_a_given_not_s == 0.0) {
    throw UndefinedEvidenceError("both conditional likelihoods are zero");
  }
  return p_a_given_s / (p_a_given_s + lambda * p_a_given_not_s);
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double combine_weights(std::span<const double> weights, double lambda) {
  check_lambda(lambda);
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0 && w < 1.0)) throw ArgumentError("weights must lie strictly inside (0,1)");
    total += log_odds(w);
  }
  return logistic(total - std::log(lambda));
}

double spm_uniform(double x, double alpha, double lambda) {
  if (!(x >= 0.0)) throw ArgumentError("x must be non-negative");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  check_lambda(lambda);
  return logistic(x * log_odds(alpha) - std::log(lambda));
}

TonalityScore score_document(const TokenSet& tokens, const Lexicon& lexicon, const ModelParams& params) {
  const auto x_pos = static_cast<double>(matched_count(tokens, lexicon.positive));
  const auto x_neg = static_cast<double>(matched_count(tokens, lexicon.negative));
  return decide(spm_uniform(x_pos, params.alpha, params.lambda),
                spm_uniform(params.gamma * x_neg, params.alpha, params.lambda), params);
}

TonalityScore score_with_exact_weights(const TokenSet& tokens, const Lexicon& lexicon,
                                       const ModelParams& params) {
  check_lambda(params.lambda);
  const auto positive = matched_weights(tokens, lexicon.positive);
  const auto negative = matched_weights(tokens, lexicon.negative);
  double neg_log_odds = 0.0;
  for (double w : negative) {
    if (!(w > 0.0 && w < 1.0)) throw ArgumentError("weights must lie strictly inside (0,1)");
    neg_log_odds += log_odds(w);
  }
  const double out_neg = logistic(params.gamma * neg_log_odds - std::log(params.lambda));
  return decide(combine_weights(positive, params.lambda), out_neg, params);
}

TonalityScore empty_evidence_score(const ModelParams& params) {
  const double out = 1.0 / (1.0 + params.lambda);
  return decide(out, out, params);
}

}  // namespace tonality

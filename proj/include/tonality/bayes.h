#pragma once

#include <span>
#include <string_view>

#include "tonality/lexicon.h"
#include "tonality/params.h"
#include "tonality/text.h"

namespace tonality {

enum class Label { kPositive, kNegative, kNeutral };

std::string_view to_string(Label label);  // "positive" | "negative" | "neutral"

/// Outputs of the two hypothesis scorers and the decision taken on them.
struct TonalityScore {
  double out_pos = 0.5;
  double out_neg = 0.5;
  double delta = 0.0;  // out_pos - out_neg
  Label label = Label::kNeutral;
  bool expressive = false;

  bool operator==(const TonalityScore&) const = default;
};

// Positive iff delta > beta, Negative iff delta < -beta, else Neutral;
// expressive iff Neutral and both outputs reach tau.
TonalityScore decide(double out_pos, double out_neg, const ModelParams& params);

// Posterior of S after observing A when P(not S) = lambda * P(S):
//   P(A|S) / (P(A|S) + lambda * P(A|not S)).
// Throws UndefinedEvidenceError if both likelihoods are zero.
double bayes_posterior(double p_a_given_s, double p_a_given_not_s, double lambda);

// Numerically stable 1 / (1 + exp(-z)).
double logistic(double z);

// prod(w) / (prod(w) + lambda * prod(1 - w)), evaluated through summed
// log-odds so hundreds of words do not underflow. Empty input gives
// 1 / (1 + lambda). Throws ArgumentError unless every weight is in (0,1).
double combine_weights(std::span<const double> weights, double lambda);

// alpha^x / (alpha^x + lambda (1 - alpha)^x) for real x >= 0, i.e. the
// logistic of x * ln(alpha / (1 - alpha)) - ln(lambda).
double spm_uniform(double x, double alpha, double lambda);

// Uniform-weight scorer: counts distinct lexicon words of each polarity and
// feeds x+ and gamma * x- through spm_uniform.
TonalityScore score_document(const TokenSet& tokens, const Lexicon& lexicon, const ModelParams& params);

// Per-word-weight scorer. Negative log-odds are scaled by gamma so the two
// scorers coincide when every weight equals alpha.
TonalityScore score_with_exact_weights(const TokenSet& tokens, const Lexicon& lexicon,
                                       const ModelParams& params);

// Score for a text with no evidence at all: both outputs 1 / (1 + lambda).
TonalityScore empty_evidence_score(const ModelParams& params);

}  // namespace tonality

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tonality/bayes.h"
#include "tonality/lexicon.h"
#include "tonality/params.h"
#include "tonality/text.h"

namespace tonality {

/// Two first-layer neurons (positive, negative) over a shared vocabulary.
/// Input i is 1 when vocab()[i] occurs in the document. The adders produce
/// NET+ and NET-, the conductance is spm_uniform(NET+) and
/// spm_uniform(gamma * NET-), and the second layer emits their difference.
class PerceptronModel {
 public:
  PerceptronModel() = default;

  // Throws ArgumentError on size mismatch, duplicate words, or a negative or
  // non-finite weight.
  PerceptronModel(std::vector<std::string> vocab, std::vector<double> w_pos,
                  std::vector<double> w_neg, ModelParams params);

  const std::vector<std::string>& vocab() const { return vocab_; }
  std::span<const double> w_pos() const { return w_pos_; }
  std::span<const double> w_neg() const { return w_neg_; }
  const ModelParams& params() const { return params_; }
  std::size_t size() const { return vocab_.size(); }

  void set_params(const ModelParams& params);

  // Indices of vocabulary words present in `tokens`, ascending.
  std::vector<std::size_t> active_inputs(const TokenSet& tokens) const;

  // Applies w -= rate * grad and clamps at zero.
  void apply_update(std::span<const double> grad_pos, std::span<const double> grad_neg, double rate);

  bool operator==(const PerceptronModel& other) const {
    return vocab_ == other.vocab_ && w_pos_ == other.w_pos_ && w_neg_ == other.w_neg_ &&
           params_ == other.params_;
  }

 private:
  std::vector<std::string> vocab_;
  std::vector<double> w_pos_;
  std::vector<double> w_neg_;
  ModelParams params_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ForwardTrace {
  double net_pos = 0.0;
  double net_neg = 0.0;
  double out_pos = 0.5;
  double out_neg = 0.5;
  double delta = 0.0;
  Label label = Label::kNeutral;
  bool expressive = false;

  TonalityScore score() const { return {out_pos, out_neg, delta, label, expressive}; }
};

struct Gradient {
  std::vector<double> d_pos;  // dL/dw+, one per vocabulary word
  std::vector<double> d_neg;  // dL/dw-
  double loss = 0.0;          // (delta - target)^2 / 2
};

struct TrainingExample {
  TokenSet tokens;
  double target = 0.0;  // in [-1,1]; labels map to +1 / -1 / 0
};

struct TrainOptions {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  std::optional<std::uint64_t> shuffle_seed;  // presentation order is fixed unless set
};

struct TrainResult {
  PerceptronModel model;
  std::vector<double> epoch_losses;  // mean loss over the dataset after each epoch
};

// Unit weights on lexicon membership; vocabulary is the sorted union of both maps.
PerceptronModel init_from_lexicon(const Lexicon& lexicon, const ModelParams& params);

ForwardTrace forward(const PerceptronModel& model, const TokenSet& tokens);

Gradient gradient(const PerceptronModel& model, const TokenSet& tokens, double target);

double label_target(Label label);

// Mean squared-error loss of `model` over `data`.
double mean_loss(const PerceptronModel& model, std::span<const TrainingExample> data);

/// Per-example SGD over the first-layer weights; alpha, lambda and gamma stay
/// fixed. Throws ArgumentError for an empty dataset or a negative rate.
TrainResult train(const PerceptronModel& model, std::span<const TrainingExample> data,
                  const TrainOptions& options);

// TONALNET text format: header, one W<TAB>word<TAB>w+<TAB>w- line per
// vocabulary entry in model order, then the PARAMS block.
void save_model(const PerceptronModel& model, std::ostream& out);
std::string save_model(const PerceptronModel& model);
void save_model_file(const PerceptronModel& model, const std::string& path);
PerceptronModel load_model(std::istream& in);
PerceptronModel load_model_file(const std::string& path);

}  // namespace tonality

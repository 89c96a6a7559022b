#include "tonality/perceptron.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "tonality/error.h"
#include "tonality/number_format.h"

namespace tonality {
namespace {

constexpr std::string_view kHeader = "TONALNET 1";

double slope(const ModelParams& p) { return std::log(p.alpha / (1.0 - p.alpha)); }

// s(1-s) for s = spm(net), evaluated from the logit so saturation keeps precision.
double spm_derivative_factor(double net, const ModelParams& p) {
  const double z = net * slope(p) - std::log(p.lambda);
  return logistic(z) * logistic(-z);
}

void check_weight(double w) {
  if (!std::isfinite(w) || w < 0.0) throw ArgumentError("synapse weights must be finite and >= 0");
}

}  // namespace

PerceptronModel::PerceptronModel(std::vector<std::string> vocab, std::vector<double> w_pos,
                                 std::vector<double> w_neg, ModelParams params)
    : vocab_(std::move(vocab)), w_pos_(std::move(w_pos)), w_neg_(std::move(w_neg)), params_(params) {
  if (w_pos_.size() != vocab_.size() || w_neg_.size() != vocab_.size()) {
    throw ArgumentError("weight vectors must match the vocabulary size");
  }
  validate(params_);
  std::for_each(w_pos_.begin(), w_pos_.end(), check_weight);
  std::for_each(w_neg_.begin(), w_neg_.end(), check_weight);
  index_.reserve(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (vocab_[i].empty()) throw ArgumentError("empty vocabulary word");
    if (!index_.emplace(vocab_[i], i).second) {
      throw ArgumentError("duplicate vocabulary word '" + vocab_[i] + "'");
    }
  }
}

void PerceptronModel::set_params(const ModelParams& params) {
  validate(params);
  params_ = params;
}

std::vector<std::size_t> PerceptronModel::active_inputs(const TokenSet& tokens) const {
  std::vector<std::size_t> active;
  for (const auto& word : tokens.types) {
    if (auto it = index_.find(word); it != index_.end()) active.push_back(it->second);
  }
  std::sort(active.begin(), active.end());
  return active;
}

void PerceptronModel::apply_update(std::span<const double> grad_pos, std::span<const double> grad_neg,
                                   double rate) {
  for (std::size_t i = 0; i < w_pos_.size(); ++i) {
    w_pos_[i] = std::max(0.0, w_pos_[i] - rate * grad_pos[i]);
    w_neg_[i] = std::max(0.0, w_neg_[i] - rate * grad_neg[i]);
  }
}

PerceptronModel init_from_lexicon(const Lexicon& lexicon, const ModelParams& params) {
  std::set<std::string, std::less<>> words;
  for (const auto& [word, weight] : lexicon.positive) words.insert(word);
  for (const auto& [word, weight] : lexicon.negative) words.insert(word);
  std::vector<std::string> vocab(words.begin(), words.end());
  std::vector<double> w_pos(vocab.size(), 0.0), w_neg(vocab.size(), 0.0);
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (lexicon.positive.contains(vocab[i])) w_pos[i] = 1.0;
    if (lexicon.negative.contains(vocab[i])) w_neg[i] = 1.0;
  }
  return PerceptronModel(std::move(vocab), std::move(w_pos), std::move(w_neg), params);
}

ForwardTrace forward(const PerceptronModel& model, const TokenSet& tokens) {
  const auto& p = model.params();
  ForwardTrace trace;
  for (std::size_t i : model.active_inputs(tokens)) {
    trace.net_pos += model.w_pos()[i];
    trace.net_neg += model.w_neg()[i];
  }
  trace.out_pos = spm_uniform(trace.net_pos, p.alpha, p.lambda);
  trace.out_neg = spm_uniform(p.gamma * trace.net_neg, p.alpha, p.lambda);
  const TonalityScore s = decide(trace.out_pos, trace.out_neg, p);
  trace.delta = s.delta;
  trace.label = s.label;
  trace.expressive = s.expressive;
  return trace;
}

Gradient gradient(const PerceptronModel& model, const TokenSet& tokens, double target) {
  const auto& p = model.params();
  const ForwardTrace trace = forward(model, tokens);
  const double r = slope(p);
  const double error = trace.delta - target;
  const double d_pos = error * r * spm_derivative_factor(trace.net_pos, p);
  const double d_neg = -error * p.gamma * r * spm_derivative_factor(p.gamma * trace.net_neg, p);

  Gradient g;
  g.d_pos.assign(model.size(), 0.0);
  g.d_neg.assign(model.size(), 0.0);
  for (std::size_t i : model.active_inputs(tokens)) {
    g.d_pos[i] = d_pos;
    g.d_neg[i] = d_neg;
  }
  g.loss = 0.5 * error * error;
  return g;
}

double label_target(Label label) {
  switch (label) {
    case Label::kPositive: return 1.0;
    case Label::kNegative: return -1.0;
    case Label::kNeutral: return 0.0;
  }
  return 0.0;
}

double mean_loss(const PerceptronModel& model, std::span<const TrainingExample> data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : data) {
    const double e = forward(model, ex.tokens).delta - ex.target;
    total += 0.5 * e * e;
  }
  return total / static_cast<double>(data.size());
}

TrainResult train(const PerceptronModel& model, std::span<const TrainingExample> data,
                  const TrainOptions& options) {
  if (data.empty()) throw ArgumentError("training data must not be empty");
  if (!(options.learning_rate >= 0.0) || !std::isfinite(options.learning_rate)) {
    throw ArgumentError("learning rate must be non-negative");
  }
  TrainResult result{model, {}};
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.shuffle_seed.value_or(0));

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    if (options.shuffle_seed) {
      // Explicit Fisher-Yates: std::shuffle's draw sequence is library-specific.
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    }
    for (std::size_t idx : order) {
      const Gradient g = gradient(result.model, data[idx].tokens, data[idx].target);
      result.model.apply_update(g.d_pos, g.d_neg, options.learning_rate);
    }
    result.epoch_losses.push_back(mean_loss(result.model, data));
  }
  return result;
}

void save_model(const PerceptronModel& model, std::ostream& out) {
  out << kHeader << '\n';
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << "W\t" << model.vocab()[i] << '\t' << format_round_trip(model.w_pos()[i]) << '\t'
        << format_round_trip(model.w_neg()[i]) << '\n';
  }
  write_params_block(out, model.params());
}

std::string save_model(const PerceptronModel& model) {
  std::ostringstream out;
  save_model(model, out);
  return out.str();
}

void save_model_file(const PerceptronModel& model, const std::string& path) {
  const std::string bytes = save_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

PerceptronModel load_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("empty model file", 1);
  if (line != kHeader) {
    if (line.starts_with("TONALNET ")) throw FormatError("unsupported TONALNET version", 1);
    throw FormatError("missing TONALNET header", 1);
  }
  std::vector<std::string> vocab;
  std::vector<double> w_pos, w_neg;
  std::set<std::string, std::less<>> seen_words;
  ModelParams params;
  std::set<std::string, std::less<>> seen_params;
  std::unordered_map<std::string, std::size_t> param_lines;
  bool in_params = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!in_params && line == "PARAMS") {
      in_params = true;
      continue;
    }
    if (!in_params) {
      // W <word> <w+> <w->
      std::vector<std::string_view> fields;
      std::string_view rest = line;
      while (true) {
        auto tab = rest.find('\t');
        fields.push_back(rest.substr(0, tab));
        if (tab == std::string_view::npos) break;
        rest.remove_prefix(tab + 1);
      }
      if (fields.size() != 4 || fields[0] != "W" || fields[1].empty()) {
        throw FormatError("expected W<TAB>word<TAB>w+<TAB>w-", line_no);
      }
      auto wp = parse_double(fields[2]);
      auto wn = parse_double(fields[3]);
      if (!wp || !wn || *wp < 0.0 || *wn < 0.0) throw FormatError("invalid synapse weight", line_no);
      if (!seen_words.emplace(fields[1]).second) {
        throw FormatError("duplicate vocabulary word '" + std::string(fields[1]) + "'", line_no);
      }
      vocab.emplace_back(fields[1]);
      w_pos.push_back(*wp);
      w_neg.push_back(*wn);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_no);
    std::string key = line.substr(0, eq);
    try {
      if (!set_param(params, key, line.substr(eq + 1))) {
        throw FormatError("unknown parameter '" + key + "'", line_no);
      }
    } catch (const ArgumentError& e) {
      throw FormatError(e.what(), line_no);
    }
    if (!seen_params.insert(key).second) throw FormatError("duplicate parameter '" + key + "'", line_no);
    param_lines[key] = line_no;
  }
  if (!in_params) throw FormatError("missing PARAMS section", 0);
  if (seen_params.size() != param_entries(params).size()) throw FormatError("PARAMS section is incomplete", 0);
  try {
    validate(params);
  } catch (const ArgumentError& e) {
    std::string message = e.what();
    std::size_t where = 0;
    for (const auto& [key, at] : param_lines) {
      if (message.starts_with(key + ' ')) where = at;
    }
    throw FormatError(message, where);
  }
  return PerceptronModel(std::move(vocab), std::move(w_pos), std::move(w_neg), params);
}

PerceptronModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path + "'");
  return load_model(in);
}

}  // namespace tonality

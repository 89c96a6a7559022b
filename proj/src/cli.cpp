#include "tonality/cli.h"

#include <fstream>
#include <istream>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tonality/bayes.h"
#include "tonality/channel.h"
#include "tonality/error.h"
#include "tonality/evaluation.h"
#include "tonality/io.h"
#include "tonality/lexicon.h"
#include "tonality/number_format.h"
#include "tonality/perceptron.h"

namespace tonality::cli {
namespace {

using nlohmann::ordered_json;

// Thrown by a command to finish with a specific exit code after printing.
struct CommandFailure {
  int code;
  std::string message;
};

struct ParamFlags {
  std::optional<double> alpha, lambda, beta, gamma, tau, floor, band;

  void attach(CLI::App& cmd) {
    cmd.add_option("--alpha", alpha, "Uniform tonal-word weight");
    cmd.add_option("--lambda", lambda, "Prior odds ratio");
    cmd.add_option("--beta", beta, "Decision threshold on the output difference");
    cmd.add_option("--gamma", gamma, "Attenuation of negative evidence");
    cmd.add_option("--tau", tau, "Expressiveness threshold");
    cmd.add_option("--floor", floor, "Minimum word weight admitted to a lexicon");
    cmd.add_option("--band", band, "Half-width of the excluded weight band around 0.5");
  }

  ModelParams apply(ModelParams p) const {
    if (alpha) p.alpha = *alpha;
    if (lambda) p.lambda = *lambda;
    if (beta) p.beta = *beta;
    if (gamma) p.gamma = *gamma;
    if (tau) p.tau_expressive = *tau;
    if (floor) p.weight_floor = *floor;
    if (band) p.exclusion_band = *band;
    validate(p);
    return p;
  }
};

enum class Scorer { kUniform, kExact };

// Either the Bayes scorer over a lexicon or a trained network.
class Classifier {
 public:
  Classifier(std::optional<Lexicon> lexicon, std::optional<PerceptronModel> model, Scorer scorer,
             const ModelParams& params)
      : lexicon_(std::move(lexicon)), model_(std::move(model)), scorer_(scorer), params_(params) {
    if (model_) model_->set_params(params_);
  }

  TonalityScore score(const TokenSet& tokens) const {
    if (model_) return forward(*model_, tokens).score();
    if (scorer_ == Scorer::kExact) return score_with_exact_weights(tokens, *lexicon_, params_);
    return score_document(tokens, *lexicon_, params_);
  }

  const ModelParams& params() const { return params_; }

 private:
  std::optional<Lexicon> lexicon_;
  std::optional<PerceptronModel> model_;
  Scorer scorer_;
  ModelParams params_;
};

struct ModelSource {
  std::string lexicon_path;
  std::string model_path;
  std::string scorer = "uniform";

  void attach(CLI::App& cmd, bool with_scorer = true) {
    cmd.add_option("--lexicon", lexicon_path, "TONALEX lexicon file");
    cmd.add_option("--model", model_path, "TONALNET model file (scores with the network)");
    if (with_scorer) {
      cmd.add_option("--scorer", scorer, "Lexicon scorer: uniform or exact")
          ->check(CLI::IsMember({"uniform", "exact"}));
    }
  }

  Classifier build(const ParamFlags& flags) const {
    if (!model_path.empty()) {
      PerceptronModel model = load_model_file(model_path);
      ModelParams params = flags.apply(model.params());
      return Classifier(std::nullopt, std::move(model), Scorer::kUniform, params);
    }
    if (lexicon_path.empty()) throw CommandFailure{kUsageError, "either --lexicon or --model is required"};
    Lexicon lex = load_lexicon_file(lexicon_path);
    ModelParams params = flags.apply(lex.params);
    return Classifier(std::move(lex), std::nullopt, scorer == "exact" ? Scorer::kExact : Scorer::kUniform,
                      params);
  }
};

ordered_json params_json(const ModelParams& p) {
  return ordered_json{{"alpha", p.alpha},   {"lambda", p.lambda},          {"beta", p.beta},
                      {"gamma", p.gamma},   {"tau", p.tau_expressive},     {"exclusion_band", p.exclusion_band},
                      {"weight_floor", p.weight_floor}};
}

std::vector<JsonlRecord> read_records(const std::string& path, std::istream& stdin_stream,
                                      std::ostream& err, std::size_t& errors) {
  auto report = [&](const RecordError& e) {
    ++errors;
    err << "error: " << (path.empty() ? "<stdin>" : path) << ':' << e.line << ": " << e.message << '\n';
  };
  if (path.empty() || path == "-") return read_jsonl(stdin_stream, report);
  std::istringstream in(read_file(path));
  return read_jsonl(in, report);
}

void write_text_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

// ---- build-lexicon -------------------------------------------------------

struct BuildLexiconCommand {
  std::string pos_path, neg_path, out_path, created;
  ParamFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("build-lexicon", "Induce a tonal lexicon from labelled corpora");
    cmd->add_option("--pos", pos_path, "Positive corpus (directory or JSONL file)")->required();
    cmd->add_option("--neg", neg_path, "Negative corpus (directory or JSONL file)")->required();
    cmd->add_option("--out", out_path, "Output TONALEX file")->required();
    cmd->add_option("--created", created, "RFC 3339 creation time recorded in the lexicon");
    flags.attach(*cmd);
  }

  int run(std::ostream& out, std::ostream& err) const {
    const ModelParams params = flags.apply(ModelParams{});
    const auto positive = read_corpus(pos_path);
    const auto negative = read_corpus(neg_path);
    if (positive.empty()) throw CommandFailure{kUsageError, "empty corpus: " + pos_path};
    if (negative.empty()) throw CommandFailure{kUsageError, "empty corpus: " + neg_path};
    Lexicon lex = induce_lexicon(positive, negative, params);
    if (!created.empty()) lex.provenance.created = parse_rfc3339(created);
    save_lexicon_file(lex, out_path);
    if (lex.empty()) err << "warning: lexicon is empty; the corpora do not separate any word\n";
    out << "positive entries: " << lex.positive.size() << '\n';
    out << "negative entries: " << lex.negative.size() << '\n';
    return kSuccess;
  }
};

// ---- classify ------------------------------------------------------------

struct ClassifyCommand {
  ModelSource source;
  std::string in_path, format = "text", output = "text";
  ParamFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("classify", "Score documents");
    source.attach(*cmd);
    cmd->add_option("--in", in_path, "Input file (default: standard input)");
    cmd->add_option("--format", format, "Input format: text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
    cmd->add_option("--output", output, "Output format: text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
    flags.attach(*cmd);
  }

  int run(std::istream& in, std::ostream& out, std::ostream& err) const {
    const Classifier classifier = source.build(flags);
    std::size_t errors = 0;
    std::vector<DocumentRecord> docs;
    if (format == "jsonl") {
      for (auto& r : read_records(in_path, in, err, errors)) docs.push_back(std::move(r.doc));
    } else if (in_path.empty() || in_path == "-") {
      docs.push_back({"stdin", std::nullopt, std::string(std::istreambuf_iterator<char>(in), {})});
    } else {
      docs.push_back({in_path, std::nullopt, read_file(in_path)});
    }

    if (output == "jsonl") {
      out << ordered_json{{"params", params_json(classifier.params())}}.dump() << '\n';
    } else {
      out << "# params " << describe(classifier.params()) << '\n';
      out << "id\tout_pos\tout_neg\tdelta\tlabel\texpressive\n";
    }
    for (const auto& doc : docs) {
      TonalityScore s;
      try {
        s = classifier.score(doc.tokens());
      } catch (const DecodingError& e) {
        ++errors;
        err << "error: " << doc.id << ": " << e.what() << '\n';
        continue;
      }
      if (output == "jsonl") {
        out << ordered_json{{"id", doc.id},           {"out_pos", s.out_pos},
                            {"out_neg", s.out_neg},   {"delta", s.delta},
                            {"label", to_string(s.label)}, {"expressive", s.expressive}}
                   .dump()
            << '\n';
      } else {
        out << doc.id << '\t' << format_fixed(s.out_pos) << '\t' << format_fixed(s.out_neg) << '\t'
            << format_fixed(s.delta) << '\t' << to_string(s.label) << '\t'
            << (s.expressive ? "true" : "false") << '\n';
      }
    }
    return errors == 0 ? kSuccess : kPartialFailure;
  }
};

// ---- evaluate ------------------------------------------------------------

std::vector<std::pair<TokenSet, Label>> gold_dataset(const std::string& path, std::istream& in,
                                                     std::ostream& err) {
  std::size_t errors = 0;
  auto records = read_records(path, in, err, errors);
  if (errors > 0) throw CommandFailure{kUsageError, "malformed records in " + path};
  if (records.empty()) throw CommandFailure{kUsageError, "no records in " + path};
  std::vector<std::pair<TokenSet, Label>> out;
  for (const auto& r : records) {
    if (!r.gold) {
      throw CommandFailure{kUsageError, path + ":" + std::to_string(r.line) + ": missing gold label"};
    }
    auto label = parse_label(*r.gold);
    if (!label) {
      throw CommandFailure{kUsageError,
                           path + ":" + std::to_string(r.line) + ": unknown gold label '" + *r.gold + "'"};
    }
    out.emplace_back(r.doc.tokens(), *label);
  }
  return out;
}

struct EvaluateCommand {
  ModelSource source;
  std::string test_path;
  ParamFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Confusion matrix against gold labels");
    source.attach(*cmd);
    cmd->add_option("--test", test_path, "JSONL records carrying a \"gold\" label")->required();
    flags.attach(*cmd);
  }

  int run(std::istream& in, std::ostream& out, std::ostream& err) const {
    const Classifier classifier = source.build(flags);
    EvalReport report;
    for (const auto& [tokens, gold] : gold_dataset(test_path, in, err)) {
      report.add(gold, classifier.score(tokens));
    }
    out << "# params " << describe(classifier.params()) << '\n';
    out << report.to_text() << '\n' << report.to_json() << '\n';
    return kSuccess;
  }
};

// ---- train ---------------------------------------------------------------

struct TrainCommand {
  std::string lexicon_path, model_path, data_path, out_path;
  std::size_t epochs = 10;
  double lr = 0.1;
  std::optional<std::uint64_t> seed;
  ParamFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Train the network's synapse weights");
    cmd->add_option("--lexicon", lexicon_path, "Initialize from this TONALEX lexicon");
    cmd->add_option("--model", model_path, "Resume from this TONALNET model");
    cmd->add_option("--data", data_path, "JSONL training records with gold labels")->required();
    cmd->add_option("--epochs", epochs, "Passes over the data");
    cmd->add_option("--lr", lr, "Learning rate")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "Shuffle each epoch with this seed");
    cmd->add_option("--out", out_path, "Output TONALNET file")->required();
    flags.attach(*cmd);
  }

  int run(std::istream& in, std::ostream& out, std::ostream& err) const {
    PerceptronModel model;
    if (!model_path.empty()) {
      model = load_model_file(model_path);
      model.set_params(flags.apply(model.params()));
    } else if (!lexicon_path.empty()) {
      Lexicon lex = load_lexicon_file(lexicon_path);
      model = init_from_lexicon(lex, flags.apply(lex.params));
    } else {
      throw CommandFailure{kUsageError, "either --lexicon or --model is required"};
    }
    std::vector<TrainingExample> data;
    for (auto& [tokens, gold] : gold_dataset(data_path, in, err)) {
      data.push_back({std::move(tokens), label_target(gold)});
    }
    out << "# params " << describe(model.params()) << '\n';
    TrainResult result = train(model, data, TrainOptions{epochs, lr, seed});
    for (std::size_t e = 0; e < result.epoch_losses.size(); ++e) {
      out << "epoch " << e + 1 << " loss " << format_fixed(result.epoch_losses[e]) << '\n';
    }
    save_model_file(result.model, out_path);
    return kSuccess;
  }
};

// ---- concept -------------------------------------------------------------

struct ConceptCommand {
  std::string lexicon_path, concept_words, in_path, granularity = "paragraph", bucket, csv_path, svg_path;
  std::size_t radius = 5;
  ParamFlags flags;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("concept", "Concept tonality over a channel of documents");
    cmd->add_option("--lexicon", lexicon_path, "TONALEX lexicon file")->required();
    cmd->add_option("--concept", concept_words, "Concept phrase")->required();
    cmd->add_option("--in", in_path, "JSONL channel (default: standard input)");
    cmd->add_option("--granularity", granularity, "document, paragraph, sentence or window")
        ->check(CLI::IsMember({"document", "paragraph", "sentence", "window"}));
    cmd->add_option("--radius", radius, "Window radius in tokens")->check(CLI::PositiveNumber);
    cmd->add_option("--bucket", bucket, "Time bucket width such as 1d, 6h, 30m");
    cmd->add_option("--out-csv", csv_path, "Write the time series as CSV");
    cmd->add_option("--out-svg", svg_path, "Write the time series as an SVG bar chart");
    flags.attach(*cmd);
  }

  int run(std::istream& in, std::ostream& out, std::ostream& err) const {
    const Lexicon lex = load_lexicon_file(lexicon_path);
    const ModelParams params = flags.apply(lex.params);
    ConceptQuery query{normalize_concept(concept_words), parse_granularity(granularity), radius};
    if (query.concept_words.empty()) throw CommandFailure{kUsageError, "concept has no tokens"};
    if (bucket.empty() && (!csv_path.empty() || !svg_path.empty())) {
      throw CommandFailure{kUsageError, "--out-csv/--out-svg require --bucket"};
    }
    std::optional<std::chrono::seconds> width;
    if (!bucket.empty()) width = parse_duration(bucket);

    std::size_t errors = 0;
    std::vector<DocumentRecord> docs;
    for (auto& r : read_records(in_path, in, err, errors)) docs.push_back(std::move(r.doc));
    if (docs.empty()) throw CommandFailure{kUsageError, "channel has no documents"};
    const ChannelReport report = channel_report(docs, query, lex, params, width);

    out << "# params " << describe(params) << '\n';
    out << "concept: " << concept_words << " (" << to_string(query.granularity) << ")\n";
    out << "documents: " << report.counts.total() << '\n';
    out << "positive: " << report.counts.positive << '\n';
    out << "negative: " << report.counts.negative << '\n';
    out << "neutral: " << report.counts.neutral << " (expressive " << report.counts.expressive << ")\n";
    out << "integral: " << to_string(report.integral_label) << '\n';
    for (const auto& [id, s] : report.per_document) {
      out << id << '\t' << format_fixed(s.delta) << '\t' << to_string(s.label)
          << (s.expressive ? "\texpressive" : "") << '\n';
    }
    if (!csv_path.empty()) write_text_file(csv_path, render_timeseries(report, SeriesFormat::kCsv));
    if (!svg_path.empty()) write_text_file(svg_path, render_timeseries(report, SeriesFormat::kSvg));
    return errors == 0 ? kSuccess : kPartialFailure;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Text tonality analysis: lexicon induction, scoring, training and channel reports",
               "tonality"};
  app.require_subcommand(1);
  BuildLexiconCommand build;
  ClassifyCommand classify;
  EvaluateCommand evaluate;
  TrainCommand train_cmd;
  ConceptCommand concept_words;
  build.attach(app);
  classify.attach(app);
  evaluate.attach(app);
  train_cmd.attach(app);
  concept_words.attach(app);

  std::vector<const char*> argv{"tonality"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (app.got_subcommand("build-lexicon")) return build.run(out, err);
    if (app.got_subcommand("classify")) return classify.run(in, out, err);
    if (app.got_subcommand("evaluate")) return evaluate.run(in, out, err);
    if (app.got_subcommand("train")) return train_cmd.run(in, out, err);
    if (app.got_subcommand("concept")) return concept_words.run(in, out, err);
  } catch (const CommandFailure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
  return kUsageError;
}

}  // namespace tonality::cli

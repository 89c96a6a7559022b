#include "tonality/lexicon.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "tonality/error.h"
#include "tonality/number_format.h"

namespace tonality {
namespace {

constexpr std::string_view kMagic = "TONALEX";
constexpr std::string_view kVersion = "1";
constexpr double kSmoothing = 1.0;
constexpr double kBandSlack = 1e-12;

using DocumentFrequencies = std::unordered_map<std::string, std::size_t>;

DocumentFrequencies count_documents(std::span<const DocumentRecord> corpus) {
  DocumentFrequencies df;
  for (const auto& doc : corpus) {
    for (const auto& word : doc.tokens().types) ++df[word];
  }
  return df;
}

void check_entry(double weight, double band, const std::string& word, std::size_t line) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw FormatError("weight for '" + word + "' outside [0,1]", line);
  }
  if (inside_exclusion_band(weight, band)) {
    throw FormatError("weight for '" + word + "' inside the exclusion band", line);
  }
}

bool is_normalized_word(const std::string& word) {
  try {
    auto tokens = tokenize(word).tokens;
    return tokens.size() == 1 && tokens.front() == word;
  } catch (const DecodingError&) {
    return false;
  }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

bool inside_exclusion_band(double weight, double band) {
  return std::abs(weight - 0.5) < band - kBandSlack;
}

double estimate_word_weight(std::size_t df_target, std::size_t n_target, std::size_t df_other,
                            std::size_t n_other) {
  if (n_target == 0 || n_other == 0) throw ArgumentError("corpus size must be at least 1");
  if (df_target > n_target || df_other > n_other) {
    throw ArgumentError("document frequency exceeds corpus size");
  }
  const double r_target = (static_cast<double>(df_target) + kSmoothing) /
                          (static_cast<double>(n_target) + 2.0 * kSmoothing);
  const double r_other = (static_cast<double>(df_other) + kSmoothing) /
                         (static_cast<double>(n_other) + 2.0 * kSmoothing);
  return r_target / (r_target + r_other);
}

Lexicon induce_lexicon(std::span<const DocumentRecord> positive_corpus,
                       std::span<const DocumentRecord> negative_corpus,
                       const ModelParams& params) {
  validate(params);
  if (positive_corpus.empty() || negative_corpus.empty()) {
    throw ArgumentError("both corpora must contain at least one document");
  }
  const auto df_pos = count_documents(positive_corpus);
  const auto df_neg = count_documents(negative_corpus);
  const std::size_t n_pos = positive_corpus.size();
  const std::size_t n_neg = negative_corpus.size();

  auto lookup = [](const DocumentFrequencies& df, const std::string& word) -> std::size_t {
    auto it = df.find(word);
    return it == df.end() ? 0 : it->second;
  };

  Lexicon lex;
  lex.params = params;
  lex.provenance.positive_documents = n_pos;
  lex.provenance.negative_documents = n_neg;

  auto consider = [&](const std::string& word) {
    const double weight = estimate_word_weight(lookup(df_pos, word), n_pos, lookup(df_neg, word), n_neg);
    if (inside_exclusion_band(weight, params.exclusion_band)) return;
    if (weight >= params.weight_floor) {
      lex.positive.emplace(word, weight);
    } else if (1.0 - weight >= params.weight_floor) {
      lex.negative.emplace(word, 1.0 - weight);
    }
  };
  for (const auto& [word, count] : df_pos) consider(word);
  for (const auto& [word, count] : df_neg) {
    if (!df_pos.contains(word)) consider(word);
  }
  return lex;
}

void validate(const Lexicon& lexicon) {
  validate(lexicon.params);
  for (const auto* map : {&lexicon.positive, &lexicon.negative}) {
    for (const auto& [word, weight] : *map) {
      if (!(weight >= 0.0 && weight <= 1.0)) {
        throw ArgumentError("weight for '" + word + "' outside [0,1]");
      }
      if (inside_exclusion_band(weight, lexicon.params.exclusion_band)) {
        throw ArgumentError("weight for '" + word + "' inside the exclusion band");
      }
      if (!is_normalized_word(word)) throw ArgumentError("word '" + word + "' is not normalized");
    }
  }
}

void save_lexicon(const Lexicon& lexicon, std::ostream& out) {
  validate(lexicon);
  out << kMagic << ' ' << kVersion << '\n';
  for (const auto& [word, weight] : lexicon.positive) {
    out << "P\t" << word << '\t' << format_round_trip(weight) << '\n';
  }
  for (const auto& [word, weight] : lexicon.negative) {
    out << "N\t" << word << '\t' << format_round_trip(weight) << '\n';
  }
  write_params_block(out, lexicon.params);
  out << "PROVENANCE\n";
  out << "positive_documents=" << lexicon.provenance.positive_documents << '\n';
  out << "negative_documents=" << lexicon.provenance.negative_documents << '\n';
  if (lexicon.provenance.created) out << "created=" << format_rfc3339(*lexicon.provenance.created) << '\n';
}

std::string save_lexicon(const Lexicon& lexicon) {
  std::ostringstream out;
  save_lexicon(lexicon, out);
  return out.str();
}

void save_lexicon_file(const Lexicon& lexicon, const std::string& path) {
  const std::string bytes = save_lexicon(lexicon);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

Lexicon load_lexicon(std::istream& in) {
  enum class Section { kEntries, kParams, kProvenance };
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw FormatError("empty lexicon file", 1);
  ++line_no;
  if (!line.starts_with(std::string(kMagic) + ' ')) throw FormatError("missing TONALEX header", 1);
  if (line != std::string(kMagic) + ' ' + std::string(kVersion)) {
    throw FormatError("unsupported TONALEX version '" + line.substr(kMagic.size() + 1) + "'", 1);
  }

  struct PendingEntry {
    std::string word;
    double weight;
    std::size_t line;
  };
  std::vector<PendingEntry> pending;
  std::unordered_map<std::string, std::size_t> seen_params;
  bool seen_pos_docs = false, seen_neg_docs = false;
  Section section = Section::kEntries;

  while (std::getline(in, line)) {
    ++line_no;
    if (line == "PARAMS") {
      if (section != Section::kEntries) throw FormatError("unexpected PARAMS section", line_no);
      section = Section::kParams;
      continue;
    }
    if (line == "PROVENANCE") {
      if (section != Section::kParams) throw FormatError("unexpected PROVENANCE section", line_no);
      section = Section::kProvenance;
      continue;
    }
    if (section == Section::kEntries) {
      auto fields = split_tabs(line);
      if (fields.size() != 3 || (fields[0] != "P" && fields[0] != "N")) {
        throw FormatError("expected P|N<TAB>word<TAB>weight", line_no);
      }
      std::string word(fields[1]);
      if (!is_normalized_word(word)) throw FormatError("word '" + word + "' is not normalized", line_no);
      auto weight = parse_double(fields[2]);
      if (!weight) throw FormatError("invalid weight '" + std::string(fields[2]) + "'", line_no);
      auto& target = fields[0] == "P" ? lex.positive : lex.negative;
      if (!target.emplace(word, *weight).second) {
        throw FormatError("duplicate entry '" + word + "'", line_no);
      }
      pending.push_back({std::move(word), *weight, line_no});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_no);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (section == Section::kParams) {
      try {
        if (!set_param(lex.params, key, value)) throw FormatError("unknown parameter '" + key + "'", line_no);
      } catch (const ArgumentError& e) {
        throw FormatError(e.what(), line_no);
      }
      if (seen_params.contains(key)) throw FormatError("duplicate parameter '" + key + "'", line_no);
      seen_params[key] = line_no;
      continue;
    }
    if (key == "positive_documents" || key == "negative_documents") {
      std::size_t count = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), count);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw FormatError("invalid document count '" + value + "'", line_no);
      }
      bool& seen = key == "positive_documents" ? seen_pos_docs : seen_neg_docs;
      if (seen) throw FormatError("duplicate key '" + key + "'", line_no);
      seen = true;
      (key == "positive_documents" ? lex.provenance.positive_documents
                                   : lex.provenance.negative_documents) = count;
    } else if (key == "created") {
      if (lex.provenance.created) throw FormatError("duplicate key 'created'", line_no);
      try {
        lex.provenance.created = parse_rfc3339(value);
      } catch (const ArgumentError& e) {
        throw FormatError(e.what(), line_no);
      }
    } else {
      throw FormatError("unknown provenance key '" + key + "'", line_no);
    }
  }

  if (section == Section::kEntries) throw FormatError("missing PARAMS section", 0);
  if (seen_params.size() != param_entries(lex.params).size()) {
    throw FormatError("PARAMS section is incomplete", 0);
  }
  try {
    validate(lex.params);
  } catch (const ArgumentError& e) {
    std::string message = e.what();
    std::size_t where = 0;
    for (const auto& [key, at] : seen_params) {
      if (message.starts_with(key + ' ')) where = at;
    }
    throw FormatError(message, where);
  }
  for (const auto& entry : pending) check_entry(entry.weight, lex.params.exclusion_band, entry.word, entry.line);
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon '" + path + "'");
  return load_lexicon(in);
}

}  // namespace tonality

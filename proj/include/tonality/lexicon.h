#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "tonality/document.h"
#include "tonality/params.h"

namespace tonality {

// word -> probability that a document containing it carries the map's
// polarity. Sorted, so serialization order is canonical.
using WeightMap = std::map<std::string, double, std::less<>>;

struct LexiconProvenance {
  std::size_t positive_documents = 0;
  std::size_t negative_documents = 0;
  std::optional<Timestamp> created;

  bool operator==(const LexiconProvenance&) const = default;
};

/// Tone-colored word lists. A word may sit in both maps only when lexicons
/// from different runs were merged; a single induction places it in at most
/// one.
struct Lexicon {
  WeightMap positive;
  WeightMap negative;
  ModelParams params;
  LexiconProvenance provenance;

  bool empty() const { return positive.empty() && negative.empty(); }
  bool operator==(const Lexicon&) const = default;
};

// True if |weight - 1/2| is below `band` (with 1e-12 slack, so a weight of
// exactly 0.6 survives a 0.1 band).
bool inside_exclusion_band(double weight, double band);

/// Smoothed document-frequency ratio (additive smoothing s = 1):
///   r_t = (df_target + 1) / (n_target + 2),  r_o likewise,  w = r_t / (r_t + r_o).
/// The result is strictly inside (0,1). Throws ArgumentError when a corpus is
/// empty or a document frequency exceeds its corpus size.
double estimate_word_weight(std::size_t df_target, std::size_t n_target, std::size_t df_other,
                            std::size_t n_other);

/// Builds positive and negative word lists from two labelled corpora.
/// Deterministic; provenance.created is left unset.
Lexicon induce_lexicon(std::span<const DocumentRecord> positive_corpus,
                       std::span<const DocumentRecord> negative_corpus,
                       const ModelParams& params);

// Throws ArgumentError if any entry is out of [0,1] or inside the band.
void validate(const Lexicon& lexicon);

// TONALEX text format. save() validates first.
void save_lexicon(const Lexicon& lexicon, std::ostream& out);
std::string save_lexicon(const Lexicon& lexicon);
void save_lexicon_file(const Lexicon& lexicon, const std::string& path);

// Throws FormatError naming the offending line.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::string& path);

}  // namespace tonality

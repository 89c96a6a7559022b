#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tonality/bayes.h"
#include "tonality/document.h"
#include "tonality/lexicon.h"

namespace tonality {

enum class Granularity { kDocument, kParagraph, kSentence, kWindow };

std::string_view to_string(Granularity g);
// Throws ArgumentError for an unknown name.
Granularity parse_granularity(std::string_view name);

struct LabelCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t neutral = 0;     // includes expressive documents
  std::size_t expressive = 0;  // subset of neutral

  std::size_t total() const { return positive + negative + neutral; }
  void add(const TonalityScore& score);
  bool operator==(const LabelCounts&) const = default;
};

struct TimeBucket {
  Timestamp start;
  LabelCounts counts;

  bool operator==(const TimeBucket&) const = default;
};

struct ChannelReport {
  std::vector<std::string> concept_words;
  std::vector<std::pair<std::string, TonalityScore>> per_document;  // input order
  LabelCounts counts;
  Label integral_label = Label::kNeutral;
  std::chrono::seconds bucket_width{0};
  std::optional<std::vector<TimeBucket>> buckets;  // chronological, gaps included
};

struct ConceptQuery {
  std::vector<std::string> concept_words;  // normalized tokens
  Granularity granularity = Granularity::kDocument;
  std::size_t window_radius = 5;
};

/// Tonality of `doc` with respect to a concept. At document granularity the
/// whole text is scored when the concept occurs. At finer granularity every
/// fragment containing the concept is scored and the one with the largest
/// |delta| wins (earliest on ties). With no occurrence the result is the
/// empty-evidence score.
TonalityScore concept_tonality(const DocumentRecord& doc, const ConceptQuery& query,
                               const Lexicon& lexicon, const ModelParams& params);

// Most frequent label; any tie for first place resolves to Neutral.
Label plurality_label(const LabelCounts& counts);

/// Scores every document and aggregates. When `bucket_width` is given,
/// timestamped documents are also counted into epoch-aligned half-open
/// buckets. Throws ArgumentError for an empty channel, duplicate ids, or a
/// bucket width with no timestamped document.
ChannelReport channel_report(std::span<const DocumentRecord> docs, const ConceptQuery& query,
                             const Lexicon& lexicon, const ModelParams& params,
                             std::optional<std::chrono::seconds> bucket_width = std::nullopt);

enum class SeriesFormat { kCsv, kSvg };

// Throws ArgumentError if the report has no buckets.
std::string render_timeseries(const ChannelReport& report, SeriesFormat format);

}  // namespace tonality

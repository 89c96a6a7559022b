#include "tonality/channel.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tonality/error.h"

namespace tonality {
namespace {

FragmentKind fragment_kind(Granularity g) {
  switch (g) {
    case Granularity::kParagraph: return FragmentKind::kParagraph;
    case Granularity::kSentence: return FragmentKind::kSentence;
    default: return FragmentKind::kWindow;
  }
}

// Floor division so pre-epoch instants land in the right bucket.
std::int64_t bucket_index(Timestamp ts, std::chrono::seconds width) {
  const std::int64_t t = ts.time_since_epoch().count();
  const std::int64_t w = width.count();
  std::int64_t q = t / w;
  if (t % w != 0 && t < 0) --q;
  return q;
}

}  // namespace

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::kDocument: return "document";
    case Granularity::kParagraph: return "paragraph";
    case Granularity::kSentence: return "sentence";
    case Granularity::kWindow: return "window";
  }
  return "unknown";
}

Granularity parse_granularity(std::string_view name) {
  for (auto g : {Granularity::kDocument, Granularity::kParagraph, Granularity::kSentence,
                 Granularity::kWindow}) {
    if (name == to_string(g)) return g;
  }
  throw ArgumentError("unknown granularity '" + std::string(name) + "'");
}

void LabelCounts::add(const TonalityScore& score) {
  switch (score.label) {
    case Label::kPositive: ++positive; break;
    case Label::kNegative: ++negative; break;
    case Label::kNeutral:
      ++neutral;
      if (score.expressive) ++expressive;
      break;
  }
}

TonalityScore concept_tonality(const DocumentRecord& doc, const ConceptQuery& query,
                               const Lexicon& lexicon, const ModelParams& params) {
  if (query.concept_words.empty()) throw ArgumentError("concept must contain at least one token");
  if (query.granularity == Granularity::kDocument) {
    const TokenSet tokens = doc.tokens();
    const auto needle = normalize_concept(std::span<const std::string>(query.concept_words));
    if (needle.empty()) throw ArgumentError("concept must contain at least one token");
    if (!contains_sequence(tokens.tokens, needle)) return empty_evidence_score(params);
    return score_document(tokens, lexicon, params);
  }

  const auto fragments = extract_concept_fragments(doc, query.concept_words, fragment_kind(query.granularity),
                                                   query.window_radius);
  std::optional<TonalityScore> best;
  for (const auto& fragment : fragments) {
    TonalityScore s = score_document(tokenize(fragment.text), lexicon, params);
    if (!best || std::abs(s.delta) > std::abs(best->delta)) best = s;
  }
  return best.value_or(empty_evidence_score(params));
}

Label plurality_label(const LabelCounts& c) {
  const std::size_t top = std::max({c.positive, c.negative, c.neutral});
  const int winners = (c.positive == top) + (c.negative == top) + (c.neutral == top);
  if (winners > 1) return Label::kNeutral;
  if (c.positive == top) return Label::kPositive;
  if (c.negative == top) return Label::kNegative;
  return Label::kNeutral;
}

ChannelReport channel_report(std::span<const DocumentRecord> docs, const ConceptQuery& query,
                             const Lexicon& lexicon, const ModelParams& params,
                             std::optional<std::chrono::seconds> bucket_width) {
  if (docs.empty()) throw ArgumentError("channel must contain at least one document");
  if (bucket_width && bucket_width->count() <= 0) throw ArgumentError("bucket width must be positive");
  std::set<std::string_view> ids;
  for (const auto& doc : docs) {
    if (!ids.insert(doc.id).second) throw ArgumentError("duplicate document id '" + doc.id + "'");
  }
  if (bucket_width && std::none_of(docs.begin(), docs.end(),
                                   [](const DocumentRecord& d) { return d.timestamp.has_value(); })) {
    throw ArgumentError("bucketing requested but no document carries a timestamp");
  }

  ChannelReport report;
  report.concept_words = query.concept_words;
  std::map<std::int64_t, LabelCounts> by_bucket;
  for (const auto& doc : docs) {
    TonalityScore score = concept_tonality(doc, query, lexicon, params);
    report.counts.add(score);
    if (bucket_width && doc.timestamp) by_bucket[bucket_index(*doc.timestamp, *bucket_width)].add(score);
    report.per_document.emplace_back(doc.id, score);
  }
  report.integral_label = plurality_label(report.counts);

  if (bucket_width) {
    report.bucket_width = *bucket_width;
    std::vector<TimeBucket> buckets;
    const std::int64_t first = by_bucket.begin()->first;
    const std::int64_t last = by_bucket.rbegin()->first;
    for (std::int64_t i = first; i <= last; ++i) {
      TimeBucket b{Timestamp{std::chrono::seconds{i * bucket_width->count()}}, {}};
      if (auto it = by_bucket.find(i); it != by_bucket.end()) b.counts = it->second;
      buckets.push_back(b);
    }
    report.buckets = std::move(buckets);
  }
  return report;
}

}  // namespace tonality

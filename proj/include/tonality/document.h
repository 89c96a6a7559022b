#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tonality/text.h"

namespace tonality {

using Timestamp = std::chrono::sys_seconds;

/// The unit of classification and ingestion.
struct DocumentRecord {
  std::string id;
  std::optional<Timestamp> timestamp;
  std::string text;

  TokenSet tokens() const { return tokenize(text); }
  bool operator==(const DocumentRecord&) const = default;
};

// Parses RFC 3339 ("2024-03-01T12:00:00Z", "...+02:00", fractional seconds
// truncated). Throws ArgumentError.
Timestamp parse_rfc3339(std::string_view text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_rfc3339(Timestamp ts);

// Parses "30s", "15m", "6h", "1d", "1w" (positive integer + unit).
std::chrono::seconds parse_duration(std::string_view text);

inline std::vector<Fragment> extract_concept_fragments(const DocumentRecord& doc,
                                                       std::span<const std::string> concept_words,
                                                       FragmentKind kind,
                                                       std::size_t window_radius = 1) {
  return extract_concept_fragments(doc.text, concept_words, kind, window_radius);
}

}  // namespace tonality

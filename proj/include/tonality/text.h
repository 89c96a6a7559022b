#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tonality {

/// Normalized words of a text. `tokens` keeps order and repeats; `types` is
/// the deduplicated set, which is what scoring counts.
struct TokenSet {
  std::vector<std::string> tokens;
  std::set<std::string, std::less<>> types;

  bool contains(std::string_view word) const { return types.find(word) != types.end(); }
  bool operator==(const TokenSet&) const = default;
};

// Half-open byte range into a source string.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Token {
  std::string text;  // normalized
  Span span;         // bytes of the original spelling
};

enum class FragmentKind { kParagraph, kSentence, kWindow };

struct Fragment {
  FragmentKind kind = FragmentKind::kParagraph;
  std::string text;  // == source.substr(span)
  Span span;

  bool operator==(const Fragment&) const = default;
};

std::string_view to_string(FragmentKind kind);

/// Splits UTF-8 text into maximal runs of Unicode letters and digits,
/// lowercased. Runs shorter than two code points are dropped.
/// Throws DecodingError on ill-formed UTF-8.
TokenSet tokenize(std::string_view text);

// Same rule as tokenize(), keeping the source byte span of each token.
std::vector<Token> tokenize_with_spans(std::string_view text);

// Lowercases and tokenizes each phrase word; "Acme Corp" -> [acme, corp].
std::vector<std::string> normalize_concept(std::string_view phrase);
std::vector<std::string> normalize_concept(std::span<const std::string> words);

// Paragraphs are separated by one or more blank (whitespace-only) lines.
// Each span is trimmed of surrounding whitespace.
std::vector<Fragment> split_paragraphs(std::string_view text);

// Splits every paragraph into sentences. A sentence ends after a run of
// '.', '!', '?' or U+2026 that is followed by whitespace and then an
// uppercase letter or digit, or by the end of the paragraph.
// Abbreviations such as "Mr." split too; that is a known limitation.
std::vector<Fragment> split_sentences(std::string_view text);

// True if `concept` occurs as a contiguous run inside `tokens`.
bool contains_sequence(std::span<const std::string> tokens, std::span<const std::string> concept_words);

/// Fragments of `text` containing `concept` (a token sequence, matched
/// case-insensitively). For kWindow, one fragment per occurrence spanning
/// `window_radius` tokens on either side.
/// Throws ArgumentError for an empty concept or a zero radius with kWindow.
std::vector<Fragment> extract_concept_fragments(std::string_view text,
                                                std::span<const std::string> concept_words,
                                                FragmentKind kind, std::size_t window_radius = 1);

}  // namespace tonality

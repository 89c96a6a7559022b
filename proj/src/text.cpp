#include "tonality/text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>

#include "tonality/error.h"

namespace tonality {
namespace {

constexpr std::size_t kMinTokenCodePoints = 2;

bool is_word_char(UChar32 c) { return u_isalpha(c) || u_isdigit(c); }

bool is_space_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Decodes the code point at `pos`, advancing it. Throws on ill-formed input.
UChar32 next_code_point(std::string_view text, std::size_t& pos) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  auto i = static_cast<int32_t>(pos);
  UChar32 c = 0;
  U8_NEXT(s, i, length, c);
  if (c < 0) throw DecodingError("invalid UTF-8 at byte " + std::to_string(pos), pos);
  pos = static_cast<std::size_t>(i);
  return c;
}

void append_utf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

Span trim(std::string_view text, Span span) {
  while (span.begin < span.end && is_space_byte(text[span.begin])) ++span.begin;
  while (span.end > span.begin && is_space_byte(text[span.end - 1])) --span.end;
  return span;
}

Fragment make_fragment(std::string_view text, FragmentKind kind, Span span) {
  return Fragment{kind, std::string(text.substr(span.begin, span.size())), span};
}

bool is_terminator_at(std::string_view text, std::size_t pos, std::size_t& width) {
  char c = text[pos];
  if (c == '.' || c == '!' || c == '?') {
    width = 1;
    return true;
  }
  if (text.substr(pos, 3) == "\xE2\x80\xA6") {  // U+2026
    width = 3;
    return true;
  }
  return false;
}

// Whitespace then an uppercase letter or digit starts the next sentence.
bool starts_new_sentence(std::string_view text, std::size_t pos, std::size_t end) {
  if (pos >= end || !is_space_byte(text[pos])) return false;
  while (pos < end && is_space_byte(text[pos])) ++pos;
  if (pos >= end) return false;
  UChar32 c = next_code_point(text.substr(0, end), pos);
  return u_isupper(c) || u_istitle(c) || u_isdigit(c);
}

void split_paragraph_sentences(std::string_view text, Span para, std::vector<Fragment>& out) {
  std::size_t start = para.begin;
  std::size_t pos = para.begin;
  while (pos < para.end) {
    std::size_t width = 0;
    if (!is_terminator_at(text, pos, width)) {
      next_code_point(text.substr(0, para.end), pos);
      continue;
    }
    std::size_t after = pos + width;
    // Absorb a run such as "?!" or "...".
    while (after < para.end && is_terminator_at(text, after, width)) after += width;
    if (after >= para.end || starts_new_sentence(text, after, para.end)) {
      Span s = trim(text, Span{start, after});
      if (s.size() > 0) out.push_back(make_fragment(text, FragmentKind::kSentence, s));
      start = after;
    }
    pos = after;
  }
  Span tail = trim(text, Span{start, para.end});
  if (tail.size() > 0) out.push_back(make_fragment(text, FragmentKind::kSentence, tail));
}

}  // namespace

std::string_view to_string(FragmentKind kind) {
  switch (kind) {
    case FragmentKind::kParagraph: return "paragraph";
    case FragmentKind::kSentence: return "sentence";
    case FragmentKind::kWindow: return "window";
  }
  return "unknown";
}

std::vector<Token> tokenize_with_spans(std::string_view text) {
  std::vector<Token> out;
  std::string current;
  std::size_t run_begin = 0;
  std::size_t run_chars = 0;
  std::size_t pos = 0;

  auto flush = [&](std::size_t run_end) {
    if (run_chars >= kMinTokenCodePoints) out.push_back(Token{current, Span{run_begin, run_end}});
    current.clear();
    run_chars = 0;
  };

  while (pos < text.size()) {
    std::size_t at = pos;
    UChar32 c = next_code_point(text, pos);
    if (is_word_char(c)) {
      if (run_chars == 0) run_begin = at;
      append_utf8(current, u_tolower(c));
      ++run_chars;
    } else if (run_chars > 0) {
      flush(at);
    }
  }
  if (run_chars > 0) flush(text.size());
  return out;
}

TokenSet tokenize(std::string_view text) {
  TokenSet result;
  for (auto& token : tokenize_with_spans(text)) {
    result.types.insert(token.text);
    result.tokens.push_back(std::move(token.text));
  }
  return result;
}

std::vector<std::string> normalize_concept(std::string_view phrase) {
  return tokenize(phrase).tokens;
}

std::vector<std::string> normalize_concept(std::span<const std::string> words) {
  std::string joined;
  for (const auto& word : words) {
    joined += word;
    joined += ' ';
  }
  return normalize_concept(joined);
}

std::vector<Fragment> split_paragraphs(std::string_view text) {
  std::vector<Fragment> out;
  std::size_t para_begin = 0;
  bool in_para = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    bool blank = std::all_of(line.begin(), line.end(), is_space_byte);
    if (blank && in_para) {
      out.push_back(make_fragment(text, FragmentKind::kParagraph, trim(text, {para_begin, pos})));
      in_para = false;
    } else if (!blank && !in_para) {
      para_begin = pos;
      in_para = true;
    }
    pos = eol + 1;
  }
  if (in_para) {
    out.push_back(make_fragment(text, FragmentKind::kParagraph, trim(text, {para_begin, text.size()})));
  }
  return out;
}

std::vector<Fragment> split_sentences(std::string_view text) {
  std::vector<Fragment> out;
  for (const auto& para : split_paragraphs(text)) split_paragraph_sentences(text, para.span, out);
  return out;
}

bool contains_sequence(std::span<const std::string> tokens, std::span<const std::string> concept_words) {
  if (concept_words.empty()) return false;
  return std::search(tokens.begin(), tokens.end(), concept_words.begin(), concept_words.end()) != tokens.end();
}

std::vector<Fragment> extract_concept_fragments(std::string_view text,
                                                std::span<const std::string> concept_words,
                                                FragmentKind kind, std::size_t window_radius) {
  const std::vector<std::string> needle = normalize_concept(concept_words);
  if (needle.empty()) throw ArgumentError("concept must contain at least one token");

  std::vector<Fragment> out;
  if (kind == FragmentKind::kWindow) {
    if (window_radius < 1) throw ArgumentError("window radius must be at least 1");
    const auto tokens = tokenize_with_spans(text);
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) words.push_back(t.text);
    for (std::size_t i = 0; i + needle.size() <= words.size(); ++i) {
      if (!std::equal(needle.begin(), needle.end(), words.begin() + static_cast<std::ptrdiff_t>(i))) {
        continue;
      }
      std::size_t first = i >= window_radius ? i - window_radius : 0;
      std::size_t last = std::min(words.size() - 1, i + needle.size() - 1 + window_radius);
      out.push_back(make_fragment(text, FragmentKind::kWindow,
                                  Span{tokens[first].span.begin, tokens[last].span.end}));
    }
    return out;
  }

  auto candidates = kind == FragmentKind::kParagraph ? split_paragraphs(text) : split_sentences(text);
  for (auto& fragment : candidates) {
    if (contains_sequence(tokenize(fragment.text).tokens, needle)) out.push_back(std::move(fragment));
  }
  return out;
}

}  // namespace tonality

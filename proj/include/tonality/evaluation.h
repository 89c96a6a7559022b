#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "tonality/bayes.h"

namespace tonality {

// "positive" | "negative" | "neutral" (case-insensitive); nullopt otherwise.
std::optional<Label> parse_label(std::string_view name);

/// Confusion matrix over {Positive, Negative, Neutral}, rows = gold,
/// columns = predicted, indexed by the Label enum value.
class EvalReport {
 public:
  void add(Label gold, const TonalityScore& predicted);

  std::size_t count(Label gold, Label predicted) const;
  std::size_t total() const { return total_; }
  std::size_t expressive_count() const { return expressive_; }

  double accuracy() const;  // trace / total; 0 for an empty report
  // 0 when the class never occurs in the relevant margin.
  double precision(Label label) const;
  double recall(Label label) const;

  std::string to_text() const;  // aligned table, 6-decimal figures
  std::string to_json() const;  // single JSON object, full precision

 private:
  std::array<std::array<std::size_t, 3>, 3> confusion_{};
  std::size_t total_ = 0;
  std::size_t expressive_ = 0;
};

}  // namespace tonality

#include "tonality/evaluation.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tonality/number_format.h"

namespace tonality {
namespace {

constexpr Label kLabels[] = {Label::kPositive, Label::kNegative, Label::kNeutral};

std::size_t idx(Label l) { return static_cast<std::size_t>(l); }

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<Label> parse_label(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Label l : kLabels) {
    if (lower == to_string(l)) return l;
  }
  return std::nullopt;
}

void EvalReport::add(Label gold, const TonalityScore& predicted) {
  ++confusion_[idx(gold)][idx(predicted.label)];
  ++total_;
  if (predicted.expressive) ++expressive_;
}

std::size_t EvalReport::count(Label gold, Label predicted) const {
  return confusion_[idx(gold)][idx(predicted)];
}

double EvalReport::accuracy() const {
  std::size_t trace = 0;
  for (Label l : kLabels) trace += count(l, l);
  return ratio(trace, total_);
}

double EvalReport::precision(Label label) const {
  std::size_t predicted = 0;
  for (Label g : kLabels) predicted += count(g, label);
  return ratio(count(label, label), predicted);
}

double EvalReport::recall(Label label) const {
  std::size_t actual = 0;
  for (Label p : kLabels) actual += count(label, p);
  return ratio(count(label, label), actual);
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  char row[128];
  std::snprintf(row, sizeof row, "%-14s%10s%10s%10s\n", "gold\\pred", "positive", "negative", "neutral");
  out << row;
  for (Label g : kLabels) {
    std::snprintf(row, sizeof row, "%-14s%10zu%10zu%10zu\n", std::string(to_string(g)).c_str(),
                  count(g, Label::kPositive), count(g, Label::kNegative), count(g, Label::kNeutral));
    out << row;
  }
  out << "\naccuracy   " << format_fixed(accuracy()) << "  (" << total_ << " documents, "
      << expressive_ << " expressive)\n";
  std::snprintf(row, sizeof row, "%-14s%12s%12s\n", "class", "precision", "recall");
  out << row;
  for (Label l : kLabels) {
    std::snprintf(row, sizeof row, "%-14s%12s%12s\n", std::string(to_string(l)).c_str(),
                  format_fixed(precision(l)).c_str(), format_fixed(recall(l)).c_str());
    out << row;
  }
  return out.str();
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["labels"] = {"positive", "negative", "neutral"};
  auto matrix = nlohmann::json::array();
  for (Label g : kLabels) {
    matrix.push_back({count(g, Label::kPositive), count(g, Label::kNegative), count(g, Label::kNeutral)});
  }
  j["confusion"] = matrix;
  j["total"] = total_;
  j["accuracy"] = accuracy();
  nlohmann::ordered_json per_class;
  for (Label l : kLabels) {
    per_class[std::string(to_string(l))] = {{"precision", precision(l)}, {"recall", recall(l)}};
  }
  j["per_class"] = per_class;
  j["expressive_count"] = expressive_;
  return j.dump();
}

}  // namespace tonality

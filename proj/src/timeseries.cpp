#include <algorithm>
#include <sstream>

#include "tonality/channel.h"
#include "tonality/error.h"

namespace tonality {
namespace {

constexpr const char* kPositiveFill = "#2e8b57";
constexpr const char* kNegativeFill = "#b22222";
constexpr const char* kNeutralFill = "#9e9e9e";

constexpr int kBarWidth = 24;
constexpr int kBarGap = 6;
constexpr int kMarginLeft = 40;
constexpr int kMarginRight = 10;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 40;
constexpr int kPlotHeight = 200;

std::string render_csv(const std::vector<TimeBucket>& buckets) {
  std::ostringstream out;
  out << "bucket_start,positive,negative,neutral\n";
  for (const auto& b : buckets) {
    out << format_rfc3339(b.start) << ',' << b.counts.positive << ',' << b.counts.negative << ','
        << b.counts.neutral << '\n';
  }
  return out.str();
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Integer pixel geometry only, so identical input gives identical bytes.
std::string render_svg(const ChannelReport& report, const std::vector<TimeBucket>& buckets) {
  std::size_t max_total = 1;
  for (const auto& b : buckets) max_total = std::max(max_total, b.counts.total());
  const int n = static_cast<int>(buckets.size());
  const int width = kMarginLeft + n * (kBarWidth + kBarGap) + kMarginRight;
  const int height = kMarginTop + kPlotHeight + kMarginBottom;
  const int baseline = kMarginTop + kPlotHeight;
  auto scaled = [&](std::size_t count) {
    return static_cast<int>((count * kPlotHeight + max_total / 2) / max_total);
  };

  std::string concept_words;
  for (const auto& w : report.concept_words) concept_words += (concept_words.empty() ? "" : " ") + w;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<title>tonality: " << xml_escape(concept_words) << "</title>\n";
  out << "<text x=\"" << kMarginLeft << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">"
      << xml_escape(concept_words) << " (max " << max_total << " per bucket)</text>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << baseline << "\" x2=\"" << width - kMarginRight
      << "\" y2=\"" << baseline << "\" stroke=\"#000000\"/>\n";
  for (int i = 0; i < n; ++i) {
    const auto& b = buckets[static_cast<std::size_t>(i)];
    const int x = kMarginLeft + i * (kBarWidth + kBarGap) + kBarGap / 2;
    int top = baseline;
    // Stacked bottom-up: positive, negative, neutral.
    const std::pair<std::size_t, const char*> segments[] = {
        {b.counts.positive, kPositiveFill}, {b.counts.negative, kNegativeFill}, {b.counts.neutral, kNeutralFill}};
    const char* names[] = {"positive", "negative", "neutral"};
    for (int s = 0; s < 3; ++s) {
      const int h = scaled(segments[s].first);
      if (h == 0) continue;
      top -= h;
      out << "<rect class=\"" << names[s] << "\" x=\"" << x << "\" y=\"" << top << "\" width=\""
          << kBarWidth << "\" height=\"" << h << "\" fill=\"" << segments[s].second << "\"/>\n";
    }
    const std::string stamp = format_rfc3339(b.start);
    out << "<text x=\"" << x << "\" y=\"" << baseline + 14 << "\" font-family=\"sans-serif\" font-size=\"8\">"
        << stamp.substr(5, 5) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_timeseries(const ChannelReport& report, SeriesFormat format) {
  if (!report.buckets) throw ArgumentError("report has no time buckets");
  return format == SeriesFormat::kCsv ? render_csv(*report.buckets) : render_svg(report, *report.buckets);
}

}  // namespace tonality

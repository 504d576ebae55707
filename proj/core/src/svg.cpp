#include "reviewguard/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace reviewguard {

namespace {

constexpr double kWidth = 900, kHeight = 280;
constexpr double kLeft = 52, kRight = 12, kTop = 28, kBottom = 34;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void line(std::string& out, double x1, double y1, double x2, double y2, const char* stroke,
          const char* extra = "") {
  out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + stroke + "\" " + extra + "/>\n";
}

void rect(std::string& out, double x, double y, double w, double h, const char* fill,
          const char* extra = "") {
  out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
         num(h) + "\" fill=\"" + fill + "\" " + extra + "/>\n";
}

void text(std::string& out, double x, double y, const std::string& s, const char* extra = "") {
  out += "<text x=\"" + num(x) + "\" y=\"" + num(y) +
         "\" font-family=\"sans-serif\" font-size=\"11\" " + extra + ">" + s + "</text>\n";
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string timeline_svg(const BusinessRsd& rsd) {
  const DailyCountSeries& s = rsd.series;
  long span_days = std::max(1L, days_between(s.window.start, s.window.end));
  double max_count = 1;
  for (const auto& [d, n] : s.positive) max_count = std::max(max_count, double(n));
  for (const auto& [d, n] : s.negative) max_count = std::max(max_count, double(n));
  if (rsd.positive_fences) max_count = std::max(max_count, rsd.positive_fences->uof);
  if (rsd.negative_fences) max_count = std::max(max_count, rsd.negative_fences->uof);
  max_count *= 1.08;

  double plot_w = kWidth - kLeft - kRight;
  double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](Date d) {
    return kLeft + plot_w * double(days_between(s.window.start, d)) / double(span_days);
  };
  auto y_of = [&](double count) { return kTop + plot_h * (1.0 - count / max_count); };

  std::string out = header(kWidth, kHeight);
  text(out, kLeft, 16, s.business_id + "  (" + format_date(s.window.start) + " .. " +
                           format_date(s.window.end) + ")");
  // Axes.
  line(out, kLeft, kTop, kLeft, kTop + plot_h, "#444");
  line(out, kLeft, kTop + plot_h, kLeft + plot_w, kTop + plot_h, "#444");
  for (int tick = 0; tick <= 4; ++tick) {
    double v = max_count * tick / 4.0;
    text(out, 6, y_of(v) + 4, num(v), "fill=\"#444\"");
    line(out, kLeft - 3, y_of(v), kLeft, y_of(v), "#444");
  }
  text(out, kLeft, kHeight - 8, format_date(s.window.start), "fill=\"#444\"");
  text(out, kLeft + plot_w - 70, kHeight - 8, format_date(s.window.end), "fill=\"#444\"");

  auto bars = [&](const std::map<Date, int>& counts, const char* color) {
    for (const auto& [day, n] : counts) {
      double x = x_of(day);
      double y = y_of(double(n));
      rect(out, x - 0.75, y, 1.5, kTop + plot_h - y, color, "opacity=\"0.85\"");
    }
  };
  bars(s.positive, "#4078a8");
  bars(s.negative, "#d86040");

  auto fence_line = [&](const std::optional<FencePair>& f, const char* color,
                        const char* label) {
    if (!f) return;
    double y = y_of(f->uof);
    line(out, kLeft, y, kLeft + plot_w, y, color, "stroke-dasharray=\"6 3\"");
    text(out, kLeft + plot_w - 90, y - 4, std::string(label) + " UOF " + num(f->uof),
         (std::string("fill=\"") + color + "\"").c_str());
  };
  fence_line(rsd.positive_fences, "#205080", "pos");
  fence_line(rsd.negative_fences, "#a03010", "neg");

  for (const Spike& spike : rsd.spikes) {
    const char* color = spike.polarity == Polarity::Positive ? "#d02020" : "#802010";
    out += "<circle cx=\"" + num(x_of(spike.date)) + "\" cy=\"" +
           num(y_of(double(spike.count))) + "\" r=\"3.5\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
  }

  out += "</svg>\n";
  return out;
}

std::string box_whisker_svg(const BusinessRsd& rsd, Polarity polarity) {
  const std::optional<FencePair>& fence =
      polarity == Polarity::Positive ? rsd.positive_fences : rsd.negative_fences;
  const auto& counts = rsd.series.counts(polarity);

  double w = 560, h = 140;
  std::string out = header(w, h);
  text(out, 12, 18, rsd.series.business_id + "  " + to_string(polarity) + " daily counts");
  if (!fence || counts.empty()) {
    text(out, 12, 60, "not enough active days");
    out += "</svg>\n";
    return out;
  }

  double lo = double(counts.begin()->second), hi = lo;
  for (const auto& [d, n] : counts) {
    lo = std::min(lo, double(n));
    hi = std::max(hi, double(n));
  }
  double axis_lo = std::min(lo, fence->lof) - 0.5;
  double axis_hi = std::max(hi, fence->uof) + 0.5;
  auto x_of = [&](double v) { return 30 + (w - 60) * (v - axis_lo) / (axis_hi - axis_lo); };
  double mid = 72, box_h = 36;

  // Whiskers span the observed extremes; box spans the hinges.
  line(out, x_of(lo), mid, x_of(fence->q1), mid, "#444");
  line(out, x_of(fence->q3), mid, x_of(hi), mid, "#444");
  line(out, x_of(lo), mid - 8, x_of(lo), mid + 8, "#444");
  line(out, x_of(hi), mid - 8, x_of(hi), mid + 8, "#444");
  rect(out, x_of(fence->q1), mid - box_h / 2, x_of(fence->q3) - x_of(fence->q1), box_h,
       "#c8dcec", "stroke=\"#444\"");
  line(out, x_of(fence->q2), mid - box_h / 2, x_of(fence->q2), mid + box_h / 2, "#205080",
       "stroke-width=\"2\"");
  for (double f : {fence->lof, fence->uof}) {
    line(out, x_of(f), mid - box_h / 2, x_of(f), mid + box_h / 2, "#d02020",
         "stroke-dasharray=\"4 3\"");
  }
  text(out, x_of(fence->q1) - 8, mid + box_h / 2 + 16, "Q1 " + num(fence->q1), "fill=\"#444\"");
  text(out, x_of(fence->q3) - 8, mid - box_h / 2 - 6, "Q3 " + num(fence->q3), "fill=\"#444\"");
  text(out, x_of(fence->uof) - 14, mid + box_h / 2 + 16, "UOF " + num(fence->uof),
       "fill=\"#d02020\"");
  text(out, x_of(fence->lof) - 14, mid - box_h / 2 - 6, "LOF " + num(fence->lof),
       "fill=\"#d02020\"");

  out += "</svg>\n";
  return out;
}

}  // namespace reviewguard

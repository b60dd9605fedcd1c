#include "lrtbench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lrtbench {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
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

void open_document(std::ostringstream& out, double width, double height, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
}

struct Frame {
  double x0, y0, w, h;  // pixel box of the plot area
  double lo, hi;        // data range on the y axis (x is [0,1] for ROC)

  double px(double x) const { return x0 + x * w; }
  double py(double y) const { return y0 + h - (y - lo) / (hi - lo) * h; }
};

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel,
          const std::string& ylabel, bool x_ticks) {
  out << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.w)
      << "\" height=\"" << num(f.h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = f.lo + (f.hi - f.lo) * i / 5.0;
    out << "<line x1=\"" << num(f.x0 - 4) << "\" y1=\"" << num(f.py(v)) << "\" x2=\""
        << num(f.x0) << "\" y2=\"" << num(f.py(v)) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(f.x0 - 6) << "\" y=\"" << num(f.py(v) + 4)
        << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    if (x_ticks) {
      const double u = i / 5.0;
      out << "<line x1=\"" << num(f.px(u)) << "\" y1=\"" << num(f.y0 + f.h) << "\" x2=\""
          << num(f.px(u)) << "\" y2=\"" << num(f.y0 + f.h + 4) << "\" stroke=\"black\"/>\n"
          << "<text x=\"" << num(f.px(u)) << "\" y=\"" << num(f.y0 + f.h + 16)
          << "\" text-anchor=\"middle\">" << num(u) << "</text>\n";
    }
  }
  if (!xlabel.empty())
    out << "<text x=\"" << num(f.x0 + f.w / 2) << "\" y=\"" << num(f.y0 + f.h + 34)
        << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  out << "<text x=\"" << num(f.x0 - 40) << "\" y=\"" << num(f.y0 + f.h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(f.x0 - 40) << ' '
      << num(f.y0 + f.h / 2) << ")\">" << escape(ylabel) << "</text>\n";
}

}  // namespace

std::string roc_svg(const std::string& title, const std::map<std::string, RocCurve>& curves) {
  std::ostringstream out;
  open_document(out, 520, 480, title);
  const Frame f{70, 40, 380, 380, 0.0, 1.0};
  axes(out, f, "false positive rate", "true positive rate", true);
  out << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(1))
      << "\" y2=\"" << num(f.py(1)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  std::size_t color = 0;
  for (const auto& [name, curve] : curves) {
    const char* stroke = kPalette[color % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      out << (i ? " " : "") << num(f.px(curve.points[i].fpr)) << ','
          << num(f.py(curve.points[i].tpr));
    out << "\"/>\n";
    const double ly = f.y0 + f.h - 16.0 * static_cast<double>(curves.size() - color);
    out << "<line x1=\"" << num(f.px(0.55)) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(f.px(0.62)) << "\" y2=\"" << num(ly) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(f.px(0.64)) << "\" y=\"" << num(ly + 4) << "\">" << escape(name)
        << "</text>\n";
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

std::string boxplot_svg(const std::string& title,
                        const std::vector<std::pair<std::string, std::vector<BoxSeries>>>& panels) {
  const double panel_w = 360, panel_h = 300, top = 40, left = 70;
  std::ostringstream out;
  open_document(out, left + panels.size() * (panel_w + 70), top + panel_h + 90, title);
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& [metric, series] = panels[p];
    double lo = 1.0, hi = 0.0;
    for (const auto& s : series) {
      if (s.summary.count == 0) continue;
      lo = std::min(lo, s.summary.min);
      hi = std::max(hi, s.summary.max);
    }
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    const double pad = std::max(0.02, 0.1 * (hi - lo));
    lo = std::max(0.0, lo - pad);
    hi = std::min(1.0, hi + pad);
    if (hi - lo < 1e-6) hi = lo + 0.05;
    const Frame f{left + p * (panel_w + 70), top, panel_w, panel_h, lo, hi};
    axes(out, f, "", metric, false);
    const double slot = series.empty() ? f.w : f.w / static_cast<double>(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
      const FiveNumberSummary& s = series[i].summary;
      const char* stroke = kPalette[i % std::size(kPalette)];
      const double cx = f.x0 + slot * (static_cast<double>(i) + 0.5);
      const double half = std::min(30.0, slot * 0.3);
      out << "<text x=\"" << num(cx) << "\" y=\"" << num(f.y0 + f.h + 16)
          << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(series[i].label)
          << "</text>\n";
      if (s.count == 0) continue;
      out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(f.py(s.whisker_low)) << "\" x2=\""
          << num(cx) << "\" y2=\"" << num(f.py(s.q1)) << "\" stroke=\"" << stroke << "\"/>\n"
          << "<line x1=\"" << num(cx) << "\" y1=\"" << num(f.py(s.q3)) << "\" x2=\"" << num(cx)
          << "\" y2=\"" << num(f.py(s.whisker_high)) << "\" stroke=\"" << stroke << "\"/>\n";
      for (double w : {s.whisker_low, s.whisker_high})
        out << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(f.py(w)) << "\" x2=\""
            << num(cx + half / 2) << "\" y2=\"" << num(f.py(w)) << "\" stroke=\"" << stroke
            << "\"/>\n";
      out << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(f.py(s.q3)) << "\" width=\""
          << num(2 * half) << "\" height=\"" << num(std::max(0.5, f.py(s.q1) - f.py(s.q3)))
          << "\" fill=\"" << stroke << "\" fill-opacity=\"0.25\" stroke=\"" << stroke << "\"/>\n"
          << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(f.py(s.median)) << "\" x2=\""
          << num(cx + half) << "\" y2=\"" << num(f.py(s.median)) << "\" stroke=\"" << stroke
          << "\" stroke-width=\"2\"/>\n";
      for (double o : s.outliers)
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(f.py(o)) << "\" r=\"2.5\" fill=\"none\" stroke=\""
            << stroke << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lrtbench

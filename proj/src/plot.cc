#include "adeval/plot.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adeval/format.h"

namespace adeval::plot {

namespace {

constexpr double kWidth = 670;
constexpr double kHeight = 560;
constexpr double kLeft = 70;
constexpr double kRight = 230;  // iso-F1 labels and legend column
constexpr double kTop = 50;
constexpr double kBottom = 60;

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string Num(double v) { return FormatFixed(v, 2); }

// General-domain blue, specialized (medical or social) violet, mixed coral.
const char* DomainColor(const analysis::FeatureVector& f) {
  const bool specialized = f.medical || f.social;
  if (specialized && f.general) return "#ff7f50";
  if (specialized) return "#c71585";
  return "#6495ed";
}

double Radius(int size_bucket) { return 4.0 + 2.0 * size_bucket; }

std::string Marker(double cx, double cy, double r, int category,
                   const char* color) {
  std::ostringstream out;
  const std::string style = std::string(" fill=\"") + color +
                            "\" stroke=\"#222\" stroke-width=\"0.8\"";
  switch (category) {
    case 1:  // triangle
      out << "<polygon points=\"" << Num(cx) << ',' << Num(cy - r * 1.2) << ' '
          << Num(cx - r * 1.1) << ',' << Num(cy + r * 0.8) << ' '
          << Num(cx + r * 1.1) << ',' << Num(cy + r * 0.8) << "\"" << style
          << "/>";
      break;
    case 2:  // square
      out << "<rect x=\"" << Num(cx - r) << "\" y=\"" << Num(cy - r)
          << "\" width=\"" << Num(2 * r) << "\" height=\"" << Num(2 * r)
          << "\"" << style << "/>";
      break;
    default:
      out << "<circle cx=\"" << Num(cx) << "\" cy=\"" << Num(cy) << "\" r=\""
          << Num(r) << "\"" << style << "/>";
  }
  return out.str();
}

}  // namespace

std::string PrecisionRecallSvg(std::span<const ScatterPoint> points,
                               const std::string& title) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double r) { return kLeft + r * plot_w; };
  auto py = [&](double p) { return kTop + (1.0 - p) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\"25\" "
      << "text-anchor=\"middle\" font-size=\"14\">" << Escape(title)
      << "</text>\n";

  // Grid and axes.
  for (int k = 0; k <= 10; ++k) {
    const double v = k / 10.0;
    svg << "<line x1=\"" << Num(px(v)) << "\" y1=\"" << Num(py(0)) << "\" x2=\""
        << Num(px(v)) << "\" y2=\"" << Num(py(1))
        << "\" stroke=\"#eee\"/>\n";
    svg << "<line x1=\"" << Num(px(0)) << "\" y1=\"" << Num(py(v)) << "\" x2=\""
        << Num(px(1)) << "\" y2=\"" << Num(py(v))
        << "\" stroke=\"#eee\"/>\n";
    svg << "<text x=\"" << Num(px(v)) << "\" y=\"" << Num(py(0) + 15)
        << "\" text-anchor=\"middle\">" << FormatFixed(v, 1) << "</text>\n";
    svg << "<text x=\"" << Num(px(0) - 6) << "\" y=\"" << Num(py(v) + 4)
        << "\" text-anchor=\"end\">" << FormatFixed(v, 1) << "</text>\n";
  }
  svg << "<rect x=\"" << Num(kLeft) << "\" y=\"" << Num(kTop) << "\" width=\""
      << Num(plot_w) << "\" height=\"" << Num(plot_h)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\""
      << Num(kHeight - 20) << "\" text-anchor=\"middle\">Recall</text>\n";
  svg << "<text transform=\"translate(20 " << Num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">Precision</text>\n";

  // Iso-F1 guides over recall in (f1/2, 1], clipped to precision <= 1.
  std::vector<double> grid;
  for (int k = 1; k <= 400; ++k) grid.push_back(k / 400.0);
  for (double f1 : kIsoF1Levels) {
    std::ostringstream path;
    bool first = true;
    for (const auto& [r, p] : analysis::IsoF1Curve(f1, grid)) {
      if (p > 1.0) continue;
      path << (first ? "M" : " L") << Num(px(r)) << ',' << Num(py(p));
      first = false;
    }
    svg << "<path d=\"" << path.str()
        << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << Num(px(1) + 4) << "\" y=\""
        << Num(py(analysis::IsoF1Precision(f1, 1.0)) + 3)
        << "\" fill=\"#777\" font-size=\"9\">F1=" << FormatFixed(f1, 1)
        << "</text>\n";
  }

  // Point labels go right of the marker, nudged up or down when they would
  // overlap a marker or a label placed earlier.
  struct Box { double x0, y0, x1, y1; };
  std::vector<Box> placed;
  for (const auto& pt : points) {
    const double r = Radius(pt.features.size_bucket) + 1;
    const double cx = px(std::clamp(pt.recall, 0.0, 1.0));
    const double cy = py(std::clamp(pt.precision, 0.0, 1.0));
    placed.push_back({cx - r, cy - r, cx + r, cy + r});
  }
  auto free_at = [&](const Box& b) {
    return std::none_of(placed.begin(), placed.end(), [&](const Box& o) {
      return b.x0 < o.x1 && o.x0 < b.x1 && b.y0 < o.y1 && o.y0 < b.y1;
    });
  };
  for (const auto& pt : points) {
    const double cx = px(std::clamp(pt.recall, 0.0, 1.0));
    const double cy = py(std::clamp(pt.precision, 0.0, 1.0));
    const double r = Radius(pt.features.size_bucket);
    const double text_w = 5.0 * static_cast<double>(pt.label.size());
    double ty = cy + 3;
    for (double dy : {0.0, -10.0, 10.0, -20.0, 20.0, -30.0, 30.0}) {
      const Box b{cx + r + 3, cy + 3 + dy - 8, cx + r + 3 + text_w, cy + 3 + dy + 1};
      if (free_at(b)) {
        ty = cy + 3 + dy;
        break;
      }
    }
    placed.push_back({cx + r + 3, ty - 8, cx + r + 3 + text_w, ty + 1});
    svg << "<g><title>" << Escape(pt.label) << " (R=" << FormatFixed(pt.recall, 4)
        << ", P=" << FormatFixed(pt.precision, 4) << ")</title>"
        << Marker(cx, cy, Radius(pt.features.size_bucket), pt.features.category,
                  DomainColor(pt.features))
        << "</g>\n";
    svg << "<text x=\"" << Num(cx + r + 3) << "\" y=\"" << Num(ty)
        << "\" font-size=\"9\">" << Escape(pt.label) << "</text>\n";
  }

  // Legend.
  double ly = kTop + 10;
  const double lx = kWidth - kRight + 50;
  svg << "<text x=\"" << Num(lx) << "\" y=\"" << Num(ly)
      << "\" font-weight=\"bold\">Category</text>\n";
  for (int c = 0; c < 3; ++c) {
    ly += 18;
    svg << Marker(lx + 6, ly - 4, 5, c, "#fff") << "<text x=\"" << Num(lx + 18)
        << "\" y=\"" << Num(ly) << "\">"
        << analysis::CategoryName(static_cast<analysis::ModelCategory>(c))
        << "</text>\n";
  }
  ly += 28;
  svg << "<text x=\"" << Num(lx) << "\" y=\"" << Num(ly)
      << "\" font-weight=\"bold\">Domain</text>\n";
  const std::pair<analysis::FeatureVector, const char*> domains[] = {
      {{0, 1, 0, 0, 0, 0}, "general"},
      {{0, 0, 1, 0, 0, 0}, "specialized"},
      {{0, 1, 1, 0, 0, 0}, "mixed"}};
  for (const auto& [f, name] : domains) {
    ly += 18;
    svg << "<rect x=\"" << Num(lx) << "\" y=\"" << Num(ly - 10)
        << "\" width=\"12\" height=\"12\" fill=\"" << DomainColor(f)
        << "\"/><text x=\"" << Num(lx + 18) << "\" y=\"" << Num(ly) << "\">"
        << name << "</text>\n";
  }
  ly += 28;
  svg << "<text x=\"" << Num(lx) << "\" y=\"" << Num(ly)
      << "\" font-weight=\"bold\">Size</text>\n";
  const char* sizes[] = {"&lt; 100M", "100M-130M", "&gt; 130M"};
  for (int s = 0; s < 3; ++s) {
    ly += 20;
    svg << "<circle cx=\"" << Num(lx + 6) << "\" cy=\"" << Num(ly - 4)
        << "\" r=\"" << Num(Radius(s))
        << "\" fill=\"#ccc\" stroke=\"#222\" stroke-width=\"0.8\"/><text x=\""
        << Num(lx + 18) << "\" y=\"" << Num(ly) << "\">" << sizes[s]
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string DeltaBarsSvg(const analysis::ModuleEffectReport& report,
                         const std::string& title) {
  const auto& deltas = report.deltas;
  double extent = 1.0;
  for (const auto& d : deltas) {
    extent = std::max({extent, std::abs(d.delta_precision), std::abs(d.delta_recall)});
  }
  extent = std::ceil(extent);

  const double row_h = 22;
  const double label_w = 150;
  const double bar_w = 360;
  const double width = label_w + bar_w + 60;
  const double height = 80 + row_h * static_cast<double>(deltas.size()) + 40;
  const double zero = label_w + bar_w / 2;
  auto bx = [&](double v) { return zero + v / extent * (bar_w / 2); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" viewBox=\"0 0 " << Num(width)
      << ' ' << Num(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << Num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << Escape(title) << "</text>\n";
  svg << "<rect x=\"" << Num(label_w) << "\" y=\"32\" width=\"10\" height=\"10\" "
      << "fill=\"#2980b9\"/><text x=\"" << Num(label_w + 14)
      << "\" y=\"41\">Δ Precision</text>\n";
  svg << "<rect x=\"" << Num(label_w + 110)
      << "\" y=\"32\" width=\"10\" height=\"10\" fill=\"#e67e22\"/><text x=\""
      << Num(label_w + 124) << "\" y=\"41\">Δ Recall</text>\n";

  const double top = 60;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto& d = deltas[i];
    const double y = top + row_h * static_cast<double>(i);
    svg << "<text x=\"" << Num(label_w - 8) << "\" y=\"" << Num(y + 14)
        << "\" text-anchor=\"end\">" << Escape(d.model) << "</text>\n";
    const double bars[2] = {d.delta_precision, d.delta_recall};
    const char* colors[2] = {"#2980b9", "#e67e22"};
    for (int k = 0; k < 2; ++k) {
      const double x0 = std::min(bx(0), bx(bars[k]));
      const double w = std::abs(bx(bars[k]) - bx(0));
      svg << "<rect x=\"" << Num(x0) << "\" y=\"" << Num(y + 3 + 8 * k)
          << "\" width=\"" << Num(w) << "\" height=\"8\" fill=\"" << colors[k]
          << "\"><title>" << FormatFixed(bars[k], 2) << "</title></rect>\n";
    }
  }
  const double bottom = top + row_h * static_cast<double>(deltas.size());
  svg << "<line x1=\"" << Num(zero) << "\" y1=\"" << Num(top - 4) << "\" x2=\""
      << Num(zero) << "\" y2=\"" << Num(bottom) << "\" stroke=\"#333\"/>\n";
  for (double v : {-extent, 0.0, extent}) {
    svg << "<text x=\"" << Num(bx(v)) << "\" y=\"" << Num(bottom + 16)
        << "\" text-anchor=\"middle\">" << FormatFixed(v, 0) << "</text>\n";
  }
  svg << "<text x=\"" << Num(zero) << "\" y=\"" << Num(bottom + 32)
      << "\" text-anchor=\"middle\">percentage points</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace adeval::plot

#include "adeval/plot.h"

#include <gtest/gtest.h>

namespace adeval::plot {
namespace {

std::size_t Count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

TEST(PlotTest, SingleRunScatter) {
  const std::vector<ScatterPoint> points = {{"BERT", 0.7, 0.65, {0, 1, 0, 0, 1, 1}}};
  const std::string svg = PrecisionRecallSvg(points, "cadec");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(Count(svg, "<title>BERT"), 1u);
  EXPECT_EQ(Count(svg, "stroke-dasharray"), 7u);  // F1 = 0.2 ... 0.8
  for (const char* label : {"F1=0.2", "F1=0.5", "F1=0.8"}) {
    EXPECT_NE(svg.find(label), std::string::npos) << label;
  }
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(PlotTest, MarkersEncodeCategoryDomainAndSize) {
  const std::vector<ScatterPoint> points = {
      {"enc", 0.5, 0.5, {0, 1, 0, 0, 1, 0}},
      {"ar", 0.5, 0.5, {1, 0, 1, 0, 1, 1}},
      {"t2t", 0.5, 0.5, {2, 1, 1, 0, 0, 2}}};
  const std::string svg = PrecisionRecallSvg(points, "x");
  const auto item = [&](const std::string& name) {
    const auto a = svg.find("<title>" + name + " ");
    return svg.substr(a, svg.find("</g>", a) - a);
  };
  EXPECT_NE(item("enc").find("<circle"), std::string::npos);
  EXPECT_NE(item("enc").find("#6495ed"), std::string::npos);
  EXPECT_NE(item("ar").find("<polygon"), std::string::npos);
  EXPECT_NE(item("ar").find("#c71585"), std::string::npos);
  EXPECT_NE(item("t2t").find("<rect"), std::string::npos);
  EXPECT_NE(item("t2t").find("#ff7f50"), std::string::npos);
}

TEST(PlotTest, EscapesLabels) {
  const std::vector<ScatterPoint> points = {{"a<b&c", 0.1, 0.2, {}}};
  const std::string svg = PrecisionRecallSvg(points, "\"t\"");
  EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
  EXPECT_EQ(svg.find("a<b"), std::string::npos);
}

TEST(PlotTest, DeltaBars) {
  analysis::ModuleEffectReport report;
  report.deltas = {{"BERT", "cadec", 1.5, -0.5, 0.4}, {"T5", "cadec", -3.0, 2.0, 0.1}};
  const std::string svg = DeltaBarsSvg(report, "CRF");
  EXPECT_EQ(Count(svg, "<title>"), 4u);
  EXPECT_NE(svg.find(">BERT<"), std::string::npos);
  EXPECT_NE(svg.find("<title>-3.00</title>"), std::string::npos);
}

}  // namespace
}  // namespace adeval::plot

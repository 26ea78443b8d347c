#ifndef ADEVAL_PLOT_H_
#define ADEVAL_PLOT_H_

#include <span>
#include <string>
#include <vector>

#include "adeval/features.h"
#include "adeval/runs.h"

namespace adeval::plot {

struct ScatterPoint {
  std::string label;
  double recall = 0.0;     // [0, 1]
  double precision = 0.0;  // [0, 1]
  analysis::FeatureVector features;
};

inline constexpr double kIsoF1Levels[] = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};

// Precision/recall scatter with dashed iso-F1 guides. Marker shape encodes
// the model category (circle, triangle, square), fill colour the
// pre-training domain mix, marker radius the size bucket.
std::string PrecisionRecallSvg(std::span<const ScatterPoint> points,
                               const std::string& title);

// Grouped bars of the precision and recall deltas per model.
std::string DeltaBarsSvg(const analysis::ModuleEffectReport& report,
                         const std::string& title);

}  // namespace adeval::plot

#endif  // ADEVAL_PLOT_H_

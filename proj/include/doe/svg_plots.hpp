#pragma once

#include <array>
#include <string>
#include <string_view>

#include "doe/design.hpp"
#include "doe/screening.hpp"

namespace doe {

// Rendering parameters shared by every figure. Output bytes are a pure
// function of (input data, config): fixed 2-decimal coordinate formatting,
// no timestamps, no generated ids.
//
// Vertical scale contract: a value v maps to
//   y_px = margin + (y_max - v) / (y_max - y_min) * (height - 2*margin)
// With the auto-padded policy, [y_min, y_max] is the data range padded by 5%
// of its span on each side (by 1.0 when the span is zero). An explicit range
// must contain every plotted value.
struct PlotConfig {
  double width = 720.0;
  double height = 360.0;
  double margin = 42.0;
  double point_radius = 3.0;
  double font_size = 11.0;
  bool explicit_y_range = false;
  double y_min = 0.0;
  double y_max = 1.0;
};

// One sub-panel per factor on a shared y axis: all run points at coded
// x in {-1,+1} plus the segment joining the two level means. When a
// benchmark factor is designated it is placed rightmost for comparison;
// the rest keep declaration order. Points sharing a level are separated by
// a deterministic horizontal offset in run order.
std::string render_main_effects(const PanelData& panels, const PlotConfig& config,
                                std::string_view benchmark_factor = {});

// The four-cell conditional display: panels left to right in cell order
// (first conditioner alternating within each pair, second switching between
// pairs), conditioner legends on top, each panel plotting its points against
// the focal factor.
std::string render_structured(const StructuredLayout& layout, const PlotConfig& config);

// The design flattened to two squares, one per level of slice_factor
// (low slice left). The two remaining axes give each run's (x, y) coded
// position inside its square; run ids are drawn next to the points.
// axes must name three design factors including slice_factor, and
// slice_factor must be two-level.
std::string render_design_geometry(const DesignMatrix& design,
                                   const std::array<std::string, 3>& axes,
                                   std::string_view slice_factor,
                                   const PlotConfig& config);

}  // namespace doe

#include "doe/svg_plots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "doe/error.hpp"

namespace doe {

namespace {

constexpr double kPanelGap = 8.0;
constexpr double kPairGap = 20.0;
constexpr double kJitterStep = 2.5;

// Fixed 2-decimal formatting keeps output bytes reproducible.
std::string px(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed, 2);
  std::string text(buffer, result.ptr);
  if (text == "-0.00") text = "0.00";
  return text;
}

std::string esc(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
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

void check_config(const PlotConfig& config) {
  if (!(config.width > 0) || !(config.height > 0) || !(config.margin >= 0) ||
      !(config.point_radius > 0) || !(config.font_size > 0)) {
    throw ValidationError("plot config dimensions must be positive");
  }
  if (config.width <= 2 * config.margin || config.height <= 2 * config.margin) {
    throw ValidationError("plot margins leave no drawing area");
  }
  if (config.explicit_y_range && !(config.y_min < config.y_max)) {
    throw ValidationError("explicit y range must have y_min < y_max");
  }
}

// Maps a value into pixel y; y_max sits at the top of the plot area.
struct YScale {
  double y_min = 0.0;
  double y_max = 1.0;
  double top = 0.0;
  double bottom = 1.0;

  double operator()(double value) const {
    return top + (y_max - value) / (y_max - y_min) * (bottom - top);
  }
};

YScale make_y_scale(const PlotConfig& config, double data_min, double data_max) {
  YScale scale;
  scale.top = config.margin;
  scale.bottom = config.height - config.margin;
  if (config.explicit_y_range) {
    if (data_min < config.y_min || data_max > config.y_max) {
      throw ValidationError("explicit y range does not contain all plotted values");
    }
    scale.y_min = config.y_min;
    scale.y_max = config.y_max;
  } else {
    const double span = data_max - data_min;
    const double pad = span > 0.0 ? 0.05 * span : 1.0;
    scale.y_min = data_min - pad;
    scale.y_max = data_max + pad;
  }
  return scale;
}

std::string document_open(const PlotConfig& config) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(config.width)
      << "\" height=\"" << px(config.height) << "\" viewBox=\"0 0 " << px(config.width)
      << " " << px(config.height) << "\" font-family=\"Helvetica, Arial, sans-serif\""
      << " font-size=\"" << px(config.font_size) << "\">\n"
      << "<style>\n"
         ".pt { fill: #2563b0; }\n"
         ".mean { stroke: #c03030; stroke-width: 1.5; }\n"
         ".frame { fill: none; stroke: #555555; }\n"
         "text { fill: #111111; }\n"
         ".label, .xtick, .cond, .pair, .slice { text-anchor: middle; }\n"
         ".ytick, .yname { text-anchor: end; }\n"
         ".runid { font-size: 85%; fill: #333333; }\n"
         "</style>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << px(config.width) << "\" height=\""
      << px(config.height) << "\" fill=\"#ffffff\"/>\n";
  return out.str();
}

void append_y_ticks(std::ostringstream& out, const PlotConfig& config, const YScale& y) {
  for (const double value : {y.y_min, y.y_max}) {
    out << "<text class=\"ytick\" x=\"" << px(config.margin - 5) << "\" y=\""
        << px(y(value) + config.font_size * 0.35) << "\">" << px(value) << "</text>\n";
  }
}

// Points sharing a coded level are fanned out horizontally in order, so
// coincident values stay visible. Offsets depend only on position in the run
// list, never on randomness.
double jitter_offset(std::size_t index_in_level, std::size_t level_count) {
  return (static_cast<double>(index_in_level) -
          (static_cast<double>(level_count) - 1.0) / 2.0) *
         kJitterStep;
}

struct LevelPositions {
  double x_low = 0.0;
  double x_high = 0.0;
};

void append_level_points(std::ostringstream& out, const PlotConfig& config,
                         const YScale& y, const LevelPositions& pos,
                         const std::vector<std::pair<Code, double>>& points) {
  std::size_t n_low = 0, n_high = 0;
  for (const auto& [level, value] : points) {
    (level < 0 ? n_low : n_high) += 1;
  }
  std::size_t i_low = 0, i_high = 0;
  for (const auto& [level, value] : points) {
    double cx;
    if (level < 0) {
      cx = pos.x_low + jitter_offset(i_low++, n_low);
    } else {
      cx = pos.x_high + jitter_offset(i_high++, n_high);
    }
    out << "<circle class=\"pt\" cx=\"" << px(cx) << "\" cy=\"" << px(y(value))
        << "\" r=\"" << px(config.point_radius) << "\"/>\n";
  }
}

}  // namespace

std::string render_main_effects(const PanelData& panels, const PlotConfig& config,
                                std::string_view benchmark_factor) {
  check_config(config);
  if (panels.panels.empty()) {
    throw ValidationError("main-effects figure needs at least one panel");
  }

  // Declaration order, with the designated benchmark factor moved rightmost.
  std::vector<const Panel*> ordered;
  const Panel* benchmark = nullptr;
  for (const auto& panel : panels.panels) {
    if (!benchmark_factor.empty() && panel.factor == benchmark_factor) {
      benchmark = &panel;
    } else {
      ordered.push_back(&panel);
    }
  }
  if (!benchmark_factor.empty()) {
    if (benchmark == nullptr) {
      throw ValidationError("benchmark factor '" + std::string(benchmark_factor) +
                            "' has no panel");
    }
    ordered.push_back(benchmark);
  }

  bool any_point = false;
  double data_min = 0.0, data_max = 0.0;
  for (const auto* panel : ordered) {
    for (const auto& [level, value] : panel->points) {
      if (!any_point) {
        data_min = data_max = value;
        any_point = true;
      }
      data_min = std::min(data_min, value);
      data_max = std::max(data_max, value);
    }
  }
  if (!any_point) {
    throw ValidationError("main-effects figure has no points");
  }

  const YScale y = make_y_scale(config, data_min, data_max);
  const double plot_w = config.width - 2 * config.margin;
  const std::size_t k = ordered.size();
  const double panel_w = (plot_w - kPanelGap * static_cast<double>(k - 1)) /
                         static_cast<double>(k);

  std::ostringstream out;
  out << document_open(config);
  append_y_ticks(out, config, y);

  for (std::size_t p = 0; p < k; ++p) {
    const Panel& panel = *ordered[p];
    const double x0 = config.margin + static_cast<double>(p) * (panel_w + kPanelGap);
    const LevelPositions pos{x0 + 0.25 * panel_w, x0 + 0.75 * panel_w};

    out << "<g class=\"panel\">\n";
    out << "<rect class=\"frame\" x=\"" << px(x0) << "\" y=\"" << px(y.top)
        << "\" width=\"" << px(panel_w) << "\" height=\"" << px(y.bottom - y.top)
        << "\"/>\n";
    out << "<line class=\"mean\" x1=\"" << px(pos.x_low) << "\" y1=\""
        << px(y(panel.mean_low)) << "\" x2=\"" << px(pos.x_high) << "\" y2=\""
        << px(y(panel.mean_high)) << "\"/>\n";
    append_level_points(out, config, y, pos, panel.points);
    out << "<text class=\"xtick\" x=\"" << px(pos.x_low) << "\" y=\""
        << px(y.bottom + config.font_size + 3) << "\">L</text>\n";
    out << "<text class=\"xtick\" x=\"" << px(pos.x_high) << "\" y=\""
        << px(y.bottom + config.font_size + 3) << "\">H</text>\n";
    out << "<text class=\"label\" x=\"" << px(x0 + panel_w / 2) << "\" y=\""
        << px(y.bottom + 2 * config.font_size + 7) << "\">" << esc(panel.factor)
        << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_structured(const StructuredLayout& layout, const PlotConfig& config) {
  check_config(config);

  bool any_point = false;
  double data_min = 0.0, data_max = 0.0;
  for (const auto& cell : layout.cells) {
    for (const auto& [level, value] : cell.points) {
      if (!any_point) {
        data_min = data_max = value;
        any_point = true;
      }
      data_min = std::min(data_min, value);
      data_max = std::max(data_max, value);
    }
  }
  if (!any_point) {
    throw ValidationError("structured figure has no points");
  }

  const YScale y = make_y_scale(config, data_min, data_max);
  const double plot_w = config.width - 2 * config.margin;
  const double panel_w = (plot_w - 2 * kPanelGap - kPairGap) / 4.0;

  std::ostringstream out;
  out << document_open(config);
  append_y_ticks(out, config, y);

  std::array<double, 4> panel_x0{};
  for (std::size_t p = 0; p < 4; ++p) {
    const double pair_extra = p >= 2 ? kPairGap - kPanelGap : 0.0;
    panel_x0[p] = config.margin + static_cast<double>(p) * (panel_w + kPanelGap) + pair_extra;
  }

  // Pair legends: the second conditioner switches between the two pairs.
  for (const std::size_t left : {std::size_t{0}, std::size_t{2}}) {
    const double center = (panel_x0[left] + panel_x0[left + 1] + panel_w) / 2.0;
    out << "<text class=\"pair\" x=\"" << px(center) << "\" y=\""
        << px(config.margin - config.font_size - 8) << "\">" << esc(layout.conditioners[1])
        << "=" << (layout.cells[left].cond2 < 0 ? "L" : "H") << "</text>\n";
  }

  for (std::size_t p = 0; p < 4; ++p) {
    const StructuredCell& cell = layout.cells[p];
    const double x0 = panel_x0[p];
    const LevelPositions pos{x0 + 0.25 * panel_w, x0 + 0.75 * panel_w};

    out << "<g class=\"panel\">\n";
    out << "<text class=\"cond\" x=\"" << px(x0 + panel_w / 2) << "\" y=\""
        << px(config.margin - 5) << "\">" << esc(layout.conditioners[0]) << "="
        << (cell.cond1 < 0 ? "L" : "H") << "</text>\n";
    out << "<rect class=\"frame\" x=\"" << px(x0) << "\" y=\"" << px(y.top)
        << "\" width=\"" << px(panel_w) << "\" height=\"" << px(y.bottom - y.top)
        << "\"/>\n";
    append_level_points(out, config, y, pos, cell.points);
    out << "<text class=\"xtick\" x=\"" << px(pos.x_low) << "\" y=\""
        << px(y.bottom + config.font_size + 3) << "\">L</text>\n";
    out << "<text class=\"xtick\" x=\"" << px(pos.x_high) << "\" y=\""
        << px(y.bottom + config.font_size + 3) << "\">H</text>\n";
    out << "</g>\n";
  }
  out << "<text class=\"label\" x=\"" << px(config.width / 2) << "\" y=\""
      << px(config.height - config.margin + 2 * config.font_size + 7) << "\">"
      << esc(layout.focal) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string render_design_geometry(const DesignMatrix& design,
                                   const std::array<std::string, 3>& axes,
                                   std::string_view slice_factor,
                                   const PlotConfig& config) {
  check_config(config);
  ensure_well_formed(design);

  const std::size_t slice = design.factor_index(slice_factor);
  std::vector<std::size_t> plane;  // x axis first, then y axis
  for (const auto& name : axes) {
    const std::size_t f = design.factor_index(name);
    if (f != slice) plane.push_back(f);
  }
  if (plane.size() != 2) {
    throw ValidationError("geometry axes must be three distinct factors including the slice");
  }
  if (!design.factors[slice].is_two_level()) {
    throw ValidationError("slice factor must be two-level");
  }
  const std::size_t x_axis = plane[0];
  const std::size_t y_axis = plane[1];

  const double plot_w = config.width - 2 * config.margin;
  const double plot_h = config.height - 2 * config.margin;
  const double pair_gap = 40.0;
  const double side = std::min((plot_w - pair_gap) / 2.0, plot_h);
  const double top = config.margin + (plot_h - side) / 2.0;

  std::ostringstream out;
  out << document_open(config);

  // Square origins: low slice level on the left.
  std::map<Code, double> square_x0{
      {-1, config.margin + ((plot_w - pair_gap) / 2.0 - side) / 2.0},
      {+1, config.margin + (plot_w + pair_gap) / 2.0 + ((plot_w - pair_gap) / 2.0 - side) / 2.0}};

  for (const Code level : {-1, +1}) {
    const double x0 = square_x0[level];
    out << "<g class=\"square\">\n";
    out << "<text class=\"slice\" x=\"" << px(x0 + side / 2) << "\" y=\""
        << px(top - config.font_size) << "\">" << esc(design.factors[slice].name) << "="
        << esc(design.factors[slice].level_text(level)) << "</text>\n";
    out << "<rect class=\"frame\" x=\"" << px(x0) << "\" y=\"" << px(top)
        << "\" width=\"" << px(side) << "\" height=\"" << px(side) << "\"/>\n";
    out << "<text class=\"label\" x=\"" << px(x0 + side / 2) << "\" y=\""
        << px(top + side + config.font_size + 6) << "\">" << esc(design.factors[x_axis].name)
        << "</text>\n";
    out << "<text class=\"yname\" x=\"" << px(x0 - 6) << "\" y=\""
        << px(top + side / 2 + config.font_size * 0.35) << "\">"
        << esc(design.factors[y_axis].name) << "</text>\n";
    out << "</g>\n";
  }

  // Coded (-1..+1) positions inside the square; +1 on the right / at the top.
  std::map<std::tuple<Code, Code, Code>, int> occupancy;
  for (const auto& run : design.runs) {
    const Code s = run.settings[slice];
    const Code cx_code = run.settings[x_axis];
    const Code cy_code = run.settings[y_axis];
    const int stack = occupancy[{s, cx_code, cy_code}]++;
    const double x0 = square_x0[s];
    const double cx = x0 + (static_cast<double>(cx_code) + 1.0) / 2.0 * side +
                      static_cast<double>(stack) * (2.0 * config.point_radius + 2.0);
    const double cy = top + (1.0 - (static_cast<double>(cy_code) + 1.0) / 2.0) * side;
    out << "<g class=\"run\">\n";
    out << "<circle class=\"pt\" cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\""
        << px(config.point_radius) << "\"/>\n";
    out << "<text class=\"runid\" x=\"" << px(cx + config.point_radius + 2) << "\" y=\""
        << px(cy - config.point_radius - 2) << "\">" << run.id << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace doe

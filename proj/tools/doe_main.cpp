// Command-line front end: design generation, run-order randomization,
// response simulation, screening analysis, and SVG figures. Every subcommand
// reads its declared inputs, writes its outputs whole, and prints a one-line
// summary. Exit codes: 0 success, 1 validation/parse error, 2 I/O error.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "doe/design.hpp"
#include "doe/effects.hpp"
#include "doe/error.hpp"
#include "doe/io.hpp"
#include "doe/screening.hpp"
#include "doe/simulate.hpp"
#include "doe/svg_plots.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) parts.push_back(part);
  return parts;
}

doe::Code parse_code_token(const std::string& token) {
  if (token == "L") return -1;
  if (token == "H") return +1;
  if (token == "-1") return -1;
  if (token == "0") return 0;
  if (token == "1" || token == "+1") return +1;
  throw doe::ValidationError("level '" + token + "' must be one of -1, 0, 1, L, H");
}

// Factor list helper: names from --factors, upgraded to three-level when
// listed in --three-level or (for ofat) when a 0 code is used for them.
std::vector<doe::FactorSpec> make_factors(const std::string& names_csv,
                                          const std::string& three_level_csv) {
  const auto three = split_list(three_level_csv);
  std::vector<doe::FactorSpec> factors;
  for (const auto& name : split_list(names_csv)) {
    const bool is_three =
        std::find(three.begin(), three.end(), name) != three.end();
    factors.push_back(is_three ? doe::FactorSpec::three_level(name)
                               : doe::FactorSpec::two_level(name));
  }
  return factors;
}

doe::DesignMatrix read_design_with_labels(const fs::path& path) {
  doe::DesignMatrix design = doe::read_design_csv(path);
  const fs::path sidecar = doe::label_sidecar_path(path);
  if (fs::exists(sidecar)) {
    std::ifstream in(sidecar);
    doe::apply_labels_json(design, in);
  }
  return design;
}

doe::ExperimentData read_results_with_labels(const fs::path& path,
                                             const std::string& response) {
  doe::ExperimentData data = doe::read_results_csv(path, response);
  const fs::path sidecar = doe::label_sidecar_path(path);
  if (fs::exists(sidecar)) {
    std::ifstream in(sidecar);
    doe::apply_labels_json(data.design, in);
  }
  return data;
}

// Writes the CSV plus a label sidecar when any factor carries labels.
// Returns a note for the summary line.
std::string write_design_with_labels(const fs::path& path, const doe::DesignMatrix& design) {
  doe::write_file(path, doe::design_to_csv(design));
  const std::string labels = doe::labels_to_json(design);
  if (labels.empty()) return "";
  const fs::path sidecar = doe::label_sidecar_path(path);
  doe::write_file(sidecar, labels);
  return " (labels: " + sidecar.string() + ")";
}

struct DesignArgs {
  std::string factors;
  std::string three_level;
  std::string baseline;
  std::string excursions;
  std::string cross;
  std::string output;
};

void run_design_full(const DesignArgs& args) {
  doe::DesignMatrix design =
      doe::full_factorial(make_factors(args.factors, args.three_level));
  const std::string note = write_design_with_labels(args.output, design);
  std::cout << "wrote " << design.run_count() << "-run full factorial over "
            << design.factor_count() << " factors to " << args.output << note << "\n";
}

void run_design_ofat(DesignArgs args) {
  std::vector<doe::FactorSpec> factors = make_factors(args.factors, args.three_level);

  std::vector<doe::Code> baseline;
  for (const auto& token : split_list(args.baseline)) {
    baseline.push_back(parse_code_token(token));
  }
  std::vector<doe::Excursion> excursions;
  for (const auto& entry : split_list(args.excursions)) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw doe::ValidationError("excursion '" + entry + "' must look like NAME=LEVEL");
    }
    const std::string name = entry.substr(0, eq);
    const doe::Code level = parse_code_token(entry.substr(eq + 1));
    std::size_t index = factors.size();
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (factors[f].name == name) index = f;
    }
    if (index == factors.size()) {
      throw doe::ValidationError("excursion names unknown factor '" + name + "'");
    }
    excursions.push_back({index, level});
  }

  // A 0 anywhere in a factor's codes upgrades it to three-level.
  for (std::size_t f = 0; f < factors.size(); ++f) {
    bool center = f < baseline.size() && baseline[f] == 0;
    for (const auto& excursion : excursions) {
      center = center || (excursion.factor == f && excursion.level == 0);
    }
    if (center && factors[f].is_two_level()) {
      factors[f] = doe::FactorSpec::three_level(factors[f].name);
    }
  }

  doe::DesignMatrix design = doe::ofat_design(std::move(factors), baseline, excursions);
  if (!args.cross.empty()) {
    design = doe::cross_with_factor(design, doe::FactorSpec::two_level(args.cross));
  }
  const std::string note = write_design_with_labels(args.output, design);
  std::cout << "wrote " << design.run_count() << "-run one-factor-at-a-time plan over "
            << design.factor_count() << " factors to " << args.output << note << "\n";
}

void run_design_pb12(const DesignArgs& args) {
  doe::DesignMatrix design = doe::pb12_design(split_list(args.factors));
  const std::string note = write_design_with_labels(args.output, design);
  std::cout << "wrote 12-run screening design over " << design.factor_count()
            << " factors to " << args.output << note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level experiment designs: generation, simulation, screening, figures"};
  app.require_subcommand(1);

  // ---- design ----
  auto* design_cmd = app.add_subcommand("design", "Generate a design matrix CSV");
  design_cmd->require_subcommand(1);
  DesignArgs design_args;

  auto* full_cmd = design_cmd->add_subcommand("full", "Full factorial (all combinations)");
  full_cmd->add_option("--factors", design_args.factors, "Comma-separated factor names")
      ->required();
  full_cmd->add_option("--three-level", design_args.three_level,
                       "Factors taking levels -1,0,+1 instead of -1,+1");
  full_cmd->add_option("-o,--output", design_args.output, "Output CSV path")->required();
  full_cmd->callback([&] { run_design_full(design_args); });

  auto* ofat_cmd =
      design_cmd->add_subcommand("ofat", "Baseline plus one-factor excursions");
  ofat_cmd->add_option("--factors", design_args.factors, "Comma-separated factor names")
      ->required();
  ofat_cmd->add_option("--three-level", design_args.three_level,
                       "Factors taking levels -1,0,+1");
  ofat_cmd
      ->add_option("--baseline", design_args.baseline,
                   "Baseline codes, one per factor (use --baseline=-1,0 form)")
      ->required();
  ofat_cmd
      ->add_option("--excursions", design_args.excursions,
                   "Comma-separated NAME=LEVEL moves off the baseline")
      ->required();
  ofat_cmd->add_option("--cross", design_args.cross,
                       "Duplicate the plan across both levels of this new factor");
  ofat_cmd->add_option("-o,--output", design_args.output, "Output CSV path")->required();
  ofat_cmd->callback([&] { run_design_ofat(design_args); });

  auto* pb12_cmd = design_cmd->add_subcommand(
      "pb12", "12-run Plackett-Burman screening design (up to 11 factors)");
  pb12_cmd->add_option("--factors", design_args.factors, "Comma-separated factor names")
      ->required();
  pb12_cmd->add_option("-o,--output", design_args.output, "Output CSV path")->required();
  pb12_cmd->callback([&] { run_design_pb12(design_args); });

  // ---- randomize ----
  auto* randomize_cmd =
      app.add_subcommand("randomize", "Shuffle run order with an explicit seed");
  std::string randomize_input, randomize_output;
  std::optional<std::uint64_t> randomize_seed;
  randomize_cmd->add_option("input", randomize_input, "Design CSV")->required();
  randomize_cmd->add_option("--seed", randomize_seed, "Permutation seed (required)");
  randomize_cmd->add_option("-o,--output", randomize_output, "Output CSV path")->required();
  randomize_cmd->callback([&] {
    if (!randomize_seed) {
      throw doe::ValidationError(
          "randomize needs an explicit --seed so the run order is reproducible");
    }
    const doe::DesignMatrix design = read_design_with_labels(randomize_input);
    const doe::DesignMatrix shuffled = doe::randomize_order(design, *randomize_seed);
    const std::string note = write_design_with_labels(randomize_output, shuffled);
    std::cout << "wrote randomized order of " << shuffled.run_count() << " runs (seed "
              << *randomize_seed << ") to " << randomize_output << note << "\n";
  });

  // ---- simulate ----
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Generate responses for a design from a model JSON");
  std::string simulate_input, simulate_model, simulate_output;
  std::optional<std::uint64_t> simulate_seed;
  simulate_cmd->add_option("input", simulate_input, "Design CSV")->required();
  simulate_cmd->add_option("--model", simulate_model, "Model config JSON")->required();
  simulate_cmd->add_option("--seed", simulate_seed, "Noise seed (overrides the model's)");
  simulate_cmd->add_option("-o,--output", simulate_output, "Output results CSV")->required();
  simulate_cmd->callback([&] {
    const doe::DesignMatrix design = read_design_with_labels(simulate_input);
    doe::SimModel model = doe::read_model_json(simulate_model);
    if (simulate_seed) model.seed = *simulate_seed;
    const doe::ExperimentData data = doe::simulate_response(design, model);
    doe::write_file(simulate_output, doe::results_to_csv(data, model.round_decimals));
    const std::string labels = doe::labels_to_json(design);
    std::string note;
    if (!labels.empty()) {
      const fs::path sidecar = doe::label_sidecar_path(simulate_output);
      doe::write_file(sidecar, labels);
      note = " (labels: " + sidecar.string() + ")";
    }
    std::cout << "wrote " << data.response.size() << " simulated responses to "
              << simulate_output << note << "\n";
  });

  // ---- analyze ----
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Estimate effects and flag active factors");
  std::string analyze_input, analyze_output, analyze_summary_out;
  std::string analyze_response = "Resp";
  double analyze_threshold = doe::kDefaultRelativeThreshold;
  double analyze_floor = 0.0;
  analyze_cmd->add_option("input", analyze_input, "Results CSV")->required();
  analyze_cmd->add_option("--response", analyze_response, "Response column name");
  analyze_cmd->add_option("--threshold", analyze_threshold,
                          "Relative active threshold in (0,1)");
  analyze_cmd->add_option("--floor", analyze_floor, "Absolute threshold floor");
  analyze_cmd->add_option("-o,--output", analyze_output, "Report JSON path")->required();
  analyze_cmd->add_option("--summary-out", analyze_summary_out,
                          "Also write the text summary to this path");
  analyze_cmd->callback([&] {
    const doe::ExperimentData data =
        read_results_with_labels(analyze_input, analyze_response);
    const doe::ScreeningReport report =
        doe::screen(data, analyze_threshold, analyze_floor);
    doe::write_file(analyze_output, doe::report_to_json(report));
    const std::string summary = doe::report_summary_text(report);
    if (!analyze_summary_out.empty()) doe::write_file(analyze_summary_out, summary);
    std::cout << summary;
    std::cout << "wrote screening report to " << analyze_output << "\n";
  });

  // ---- plot ----
  auto* plot_cmd = app.add_subcommand("plot", "Render an SVG figure");
  plot_cmd->require_subcommand(1);
  std::string plot_input, plot_output;
  std::string plot_response = "Resp";
  doe::PlotConfig plot_config;
  const auto add_common_plot_options = [&](CLI::App* cmd, bool with_response) {
    cmd->add_option("input", plot_input, "Input CSV")->required();
    if (with_response) {
      cmd->add_option("--response", plot_response, "Response column name");
    }
    cmd->add_option("--width", plot_config.width, "Figure width in pixels");
    cmd->add_option("--height", plot_config.height, "Figure height in pixels");
    cmd->add_option("-o,--output", plot_output, "Output SVG path")->required();
  };

  auto* main_effects_cmd = plot_cmd->add_subcommand(
      "main-effects", "Per-factor panels of every run plus level-mean lines");
  std::string plot_benchmark;
  add_common_plot_options(main_effects_cmd, true);
  main_effects_cmd->add_option("--benchmark", plot_benchmark,
                               "Factor placed rightmost as the reference panel");
  main_effects_cmd->callback([&] {
    const doe::ExperimentData data = read_results_with_labels(plot_input, plot_response);
    const doe::PanelData panels = doe::main_effects_panels(data);
    doe::write_file(plot_output,
                    doe::render_main_effects(panels, plot_config, plot_benchmark));
    std::cout << "wrote main-effects figure (" << panels.panels.size() << " panels) to "
              << plot_output << "\n";
  });

  auto* structured_cmd = plot_cmd->add_subcommand(
      "structured", "Focal-factor panels at all four conditioner-level pairs");
  std::string plot_focal, plot_conditioners;
  add_common_plot_options(structured_cmd, true);
  structured_cmd->add_option("--focal", plot_focal, "Focal factor")->required();
  structured_cmd
      ->add_option("--conditioners", plot_conditioners,
                   "Two conditioning factors, comma-separated")
      ->required();
  structured_cmd->callback([&] {
    const auto conditioners = split_list(plot_conditioners);
    if (conditioners.size() != 2) {
      throw doe::ValidationError("--conditioners needs exactly two factor names");
    }
    const doe::ExperimentData data = read_results_with_labels(plot_input, plot_response);
    const doe::StructuredLayout layout = doe::structured_plot_layout(
        data, plot_focal, {conditioners[0], conditioners[1]});
    doe::write_file(plot_output, doe::render_structured(layout, plot_config));
    std::cout << "wrote structured figure (focal " << plot_focal << ") to " << plot_output
              << "\n";
  });

  auto* geometry_cmd = plot_cmd->add_subcommand(
      "geometry", "The design as two squares, one per level of the slice factor");
  std::string plot_axes, plot_slice;
  add_common_plot_options(geometry_cmd, false);
  geometry_cmd
      ->add_option("--axes", plot_axes, "Three factor names: x, y, and the slice")
      ->required();
  geometry_cmd->add_option("--slice", plot_slice, "Which of the axes splits the squares")
      ->required();
  geometry_cmd->callback([&] {
    const auto axes = split_list(plot_axes);
    if (axes.size() != 3) {
      throw doe::ValidationError("--axes needs exactly three factor names");
    }
    const doe::DesignMatrix design = read_design_with_labels(plot_input);
    doe::write_file(plot_output,
                    doe::render_design_geometry(design, {axes[0], axes[1], axes[2]},
                                                plot_slice, plot_config));
    std::cout << "wrote design geometry figure to " << plot_output << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const doe::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const doe::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

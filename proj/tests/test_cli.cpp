// End-to-end tests of the command-line tool: each case invokes the built
// binary as a subprocess and inspects exit codes, streams, and output files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doe/io.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Scratch directory shared by the whole binary; per-case subdirectories.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) {
    dir = fs::temp_directory_path() /
          ("doe_cli_test_" + std::to_string(::getpid())) / name;
    fs::create_directories(dir);
  }
  fs::path operator/(const std::string& leaf) const { return dir / leaf; }
};

CliResult run_cli(const Scratch& scratch, const std::string& args) {
  const fs::path out_path = scratch / "_stdout.txt";
  const fs::path err_path = scratch / "_stderr.txt";
  const std::string command = std::string(DOE_CLI_PATH) + " " + args + " >" +
                              out_path.string() + " 2>" + err_path.string();
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("design pb12 writes the cyclic 12-run matrix") {
  Scratch scratch("pb12");
  const fs::path plan = scratch / "plan.csv";
  const CliResult result =
      run_cli(scratch, "design pb12 --factors X,A,B,C,D,E -o " + plan.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("12-run screening design over 6 factors") != std::string::npos);

  const auto lines = lines_of(slurp(plan));
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "X,A,B,C,D,E");
  CHECK(lines[1] == "1,1,-1,1,1,1");     // generator row
  CHECK(lines[2] == "-1,1,1,-1,1,1");    // shifted right once
  CHECK(lines[12] == "-1,-1,-1,-1,-1,-1");
}

TEST_CASE("design full enumerates combinations in canonical order") {
  Scratch scratch("full");
  const fs::path plan = scratch / "plan.csv";
  const CliResult result = run_cli(
      scratch, "design full --factors a,b --three-level b -o " + plan.string());
  CHECK(result.exit_code == 0);
  CHECK(slurp(plan) == "a,b\n-1,-1\n-1,0\n-1,1\n1,-1\n1,0\n1,1\n");
}

TEST_CASE("design ofat with --cross duplicates the excursion block per level") {
  Scratch scratch("ofat");
  const fs::path plan = scratch / "plan.csv";
  const CliResult result = run_cli(
      scratch, "design ofat --factors Q,T --three-level T --baseline=-1,0 "
               "--excursions Q=1,T=-1,T=1 --cross M -o " + plan.string());
  CHECK(result.exit_code == 0);
  CHECK(slurp(plan) ==
        "Q,T,M\n"
        "-1,0,-1\n1,0,-1\n-1,-1,-1\n-1,1,-1\n"
        "-1,0,1\n1,0,1\n-1,-1,1\n-1,1,1\n");

  // Unknown excursion name is a validation failure.
  const CliResult bad = run_cli(
      scratch, "design ofat --factors Q,T --baseline=-1,-1 --excursions Z=1 -o " +
                   (scratch / "bad.csv").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("unknown factor 'Z'") != std::string::npos);
}

TEST_CASE("analyze flags the three active factors of the screening fixture") {
  Scratch scratch("analyze");
  const fs::path report_path = scratch / "report.json";
  const fs::path summary_path = scratch / "summary.txt";
  const CliResult result =
      run_cli(scratch, std::string("analyze ") + FIXTURE_CSV_PATH + " -o " +
                           report_path.string() + " --summary-out " +
                           summary_path.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("active: X, A, B") != std::string::npos);
  CHECK(result.out.find("wrote screening report") != std::string::npos);

  const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
  CHECK(report["active"] == nlohmann::json({"X", "A", "B"}));
  CHECK(report["effects"][0]["target"] == "X");
  CHECK(fixtures::near(report["threshold_used"].get<double>(),
                       fixtures::oracle::kThreshold, 1e-9));

  // The written summary matches what was printed (the stdout adds a trailer).
  const std::string summary = slurp(summary_path);
  CHECK(result.out.find(summary) == 0);

  // A raised floor prunes the active list.
  const CliResult floored =
      run_cli(scratch, std::string("analyze ") + FIXTURE_CSV_PATH + " --floor 7 -o " +
                           report_path.string());
  CHECK(floored.exit_code == 0);
  const nlohmann::json floored_report = nlohmann::json::parse(slurp(report_path));
  CHECK(floored_report["active"] == nlohmann::json({"X", "A"}));
  CHECK(floored_report["threshold_used"] == 7.0);
}

TEST_CASE("randomize requires a seed and is reproducible given one") {
  Scratch scratch("randomize");
  const fs::path plan = scratch / "plan.csv";
  REQUIRE(run_cli(scratch, "design pb12 --factors X,A,B,C,D,E -o " + plan.string())
              .exit_code == 0);

  const CliResult unseeded =
      run_cli(scratch, "randomize " + plan.string() + " -o " +
                           (scratch / "shuffled.csv").string());
  CHECK(unseeded.exit_code == 1);
  CHECK(unseeded.err.find("--seed") != std::string::npos);

  const fs::path first = scratch / "a.csv";
  const fs::path second = scratch / "b.csv";
  const fs::path third = scratch / "c.csv";
  CHECK(run_cli(scratch, "randomize " + plan.string() + " --seed 7 -o " +
                             first.string()).exit_code == 0);
  CHECK(run_cli(scratch, "randomize " + plan.string() + " --seed 7 -o " +
                             second.string()).exit_code == 0);
  CHECK(run_cli(scratch, "randomize " + plan.string() + " --seed 8 -o " +
                             third.string()).exit_code == 0);

  const std::string bytes_a = slurp(first);
  CHECK(bytes_a == slurp(second));
  CHECK(bytes_a != slurp(third));

  // Same rows, different order: sorted data lines agree with the plan's.
  auto sorted_rows = [](const std::string& text) {
    auto all = lines_of(text);
    std::vector<std::string> rows(all.begin() + 1, all.end());
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  CHECK(sorted_rows(bytes_a) == sorted_rows(slurp(plan)));
  CHECK(lines_of(bytes_a)[0] == "X,A,B,C,D,E");
}

TEST_CASE("simulate produces the closed-form responses when noise is off") {
  Scratch scratch("simulate");
  const fs::path plan = scratch / "plan.csv";
  REQUIRE(run_cli(scratch, "design pb12 --factors X,A,B -o " + plan.string())
              .exit_code == 0);

  const fs::path model = scratch / "model.json";
  doe::write_file(model, R"({"intercept": 100,
                             "main": {"X": 10, "A": 3, "B": 2},
                             "interactions": [{"a": "X", "b": "B", "coef": 3}]})");
  const fs::path results = scratch / "results.csv";
  const CliResult result =
      run_cli(scratch, "simulate " + plan.string() + " --model " + model.string() +
                           " -o " + results.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("wrote 12 simulated responses") != std::string::npos);

  const doe::ExperimentData data = doe::read_results_csv(results);
  REQUIRE(data.response.size() == 12);
  for (std::size_t r = 0; r < 12; ++r) {
    const auto& s = data.design.runs[r].settings;
    const double expected = 100.0 + 10.0 * s[0] + 3.0 * s[1] + 2.0 * s[2] +
                            3.0 * s[0] * s[2];
    CHECK(data.response[r] == expected);
  }
}

TEST_CASE("the full pipeline is byte-for-byte repeatable") {
  Scratch left("pipeline_left");
  Scratch right("pipeline_right");
  const auto run_pipeline = [](const Scratch& scratch) {
    const fs::path plan = scratch / "plan.csv";
    const fs::path model = scratch / "model.json";
    const fs::path results = scratch / "results.csv";
    const fs::path report = scratch / "report.json";
    const fs::path figure = scratch / "effects.svg";
    REQUIRE(run_cli(scratch, "design pb12 --factors X,A,B,C,D,E -o " + plan.string())
                .exit_code == 0);
    doe::write_file(model, R"({"intercept": 100, "main": {"X": 10, "A": 3, "B": 2},
                               "interactions": [{"a": "X", "b": "B", "coef": 3}],
                               "sd": 3, "round": 1, "seed": 11})");
    REQUIRE(run_cli(scratch, "simulate " + plan.string() + " --model " +
                                 model.string() + " -o " + results.string())
                .exit_code == 0);
    REQUIRE(run_cli(scratch, "analyze " + results.string() + " -o " + report.string())
                .exit_code == 0);
    REQUIRE(run_cli(scratch, "plot main-effects " + results.string() +
                                 " --benchmark X -o " + figure.string())
                .exit_code == 0);
    return std::make_tuple(slurp(results), slurp(report), slurp(figure));
  };
  CHECK(run_pipeline(left) == run_pipeline(right));
}

TEST_CASE("label sidecars travel through simulate and into figure captions") {
  Scratch scratch("labels");
  const fs::path plan = scratch / "plan.csv";
  REQUIRE(run_cli(scratch, "design full --factors T,Q,M -o " + plan.string())
              .exit_code == 0);
  doe::write_file(scratch / "plan.labels.json",
                  R"({"M": {"-1": "without", "1": "with"}})");

  const fs::path figure = scratch / "geometry.svg";
  const CliResult plotted =
      run_cli(scratch, "plot geometry " + plan.string() +
                           " --axes T,Q,M --slice M -o " + figure.string());
  CHECK(plotted.exit_code == 0);
  const std::string svg = slurp(figure);
  CHECK(svg.find(">M=without</text>") != std::string::npos);
  CHECK(svg.find(">M=with</text>") != std::string::npos);

  // simulate copies the sidecar next to its results file.
  const fs::path model = scratch / "model.json";
  doe::write_file(model, R"({"intercept": 5})");
  const fs::path results = scratch / "results.csv";
  REQUIRE(run_cli(scratch, "simulate " + plan.string() + " --model " + model.string() +
                               " -o " + results.string())
              .exit_code == 0);
  CHECK(fs::exists(scratch / "results.labels.json"));
}

TEST_CASE("the structured figure subcommand validates its conditioners") {
  Scratch scratch("structured");
  const fs::path figure = scratch / "structured.svg";
  const CliResult good =
      run_cli(scratch, std::string("plot structured ") + FIXTURE_CSV_PATH +
                           " --focal X --conditioners A,B -o " + figure.string());
  CHECK(good.exit_code == 0);
  CHECK(slurp(figure).rfind("<?xml", 0) == 0);

  const CliResult bad =
      run_cli(scratch, std::string("plot structured ") + FIXTURE_CSV_PATH +
                           " --focal X --conditioners A -o " + figure.string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("exactly two") != std::string::npos);
}

TEST_CASE("failure modes map to the documented exit codes") {
  Scratch scratch("failures");

  // Missing input file: I/O error, exit 2.
  const CliResult missing =
      run_cli(scratch, "analyze " + (scratch / "nope.csv").string() + " -o " +
                           (scratch / "r.json").string());
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("error:") != std::string::npos);

  // Unknown option / missing required option / no subcommand: usage errors.
  CHECK(run_cli(scratch, "design pb12 --factors X --bogus -o " +
                             (scratch / "p.csv").string()).exit_code == 1);
  CHECK(run_cli(scratch, "design pb12 -o " + (scratch / "p.csv").string()).exit_code ==
        1);
  CHECK(run_cli(scratch, "").exit_code == 1);

  // Malformed CSV content: parse error, exit 1.
  doe::write_file(scratch / "bad.csv", "X,Resp\n-1\n");
  const CliResult malformed =
      run_cli(scratch, "analyze " + (scratch / "bad.csv").string() + " -o " +
                           (scratch / "r.json").string());
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.err.find("row 2") != std::string::npos);

  // Too many factors for the screening design: capacity error, exit 1.
  const CliResult overflow =
      run_cli(scratch, "design pb12 --factors a,b,c,d,e,f,g,h,i,j,k,l -o " +
                           (scratch / "p.csv").string());
  CHECK(overflow.exit_code == 1);

  // --help is not an error.
  const CliResult help = run_cli(scratch, "--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("design") != std::string::npos);
}

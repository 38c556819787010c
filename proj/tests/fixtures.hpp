// Shared test fixtures: the two small worked designs, the 12-run screening
// results table, the reference generating model, and oracle values computed
// independently by brute-force group averaging of the fixture rows (frozen
// here as exact fractions of the column sums).
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "doe/design.hpp"
#include "doe/effects.hpp"
#include "doe/simulate.hpp"

namespace fixtures {

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---- The OFAT plan: factors M, Q, T; T has a center level. Run ids 1-8. ----
inline doe::DesignMatrix table1_design() {
  doe::FactorSpec m = doe::FactorSpec::two_level("M");
  m.labels = {{-1, "without"}, {+1, "with"}};
  doe::FactorSpec q = doe::FactorSpec::two_level("Q");
  q.labels = {{-1, "1"}, {+1, "2"}};
  doe::FactorSpec t = doe::FactorSpec::three_level("T");
  t.labels = {{-1, "low"}, {0, "nominal"}, {+1, "high"}};

  doe::DesignMatrix design;
  design.factors = {m, q, t};
  design.kind = doe::DesignKind::custom;
  design.runs = {
      {1, {+1, -1, 0}}, {2, {+1, +1, 0}}, {3, {+1, -1, -1}}, {4, {+1, -1, +1}},
      {5, {-1, -1, 0}}, {6, {-1, +1, 0}}, {7, {-1, -1, -1}}, {8, {-1, -1, +1}},
  };
  return design;
}

// ---- The 2x2x2 factorial plan on the same factors. Run ids 9-16. ----
inline doe::DesignMatrix table2_design() {
  doe::FactorSpec m = doe::FactorSpec::two_level("M");
  m.labels = {{-1, "without"}, {+1, "with"}};
  doe::FactorSpec q = doe::FactorSpec::two_level("Q");
  q.labels = {{-1, "1"}, {+1, "2"}};
  doe::FactorSpec t = doe::FactorSpec::two_level("T");
  t.labels = {{-1, "low"}, {+1, "high"}};

  doe::DesignMatrix design;
  design.factors = {m, q, t};
  design.kind = doe::DesignKind::custom;
  design.runs = {
      {9, {+1, -1, -1}},  {10, {+1, +1, -1}}, {11, {+1, -1, +1}}, {12, {+1, +1, +1}},
      {13, {-1, -1, -1}}, {14, {-1, +1, -1}}, {15, {-1, -1, +1}}, {16, {-1, +1, +1}},
  };
  return design;
}

// ---- The 12-run screening results (6 two-level factors + response). ----
inline doe::ExperimentData screening_results() {
  doe::DesignMatrix design;
  for (const char* name : {"X", "A", "B", "C", "D", "E"}) {
    design.factors.push_back(doe::FactorSpec::two_level(name));
  }
  design.kind = doe::DesignKind::custom;
  design.runs = {
      {1, {-1, -1, -1, +1, -1, -1}}, {2, {-1, -1, +1, -1, -1, +1}},
      {3, {-1, -1, +1, -1, +1, +1}}, {4, {-1, +1, -1, -1, +1, -1}},
      {5, {-1, +1, -1, +1, +1, +1}}, {6, {-1, +1, +1, +1, -1, -1}},
      {7, {+1, -1, -1, -1, +1, -1}}, {8, {+1, -1, -1, +1, -1, +1}},
      {9, {+1, -1, +1, +1, +1, -1}}, {10, {+1, +1, -1, -1, -1, +1}},
      {11, {+1, +1, +1, -1, -1, -1}}, {12, {+1, +1, +1, +1, +1, +1}},
  };
  return doe::ExperimentData{
      design,
      {91.5, 85.8, 91.7, 95.8, 95.5, 93.6, 97.7, 99.3, 114.8, 104.7, 116.5, 118.8},
      "Resp"};
}

// Canonical CSV bytes of the same table (equal to tests/data fixture file).
inline const char* screening_results_csv() {
  return "X,A,B,C,D,E,Resp\n"
         "-1,-1,-1,1,-1,-1,91.5\n"
         "-1,-1,1,-1,-1,1,85.8\n"
         "-1,-1,1,-1,1,1,91.7\n"
         "-1,1,-1,-1,1,-1,95.8\n"
         "-1,1,-1,1,1,1,95.5\n"
         "-1,1,1,1,-1,-1,93.6\n"
         "1,-1,-1,-1,1,-1,97.7\n"
         "1,-1,-1,1,-1,1,99.3\n"
         "1,-1,1,1,1,-1,114.8\n"
         "1,1,-1,-1,-1,1,104.7\n"
         "1,1,1,-1,-1,-1,116.5\n"
         "1,1,1,1,1,1,118.8\n";
}

// The same rows using the published L/H tokens.
inline const char* screening_results_lh_csv() {
  return "X,A,B,C,D,E,Resp\n"
         "L,L,L,H,L,L,91.5\n"
         "L,L,H,L,L,H,85.8\n"
         "L,L,H,L,H,H,91.7\n"
         "L,H,L,L,H,L,95.8\n"
         "L,H,L,H,H,H,95.5\n"
         "L,H,H,H,L,L,93.6\n"
         "H,L,L,L,H,L,97.7\n"
         "H,L,L,H,L,H,99.3\n"
         "H,L,H,H,H,L,114.8\n"
         "H,H,L,L,L,H,104.7\n"
         "H,H,H,L,L,L,116.5\n"
         "H,H,H,H,H,H,118.8\n";
}

// The reference generating model: intercept 100, X:10, A:3, B:2, X*B:3.
inline doe::SimModel reference_model(double sd, std::optional<std::uint64_t> seed) {
  doe::SimModel model;
  model.intercept = 100.0;
  model.main_coefs = {{"X", 10.0}, {"A", 3.0}, {"B", 2.0}};
  model.interaction_coefs = {{"X", "B", 3.0}};
  model.noise_sd = sd;
  model.round_decimals = 1;
  model.seed = seed;
  return model;
}

// ---- Oracle values: exact fractions of the fixture column sums. ----
namespace oracle {

// Main-effect mean differences (mean at +1 minus mean at -1).
inline constexpr double kMainX = 97.9 / 6.0;   // 16.31666...
inline constexpr double kMainA = 44.1 / 6.0;   //  7.35
inline constexpr double kMainB = 36.7 / 6.0;   //  6.11666...
inline constexpr double kMainC = 21.3 / 6.0;   //  3.55
inline constexpr double kMainD = 22.9 / 6.0;   //  3.81666...
inline constexpr double kMainE = -14.1 / 6.0;  // -2.35

inline constexpr double kMeanLowX = 553.9 / 6.0;    //  92.31666...
inline constexpr double kMeanHighX = 651.8 / 6.0;   // 108.63333...
inline constexpr double kMeanLowA = 580.8 / 6.0;    //  96.80
inline constexpr double kMeanHighA = 624.9 / 6.0;   // 104.15
inline constexpr double kMeanLowB = 584.5 / 6.0;    //  97.41666...
inline constexpr double kMeanHighB = 621.2 / 6.0;   // 103.53333...

// Product-column contrast for X*B.
inline constexpr double kInteractionXB = 60.1 / 6.0;  // 10.01666...

// Conditional slopes of X within B.
inline constexpr double kCondXatBHigh = 79.0 / 3.0;  // 26.33333...
inline constexpr double kCondXatBLow = 18.9 / 3.0;   //  6.30

// Screening under the one-third rule.
inline constexpr double kThreshold = 97.9 / 18.0;  // 5.43888...

inline constexpr double kGrandMean = 1205.7 / 12.0;  // 100.475

}  // namespace oracle

}  // namespace fixtures

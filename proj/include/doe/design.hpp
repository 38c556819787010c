#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace doe {

// Coded factor level: one of -1, 0, +1. Raw engineering units (temperatures,
// batch numbers) live only in FactorSpec labels.
using Code = int;

// A named experimental factor with its coded levels and optional display
// labels, e.g. batch "1"/"2" for -1/+1.
struct FactorSpec {
  std::string name;
  std::vector<Code> levels;             // ascending; {-1,+1} or {-1,0,+1}
  std::map<Code, std::string> labels;   // optional coded value -> display text

  static FactorSpec two_level(std::string name);
  static FactorSpec three_level(std::string name);

  bool has_level(Code level) const;
  bool is_two_level() const { return levels.size() == 2; }

  // Display text for a level: the label when present, else "-1"/"0"/"+1".
  std::string level_text(Code level) const;
};

// One experimental run: an id plus one coded setting per factor.
struct Run {
  int id = 0;
  std::vector<Code> settings;
};

enum class DesignKind { ofat, full_factorial, pb12, custom };

std::string_view to_string(DesignKind kind);

// An ordered list of runs over a factor list.
struct DesignMatrix {
  std::vector<FactorSpec> factors;
  std::vector<Run> runs;
  DesignKind kind = DesignKind::custom;

  std::size_t factor_count() const { return factors.size(); }
  std::size_t run_count() const { return runs.size(); }

  // Index of a factor by name; throws ValidationError when unknown.
  std::size_t factor_index(std::string_view name) const;

  // The coded column of one factor, in run order.
  std::vector<Code> column(std::size_t factor) const;
};

// Checks the structural invariants (unique names, legal level sets, runs
// conforming to factors, unique positive run ids). Throws ValidationError.
void ensure_well_formed(const DesignMatrix& design);

// All level combinations exactly once, first factor varying slowest, levels
// ascending within each factor. At most 16 factors, each 2- or 3-level.
DesignMatrix full_factorial(std::vector<FactorSpec> factors);

// A single excursion of an OFAT plan: one factor moved off baseline.
struct Excursion {
  std::size_t factor = 0;
  Code level = 0;
};

// The baseline run followed by one run per excursion, each identical to the
// baseline except for the excursed factor.
DesignMatrix ofat_design(std::vector<FactorSpec> factors,
                         std::vector<Code> baseline,
                         std::span<const Excursion> excursions);

// |levels| copies of every run, one block per level of new_factor (ascending),
// the new factor appended as the last column; run ids reassigned from 1.
DesignMatrix cross_with_factor(const DesignMatrix& design, FactorSpec new_factor);

// The 12-run two-level Plackett-Burman design on the given factors (1..11 of
// them, all two-level). Rows are the cyclic construction: the generator row
//   + + - + + + - - - + -
// shifted right ten times, then the all-minus row; the first k of the 11
// columns are taken. Every column is balanced 6/6 and every pair orthogonal.
DesignMatrix pb12_design(std::vector<FactorSpec> factors);

// Convenience: pb12 over plain two-level factors with the given names.
DesignMatrix pb12_design(const std::vector<std::string>& factor_names);

using LevelCombo = std::vector<Code>;

// The multiset of rows restricted to a factor subset: combination -> count.
// Counts total to the run count.
std::map<LevelCombo, int> project_design(const DesignMatrix& design,
                                         std::span<const std::string> factor_names);

// A seeded permutation of the runs (ids travel with their settings). Pure
// function of (design, seed); see Rng for the generator contract.
DesignMatrix randomize_order(const DesignMatrix& design, std::uint64_t seed);

// Per-column balance report. imbalance = max level count - min level count
// over the factor's declared levels (0 means perfectly balanced).
struct ColumnBalance {
  std::string factor;
  std::map<Code, int> level_counts;
  int imbalance = 0;
};

// Dot product of two coded columns; 0 means the pair is orthogonal.
struct PairOrthogonality {
  std::string factor_a;
  std::string factor_b;
  int dot = 0;
};

struct DesignDiagnostics {
  std::vector<ColumnBalance> balance;
  std::vector<PairOrthogonality> orthogonality;   // all factor pairs, a < b
  std::vector<std::vector<int>> duplicate_runs;   // run-id groups sharing settings

  bool balanced() const;
  bool orthogonal() const;
};

// Pure report: balance per column, orthogonality per pair, duplicated runs.
DesignDiagnostics validate_design(const DesignMatrix& design);

}  // namespace doe

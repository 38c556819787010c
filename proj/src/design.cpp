#include "doe/design.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "doe/error.hpp"
#include "doe/rng.hpp"

namespace doe {

namespace {

constexpr std::size_t kMaxFullFactorialFactors = 16;
constexpr std::size_t kPb12MaxFactors = 11;

// Canonical 12-run Plackett-Burman generator row.
constexpr Code kPb12Generator[11] = {+1, +1, -1, +1, +1, +1, -1, -1, -1, +1, -1};

void ensure_valid_spec(const FactorSpec& spec) {
  if (spec.name.empty()) {
    throw ValidationError("factor with empty name");
  }
  static const std::vector<Code> two{-1, +1};
  static const std::vector<Code> three{-1, 0, +1};
  if (spec.levels != two && spec.levels != three) {
    throw ValidationError("factor '" + spec.name +
                          "': levels must be {-1,+1} or {-1,0,+1}, ascending");
  }
  for (const auto& [code, text] : spec.labels) {
    if (!spec.has_level(code)) {
      throw ValidationError("factor '" + spec.name + "': label for undeclared level");
    }
    (void)text;
  }
}

void ensure_unique_names(const std::vector<FactorSpec>& factors) {
  std::unordered_set<std::string> seen;
  for (const auto& factor : factors) {
    if (!seen.insert(factor.name).second) {
      throw ValidationError("duplicate factor name '" + factor.name + "'");
    }
  }
}

std::string code_text(Code code) {
  switch (code) {
    case -1: return "-1";
    case 0: return "0";
    default: return "+1";
  }
}

}  // namespace

FactorSpec FactorSpec::two_level(std::string name) {
  return FactorSpec{std::move(name), {-1, +1}, {}};
}

FactorSpec FactorSpec::three_level(std::string name) {
  return FactorSpec{std::move(name), {-1, 0, +1}, {}};
}

bool FactorSpec::has_level(Code level) const {
  return std::find(levels.begin(), levels.end(), level) != levels.end();
}

std::string FactorSpec::level_text(Code level) const {
  if (const auto it = labels.find(level); it != labels.end()) return it->second;
  return code_text(level);
}

std::string_view to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::ofat: return "ofat";
    case DesignKind::full_factorial: return "full_factorial";
    case DesignKind::pb12: return "pb12";
    case DesignKind::custom: return "custom";
  }
  return "custom";
}

std::size_t DesignMatrix::factor_index(std::string_view name) const {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].name == name) return i;
  }
  throw ValidationError("unknown factor '" + std::string(name) + "'");
}

std::vector<Code> DesignMatrix::column(std::size_t factor) const {
  std::vector<Code> column;
  column.reserve(runs.size());
  for (const auto& run : runs) column.push_back(run.settings.at(factor));
  return column;
}

void ensure_well_formed(const DesignMatrix& design) {
  ensure_unique_names(design.factors);
  for (const auto& factor : design.factors) ensure_valid_spec(factor);
  std::unordered_set<int> ids;
  for (const auto& run : design.runs) {
    if (run.id <= 0) {
      throw ValidationError("run id must be positive");
    }
    if (!ids.insert(run.id).second) {
      throw ValidationError("duplicate run id " + std::to_string(run.id));
    }
    if (run.settings.size() != design.factors.size()) {
      throw ValidationError("run " + std::to_string(run.id) +
                            ": settings length does not match factor count");
    }
    for (std::size_t f = 0; f < design.factors.size(); ++f) {
      if (!design.factors[f].has_level(run.settings[f])) {
        throw ValidationError("run " + std::to_string(run.id) + ": level " +
                              code_text(run.settings[f]) +
                              " not declared for factor '" + design.factors[f].name + "'");
      }
    }
  }
}

DesignMatrix full_factorial(std::vector<FactorSpec> factors) {
  if (factors.empty()) {
    throw ValidationError("full factorial needs at least one factor");
  }
  if (factors.size() > kMaxFullFactorialFactors) {
    throw CapacityError("full factorial limited to " +
                        std::to_string(kMaxFullFactorialFactors) + " factors");
  }
  ensure_unique_names(factors);
  for (const auto& factor : factors) ensure_valid_spec(factor);

  std::size_t total = 1;
  for (const auto& factor : factors) total *= factor.levels.size();

  DesignMatrix design;
  design.factors = std::move(factors);
  design.kind = DesignKind::full_factorial;
  design.runs.reserve(total);

  // Odometer enumeration, first factor slowest.
  std::vector<std::size_t> digits(design.factors.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    Run run;
    run.id = static_cast<int>(i) + 1;
    run.settings.reserve(digits.size());
    for (std::size_t f = 0; f < digits.size(); ++f) {
      run.settings.push_back(design.factors[f].levels[digits[f]]);
    }
    design.runs.push_back(std::move(run));
    for (std::size_t f = digits.size(); f-- > 0;) {
      if (++digits[f] < design.factors[f].levels.size()) break;
      digits[f] = 0;
    }
  }
  return design;
}

DesignMatrix ofat_design(std::vector<FactorSpec> factors, std::vector<Code> baseline,
                         std::span<const Excursion> excursions) {
  if (factors.empty()) {
    throw ValidationError("ofat design needs at least one factor");
  }
  ensure_unique_names(factors);
  for (const auto& factor : factors) ensure_valid_spec(factor);
  if (baseline.size() != factors.size()) {
    throw ValidationError("baseline length does not match factor count");
  }
  for (std::size_t f = 0; f < factors.size(); ++f) {
    if (!factors[f].has_level(baseline[f])) {
      throw ValidationError("baseline level not declared for factor '" + factors[f].name + "'");
    }
  }

  DesignMatrix design;
  design.factors = std::move(factors);
  design.kind = DesignKind::ofat;
  design.runs.push_back(Run{1, baseline});

  int next_id = 2;
  for (const auto& excursion : excursions) {
    if (excursion.factor >= design.factors.size()) {
      throw ValidationError("excursion factor index out of range");
    }
    const auto& factor = design.factors[excursion.factor];
    if (!factor.has_level(excursion.level)) {
      throw ValidationError("excursion level not declared for factor '" + factor.name + "'");
    }
    if (excursion.level == baseline[excursion.factor]) {
      throw ValidationError("excursion for factor '" + factor.name +
                            "' equals the baseline level");
    }
    Run run{next_id++, baseline};
    run.settings[excursion.factor] = excursion.level;
    design.runs.push_back(std::move(run));
  }
  return design;
}

DesignMatrix cross_with_factor(const DesignMatrix& design, FactorSpec new_factor) {
  ensure_well_formed(design);
  ensure_valid_spec(new_factor);
  for (const auto& factor : design.factors) {
    if (factor.name == new_factor.name) {
      throw ValidationError("factor '" + new_factor.name + "' already present");
    }
  }

  DesignMatrix crossed;
  crossed.factors = design.factors;
  crossed.factors.push_back(new_factor);
  crossed.kind = DesignKind::custom;
  crossed.runs.reserve(design.runs.size() * new_factor.levels.size());

  // One block per level, ascending; ids restart from 1.
  int next_id = 1;
  for (const Code level : new_factor.levels) {
    for (const auto& run : design.runs) {
      Run copy{next_id++, run.settings};
      copy.settings.push_back(level);
      crossed.runs.push_back(std::move(copy));
    }
  }
  return crossed;
}

DesignMatrix pb12_design(std::vector<FactorSpec> factors) {
  if (factors.empty()) {
    throw ValidationError("pb12 needs at least one factor");
  }
  if (factors.size() > kPb12MaxFactors) {
    throw CapacityError("pb12 supports at most 11 factors");
  }
  ensure_unique_names(factors);
  for (const auto& factor : factors) {
    ensure_valid_spec(factor);
    if (!factor.is_two_level()) {
      throw ValidationError("pb12 factor '" + factor.name + "' must be two-level");
    }
  }

  const std::size_t k = factors.size();
  DesignMatrix design;
  design.factors = std::move(factors);
  design.kind = DesignKind::pb12;
  design.runs.reserve(12);

  std::vector<Code> row(kPb12Generator, kPb12Generator + 11);
  for (int i = 0; i < 11; ++i) {
    std::vector<Code> settings(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
    design.runs.push_back(Run{i + 1, std::move(settings)});
    std::rotate(row.rbegin(), row.rbegin() + 1, row.rend());  // shift right
  }
  design.runs.push_back(Run{12, std::vector<Code>(k, -1)});
  return design;
}

DesignMatrix pb12_design(const std::vector<std::string>& factor_names) {
  std::vector<FactorSpec> factors;
  factors.reserve(factor_names.size());
  for (const auto& name : factor_names) factors.push_back(FactorSpec::two_level(name));
  return pb12_design(std::move(factors));
}

std::map<LevelCombo, int> project_design(const DesignMatrix& design,
                                         std::span<const std::string> factor_names) {
  ensure_well_formed(design);
  if (factor_names.empty()) {
    throw ValidationError("projection needs a non-empty factor subset");
  }
  std::vector<std::size_t> indices;
  indices.reserve(factor_names.size());
  std::set<std::string_view> seen;
  for (const auto& name : factor_names) {
    if (!seen.insert(name).second) {
      throw ValidationError("projection subset repeats factor '" + name + "'");
    }
    indices.push_back(design.factor_index(name));
  }

  std::map<LevelCombo, int> counts;
  for (const auto& run : design.runs) {
    LevelCombo combo;
    combo.reserve(indices.size());
    for (const std::size_t f : indices) combo.push_back(run.settings[f]);
    ++counts[combo];
  }
  return counts;
}

DesignMatrix randomize_order(const DesignMatrix& design, std::uint64_t seed) {
  ensure_well_formed(design);
  DesignMatrix shuffled = design;
  Rng rng(seed);
  rng.shuffle(shuffled.runs);
  return shuffled;
}

bool DesignDiagnostics::balanced() const {
  return std::all_of(balance.begin(), balance.end(),
                     [](const ColumnBalance& b) { return b.imbalance == 0; });
}

bool DesignDiagnostics::orthogonal() const {
  return std::all_of(orthogonality.begin(), orthogonality.end(),
                     [](const PairOrthogonality& p) { return p.dot == 0; });
}

DesignDiagnostics validate_design(const DesignMatrix& design) {
  ensure_well_formed(design);
  DesignDiagnostics diagnostics;

  for (std::size_t f = 0; f < design.factors.size(); ++f) {
    ColumnBalance balance;
    balance.factor = design.factors[f].name;
    for (const Code level : design.factors[f].levels) balance.level_counts[level] = 0;
    for (const auto& run : design.runs) ++balance.level_counts[run.settings[f]];
    int lo = design.runs.empty() ? 0 : static_cast<int>(design.runs.size());
    int hi = 0;
    for (const auto& [level, count] : balance.level_counts) {
      lo = std::min(lo, count);
      hi = std::max(hi, count);
    }
    balance.imbalance = hi - lo;
    diagnostics.balance.push_back(std::move(balance));
  }

  for (std::size_t a = 0; a < design.factors.size(); ++a) {
    for (std::size_t b = a + 1; b < design.factors.size(); ++b) {
      int dot = 0;
      for (const auto& run : design.runs) dot += run.settings[a] * run.settings[b];
      diagnostics.orthogonality.push_back(
          PairOrthogonality{design.factors[a].name, design.factors[b].name, dot});
    }
  }

  std::map<std::vector<Code>, std::vector<int>> by_settings;
  for (const auto& run : design.runs) by_settings[run.settings].push_back(run.id);
  for (auto& [settings, ids] : by_settings) {
    if (ids.size() > 1) {
      std::sort(ids.begin(), ids.end());
      diagnostics.duplicate_runs.push_back(ids);
    }
  }
  return diagnostics;
}

}  // namespace doe

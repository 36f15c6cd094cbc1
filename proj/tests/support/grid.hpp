#pragma once

#include <cstddef>
#include <vector>

#include "peerscore/probability.hpp"
#include "peerscore/rules.hpp"

namespace peerscore::testing {

// Every probability vector over `outcomes` entries whose entries are
// multiples of 1/denominator.
inline std::vector<ProbabilityVector> SimplexGrid(std::size_t outcomes,
                                                  std::size_t denominator,
                                                  bool interior_only = false) {
  std::vector<ProbabilityVector> grid;
  std::vector<std::size_t> parts(outcomes, 0);
  const auto emit = [&] {
    std::vector<double> weights;
    for (auto p : parts) {
      if (interior_only && p == 0) return;
      weights.push_back(static_cast<double>(p));
    }
    grid.push_back(ProbabilityVector::Normalized(weights));
  };
  const auto fill = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == outcomes) {
      parts[pos] = left;
      emit();
      return;
    }
    for (std::size_t p = 0; p <= left; ++p) {
      parts[pos] = p;
      self(self, pos + 1, left - p);
    }
  };
  fill(fill, 0, denominator);
  return grid;
}

struct ProperGridResult {
  std::size_t beliefs = 0;
  std::size_t failures = 0;
};

// For each belief q on the grid, the forecast maximizing the expected score
// over the same grid must be q itself, by a margin of at least `margin`.
inline ProperGridResult CheckProperOnGrid(const ScoringRuleSpec& spec,
                                          std::size_t outcomes,
                                          std::size_t denominator,
                                          double margin = 1e-12) {
  const bool interior = spec.rule() == Rule::kLogarithmic;
  const auto grid = SimplexGrid(outcomes, denominator, interior);
  ProperGridResult result;
  for (std::size_t qi = 0; qi < grid.size(); ++qi) {
    ++result.beliefs;
    const double honest = ExpectedScore(spec, grid[qi], grid[qi]);
    for (std::size_t zi = 0; zi < grid.size(); ++zi) {
      if (zi == qi) continue;
      if (ExpectedScore(spec, grid[zi], grid[qi]) > honest - margin) {
        ++result.failures;
        break;
      }
    }
  }
  return result;
}

}  // namespace peerscore::testing

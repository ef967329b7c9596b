#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "threshsim/system.hpp"

namespace threshsim {

/// Cell labels: >= 0 indexes into attractors, kDiverged / kUndecided
/// otherwise.
struct BasinGrid {
  static constexpr int kDiverged = -1;
  static constexpr int kUndecided = -2;

  Box box;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> labels;        ///< row-major, rows*cols entries
  std::vector<State> attractors;  ///< sorted lexicographically by (a, c)
  std::size_t n_steps = 0;
  double tol = 0.0;

  int label_at(std::size_t row, std::size_t col) const {
    return labels[row * cols + col];
  }
  /// Initial condition at the center of a cell (col spans a, row spans c).
  State cell_center(std::size_t row, std::size_t col) const;
};

/// Simulates from every cell center and labels each cell by the attractor
/// reached; converged limits within tol of each other share a label. Cells
/// whose orbits diverge get kDiverged, anything unresolved (including
/// detected cycles) gets kUndecided. Grid must be at least 2x2.
BasinGrid basin_sample(const System& sys, const Box& box, std::size_t rows,
                       std::size_t cols, std::size_t n_steps, double tol);

std::string basin_label_name(const BasinGrid& grid, int label);

/// CSV rows: row, col, a0, c0, label. `meta` lines are emitted first as
/// "# key: value" comments.
void write_basin_csv(std::ostream& os, const BasinGrid& grid,
                     const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace threshsim

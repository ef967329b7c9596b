#include "threshsim/basin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "threshsim/detectors.hpp"
#include "threshsim/simulate.hpp"
#include "threshsim/trace_io.hpp"

namespace threshsim {

State BasinGrid::cell_center(std::size_t row, std::size_t col) const {
  const double fa = (static_cast<double>(col) + 0.5) / static_cast<double>(cols);
  const double fc = (static_cast<double>(row) + 0.5) / static_cast<double>(rows);
  return State{box.a_lo + fa * (box.a_hi - box.a_lo),
               box.c_lo + fc * (box.c_hi - box.c_lo)};
}

BasinGrid basin_sample(const System& sys, const Box& box, std::size_t rows,
                       std::size_t cols, std::size_t n_steps, double tol) {
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("basin_sample: grid must be at least 2x2");
  }
  BasinGrid grid;
  grid.box = box;
  grid.rows = rows;
  grid.cols = cols;
  grid.n_steps = n_steps;
  grid.tol = tol;
  grid.labels.assign(rows * cols, BasinGrid::kUndecided);

  std::vector<State> reps;
  std::vector<int> raw(rows * cols, BasinGrid::kUndecided);
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t col = 0; col < cols; ++col) {
      const Trace tr = simulate(sys, grid.cell_center(row, col), n_steps);
      const LimitVerdict v =
          detect_limit(tr, tol, std::min<std::size_t>(kDefaultWindow, tr.size()));
      int label = BasinGrid::kUndecided;
      if (v.kind == LimitKind::Diverged) {
        label = BasinGrid::kDiverged;
      } else if (v.kind == LimitKind::Converged) {
        const State limit{*v.limit_a, *v.limit_c};
        std::size_t i = 0;
        for (; i < reps.size(); ++i) {
          if (std::hypot(limit.a - reps[i].a, limit.c - reps[i].c) <= tol) break;
        }
        if (i == reps.size()) reps.push_back(limit);
        label = static_cast<int>(i);
      }
      raw[row * cols + col] = label;
    }
  }

  // Renumber attractors into lexicographic order so labels are stable no
  // matter which basin the scan touched first.
  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&reps](std::size_t x, std::size_t y) {
    return reps[x].a != reps[y].a ? reps[x].a < reps[y].a : reps[x].c < reps[y].c;
  });
  std::vector<int> rank(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  grid.attractors.resize(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) grid.attractors[rank[i]] = reps[i];
  for (std::size_t k = 0; k < raw.size(); ++k) {
    grid.labels[k] = raw[k] >= 0 ? rank[raw[k]] : raw[k];
  }
  return grid;
}

std::string basin_label_name(const BasinGrid& grid, int label) {
  if (label == BasinGrid::kDiverged) return "diverged";
  if (label < 0) return "undecided";
  const State& s = grid.attractors[static_cast<std::size_t>(label)];
  return "attractor_" + std::to_string(label) + "(" + format_double(s.a) + "," +
         format_double(s.c) + ")";
}

void write_basin_csv(std::ostream& os, const BasinGrid& grid,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << "\n";
  for (std::size_t i = 0; i < grid.attractors.size(); ++i) {
    os << "# attractor_" << i << ": " << format_double(grid.attractors[i].a) << ","
       << format_double(grid.attractors[i].c) << "\n";
  }
  os << "row,col,a0,c0,label\n";
  for (std::size_t row = 0; row < grid.rows; ++row) {
    for (std::size_t col = 0; col < grid.cols; ++col) {
      const State init = grid.cell_center(row, col);
      const int label = grid.label_at(row, col);
      os << row << "," << col << "," << format_double(init.a) << ","
         << format_double(init.c) << ",";
      if (label == BasinGrid::kDiverged) {
        os << "diverged";
      } else if (label < 0) {
        os << "undecided";
      } else {
        os << "attractor_" << label;
      }
      os << "\n";
    }
  }
}

}  // namespace threshsim

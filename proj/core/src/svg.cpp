#include "threshsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace threshsim {

namespace {

constexpr const char* kPalette[] = {
    "#4c78a8", "#f58518", "#54a24b", "#b279a2", "#e45756",
    "#72b7b2", "#eeca3b", "#ff9da6", "#9d755d", "#bab0ac",
};
constexpr int kPaletteSize = 10;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::string orbit_svg(const Trace& trace, const std::string& title) {
  const int width = 900, height = 420;
  const int ml = 60, mr = 20, mt = 40, mb = 40;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  const std::size_t n = trace.states.size();
  double lo = trace.states.empty() ? 0.0 : trace.states[0].a;
  double hi = lo;
  for (const State& s : trace.states) {
    lo = std::min({lo, s.a, s.c});
    hi = std::max({hi, s.a, s.c});
  }
  if (hi <= lo) hi = lo + 1.0;

  auto x_of = [&](std::size_t k) {
    return ml + pw * static_cast<double>(k) / static_cast<double>(std::max<std::size_t>(n - 1, 1));
  };
  auto y_of = [&](double v) { return mt + ph * (1.0 - (v - lo) / (hi - lo)); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">"
     << title << "</text>\n";

  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
     << mt + ph << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
     << "\" y2=\"" << mt + ph << "\" stroke=\"#333\"/>\n";
  os << "<text x=\"8\" y=\"" << mt + 12 << "\" font-family=\"monospace\" font-size=\"11\">"
     << fmt(hi) << "</text>\n";
  os << "<text x=\"8\" y=\"" << mt + ph << "\" font-family=\"monospace\" font-size=\"11\">"
     << fmt(lo) << "</text>\n";
  os << "<text x=\"" << ml + pw - 40 << "\" y=\"" << height - 10
     << "\" font-family=\"monospace\" font-size=\"11\">n=" << (n == 0 ? 0 : n - 1)
     << "</text>\n";

  // regime-switch markers, thinned when plentiful
  std::vector<std::size_t> switches;
  for (std::size_t k = 0; k + 1 < trace.regimes.size(); ++k) {
    if (trace.regimes[k] != trace.regimes[k + 1]) switches.push_back(k + 1);
  }
  const std::size_t stride = switches.size() > 256 ? switches.size() / 256 : 1;
  for (std::size_t i = 0; i < switches.size(); i += stride) {
    const double x = x_of(switches[i]);
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << mt << "\" x2=\"" << fmt(x)
       << "\" y2=\"" << mt + ph
       << "\" stroke=\"#cccccc\" stroke-dasharray=\"3,4\"/>\n";
  }

  auto polyline = [&](bool use_a, const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < n; ++k) {
      const double v = use_a ? trace.states[k].a : trace.states[k].c;
      os << fmt(x_of(k)) << "," << fmt(y_of(v)) << " ";
    }
    os << "\"/>\n";
  };
  polyline(true, kPalette[0]);
  polyline(false, kPalette[1]);

  os << "<text x=\"" << ml + pw - 120 << "\" y=\"" << mt + 14
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << kPalette[0]
     << "\">a</text>\n";
  os << "<text x=\"" << ml + pw - 100 << "\" y=\"" << mt + 14
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << kPalette[1]
     << "\">c</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string basin_svg(const BasinGrid& grid, const std::string& title) {
  const int cell = std::max<int>(2, static_cast<int>(760 / std::max(grid.rows, grid.cols)));
  const int width = static_cast<int>(grid.cols) * cell + 80;
  const int height = static_cast<int>(grid.rows) * cell + 60;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"40\" y=\"24\" font-family=\"monospace\" font-size=\"14\">" << title
     << "</text>\n";
  for (std::size_t row = 0; row < grid.rows; ++row) {
    for (std::size_t col = 0; col < grid.cols; ++col) {
      const int label = grid.label_at(row, col);
      const char* fill = label == BasinGrid::kDiverged ? "#444444"
                         : label < 0                   ? "#dddddd"
                                                       : kPalette[label % kPaletteSize];
      // row 0 is the lowest c value; draw it at the bottom
      const int x = 40 + static_cast<int>(col) * cell;
      const int y = 40 + static_cast<int>(grid.rows - 1 - row) * cell;
      os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace threshsim

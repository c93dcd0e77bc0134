#include <cmath>

#include "glasso/experiments.hpp"

namespace glasso {

Boundary extract_boundary(const PhaseGrid& grid) {
  const auto& alphas = grid.config.alpha_values;
  const Index na = alphas.size();
  Boundary out;
  std::vector<double> xs, ys;
  for (Index si = 0; si < grid.config.s_values.size(); ++si) {
    BoundaryPoint point;
    point.s = grid.config.s_values[si];
    std::vector<double> rates(na);
    for (Index ai = 0; ai < na; ++ai) rates[ai] = grid.cell(si, ai).rate();

    bool all_equal = true;
    for (double r : rates) all_equal = all_equal && r == rates.front();
    if (!all_equal) {
      const auto above = [&](Index i) { return rates[i] >= 0.5; };
      const auto at_crossing = [&](Index i) {
        return (i > 0 && above(i - 1) != above(i)) || (i + 1 < na && above(i + 1) != above(i));
      };
      double best = 2.0;
      bool best_crossing = false;
      Index best_i = 0;
      for (Index i = 0; i < na; ++i) {
        const double dist = std::abs(rates[i] - 0.5);
        const bool crossing = at_crossing(i);
        // Ascending scan: a later alpha wins only if strictly nearer, or equally
        // near and at the crossing when the current choice is not.
        if (dist < best || (dist == best && crossing && !best_crossing)) {
          best = dist;
          best_crossing = crossing;
          best_i = i;
        }
      }
      point.alpha = alphas[best_i];
      point.present = true;
      xs.push_back(std::log(static_cast<double>(point.s)));
      ys.push_back(std::log(point.alpha));
    }
    out.points.push_back(point);
  }

  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (Index i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (Index i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 0.0) {
      out.slope = sxy / sxx;
      out.slope_defined = true;
    }
  }
  return out;
}

}  // namespace glasso

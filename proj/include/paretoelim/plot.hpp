#pragma once

// SVG export of sampled bi-objective fronts and eliminant zero curves.

#include <functional>
#include <string>
#include <vector>

#include "paretoelim/eliminate.hpp"
#include "paretoelim/front.hpp"

namespace paretoelim {

struct PlotBox {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
};

/// Bounding box of the points, each side widened by `margin` times its extent
/// (degenerate extents get a unit width).
PlotBox inflated_bounds(const std::vector<std::vector<double>>& points, double margin = 0.2);

struct Segment {
  double x0, y0, x1, y1;
};

/// Zero level set of f on an nx x ny cell grid over the box. Saddle cells are
/// disambiguated with the cell-centre value.
std::vector<Segment> marching_squares(const std::function<double(double, double)>& f, const PlotBox& box, int nx = 400,
                                      int ny = 400);

/// Points (first two coordinates) and, when given, the zero curves of every
/// eliminant polynomial; only m = 2 is supported.
std::string render_svg(const std::vector<ParetoPoint>& points, const EliminantSystem* eliminant = nullptr,
                       int grid = 400);

void write_svg(const std::string& path, const std::vector<ParetoPoint>& points,
               const EliminantSystem* eliminant = nullptr);

}  // namespace paretoelim

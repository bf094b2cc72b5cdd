#include "paretoelim/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "paretoelim/errors.hpp"

namespace paretoelim {

PlotBox inflated_bounds(const std::vector<std::vector<double>>& points, double margin) {
  if (points.empty()) return {};
  PlotBox b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    if (p.size() < 2) throw InvalidArgument("plot needs two coordinates per point");
    b.xmin = std::min(b.xmin, p[0]);
    b.xmax = std::max(b.xmax, p[0]);
    b.ymin = std::min(b.ymin, p[1]);
    b.ymax = std::max(b.ymax, p[1]);
  }
  auto widen = [margin](double& lo, double& hi) {
    double extent = hi - lo;
    if (extent <= 0) {
      lo -= 0.5;
      hi += 0.5;
      extent = 1.0;
    }
    lo -= margin * extent;
    hi += margin * extent;
  };
  widen(b.xmin, b.xmax);
  widen(b.ymin, b.ymax);
  return b;
}

std::vector<Segment> marching_squares(const std::function<double(double, double)>& f, const PlotBox& box, int nx,
                                      int ny) {
  if (nx < 1 || ny < 1) throw InvalidArgument("marching squares needs a positive grid size");
  const double hx = (box.xmax - box.xmin) / nx, hy = (box.ymax - box.ymin) / ny;
  std::vector<double> v(static_cast<std::size_t>(nx + 1) * (ny + 1));
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j) * (nx + 1) + i]; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) at(i, j) = f(box.xmin + i * hx, box.ymin + j * hy);

  std::vector<Segment> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x0 = box.xmin + i * hx, y0 = box.ymin + j * hy;
      // corners counter-clockwise from bottom-left
      const std::array<double, 4> c = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const std::array<std::array<double, 2>, 4> pos = {
          {{x0, y0}, {x0 + hx, y0}, {x0 + hx, y0 + hy}, {x0, y0 + hy}}};
      std::vector<std::array<double, 2>> cross;
      for (int e = 0; e < 4; ++e) {
        const double a = c[e], b = c[(e + 1) % 4];
        if ((a < 0) == (b < 0)) continue;
        const double t = a / (a - b);
        const auto& p = pos[e];
        const auto& q = pos[(e + 1) % 4];
        cross.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
      if (cross.size() == 2) {
        out.push_back({cross[0][0], cross[0][1], cross[1][0], cross[1][1]});
      } else if (cross.size() == 4) {
        // crossings lie on edges 0..3 in order; pair according to the centre sign
        const double centre = f(x0 + hx / 2, y0 + hy / 2);
        if ((centre < 0) == (c[0] < 0)) {
          out.push_back({cross[0][0], cross[0][1], cross[1][0], cross[1][1]});
          out.push_back({cross[2][0], cross[2][1], cross[3][0], cross[3][1]});
        } else {
          out.push_back({cross[3][0], cross[3][1], cross[0][0], cross[0][1]});
          out.push_back({cross[1][0], cross[1][1], cross[2][0], cross[2][1]});
        }
      }
    }
  }
  return out;
}

std::string render_svg(const std::vector<ParetoPoint>& points, const EliminantSystem* eliminant, int grid) {
  std::vector<std::vector<double>> coords;
  for (const auto& p : points) coords.push_back(p.s);
  if (eliminant && eliminant->space && eliminant->space->size() != 2)
    throw InvalidArgument("zero-curve plots need a bivariate eliminant");
  const PlotBox box = inflated_bounds(coords);
  constexpr double W = 640, H = 480, pad = 48;
  auto px = [&](double x) { return pad + (x - box.xmin) / (box.xmax - box.xmin) * (W - 2 * pad); };
  auto py = [&](double y) { return H - pad - (y - box.ymin) / (box.ymax - box.ymin) * (H - 2 * pad); };

  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
      << W << ' ' << H << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"14\">s1 ["
      << box.xmin << ", " << box.xmax << "]</text>\n";
  svg << "<text x=\"14\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 "
      << H / 2 << ")\">s2 [" << box.ymin << ", " << box.ymax << "]</text>\n";
  if (eliminant) {
    svg << "<g stroke=\"#1f5fbf\" stroke-width=\"1.2\" fill=\"none\">\n";
    for (const auto& t : eliminant->polynomials) {
      const double scale = std::max(t.max_abs_coefficient(), 1e-300);
      auto f = [&](double x, double y) {
        const double pt[2] = {x, y};
        return t.evaluate(std::span<const double>(pt, 2)) / scale;
      };
      for (const auto& s : marching_squares(f, box, grid, grid))
        svg << "<line x1=\"" << px(s.x0) << "\" y1=\"" << py(s.y0) << "\" x2=\"" << px(s.x1) << "\" y2=\""
            << py(s.y1) << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "<g fill=\"#d62728\">\n";
  for (const auto& p : coords) svg << "<circle cx=\"" << px(p[0]) << "\" cy=\"" << py(p[1]) << "\" r=\"3\"/>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_svg(const std::string& path, const std::vector<ParetoPoint>& points, const EliminantSystem* eliminant) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << render_svg(points, eliminant);
}

}  // namespace paretoelim

#pragma once

// Minimal hand-rolled SVG plots and marching-squares contouring.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dimerlab::cli {

struct Segment {
  double x0, y0, x1, y1;
};

/// Level-set segments of f over the rectilinear lattice xs x ys, where
/// f(i, j) is the value at (xs[i], ys[j]).  Saddle cells are resolved by the
/// cell-centre average.
std::vector<Segment> marching_squares(const std::vector<double>& xs, const std::vector<double>& ys,
                                      const std::function<double(std::size_t, std::size_t)>& f, double level);

class SvgPlot {
 public:
  SvgPlot(double xmin, double xmax, double ymin, double ymax);

  void set_title(std::string title) { title_ = std::move(title); }
  void set_labels(std::string x, std::string y) {
    xlabel_ = std::move(x);
    ylabel_ = std::move(y);
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view color, bool dashed = false);
  void segments(const std::vector<Segment>& segs, std::string_view color, double width = 1.0);
  void marker(double x, double y, std::string_view color, bool filled);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double xmin_, xmax_, ymin_, ymax_;
  std::string title_, xlabel_, ylabel_;
  std::string body_;
};

}  // namespace dimerlab::cli

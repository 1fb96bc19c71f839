#include "dimerlab/cli/svg.hpp"

#include <array>
#include <cstdio>

namespace dimerlab::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<Segment> marching_squares(const std::vector<double>& xs, const std::vector<double>& ys,
                                      const std::function<double(std::size_t, std::size_t)>& f, double level) {
  std::vector<Segment> out;
  if (xs.size() < 2 || ys.size() < 2) return out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      // Corners counter-clockwise from (x_i, y_j).
      const std::array<double, 4> v{f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)};
      const std::array<double, 4> cx{xs[i], xs[i + 1], xs[i + 1], xs[i]};
      const std::array<double, 4> cy{ys[j], ys[j], ys[j + 1], ys[j + 1]};
      int code = 0;
      for (int k = 0; k < 4; ++k) {
        if (v[static_cast<std::size_t>(k)] >= level) code |= 1 << k;
      }
      if (code == 0 || code == 15) continue;

      // Edge k joins corner k and corner k + 1.
      auto edge = [&](int k) {
        const auto a = static_cast<std::size_t>(k);
        const auto b = static_cast<std::size_t>((k + 1) % 4);
        const double t = (level - v[a]) / (v[b] - v[a]);
        return std::pair{cx[a] + t * (cx[b] - cx[a]), cy[a] + t * (cy[b] - cy[a])};
      };
      auto emit = [&](int e0, int e1) {
        const auto p = edge(e0);
        const auto q = edge(e1);
        out.push_back({p.first, p.second, q.first, q.second});
      };
      const bool centre_high = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
      switch (code) {
        case 1: case 14: emit(3, 0); break;
        case 2: case 13: emit(0, 1); break;
        case 3: case 12: emit(3, 1); break;
        case 4: case 11: emit(1, 2); break;
        case 6: case 9: emit(0, 2); break;
        case 7: case 8: emit(2, 3); break;
        case 5:
          if (centre_high) {
            emit(0, 1);
            emit(2, 3);
          } else {
            emit(3, 0);
            emit(1, 2);
          }
          break;
        case 10:
          if (centre_high) {
            emit(3, 0);
            emit(1, 2);
          } else {
            emit(0, 1);
            emit(2, 3);
          }
          break;
        default: break;
      }
    }
  }
  return out;
}

SvgPlot::SvgPlot(double xmin, double xmax, double ymin, double ymax)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (!(xmax_ > xmin_)) xmax_ = xmin_ + 1.0;
  if (!(ymax_ > ymin_)) ymax_ = ymin_ + 1.0;
}

double SvgPlot::px(double x) const { return kLeft + (x - xmin_) / (xmax_ - xmin_) * (kWidth - kLeft - kRight); }

double SvgPlot::py(double y) const {
  return kHeight - kBottom - (y - ymin_) / (ymax_ - ymin_) * (kHeight - kTop - kBottom);
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, std::string_view color, bool dashed) {
  if (pts.empty()) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"";
  if (dashed) body_ += " stroke-dasharray=\"6,4\"";
  body_ += " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) body_ += ' ';
    body_ += num(px(pts[i].first)) + "," + num(py(pts[i].second));
  }
  body_ += "\"/>\n";
}

void SvgPlot::segments(const std::vector<Segment>& segs, std::string_view color, double width) {
  if (segs.empty()) return;
  body_ += "<path fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" + num(width) + "\" d=\"";
  for (const auto& s : segs) {
    body_ += "M" + num(px(s.x0)) + " " + num(py(s.y0)) + "L" + num(px(s.x1)) + " " + num(py(s.y1));
  }
  body_ += "\"/>\n";
}

void SvgPlot::marker(double x, double y, std::string_view color, bool filled) {
  body_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"4\" stroke=\"" + std::string(color) +
           "\" fill=\"" + (filled ? std::string(color) : std::string("white")) + "\"/>\n";
}

std::string SvgPlot::str() const {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
       num(kWidth - kLeft - kRight) + "\" height=\"" + num(kHeight - kTop - kBottom) + "\"/></clipPath></defs>\n";
  s += "<g clip-path=\"url(#plot)\">\n" + body_ + "</g>\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kWidth - kLeft - kRight) +
       "\" height=\"" + num(kHeight - kTop - kBottom) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin_ + (xmax_ - xmin_) * k / 4.0;
    const double fy = ymin_ + (ymax_ - ymin_) * k / 4.0;
    s += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kHeight - kBottom + 16) + "\" text-anchor=\"middle\">" +
         tick(fx) + "</text>\n";
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(fy) + 4) + "\" text-anchor=\"end\">" + tick(fy) +
         "</text>\n";
  }
  s += "<text x=\"" + num(0.5 * (kLeft + kWidth - kRight)) + "\" y=\"" + num(kHeight - 12) +
       "\" text-anchor=\"middle\">" + escape(xlabel_) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num(0.5 * (kTop + kHeight - kBottom)) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num(0.5 * (kTop + kHeight - kBottom)) + ")\">" + escape(ylabel_) + "</text>\n";
  s += "<text x=\"" + num(0.5 * (kLeft + kWidth - kRight)) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(title_) + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace dimerlab::cli

// Geometric certification of probe-cell configurations, independent of the
// rank oracle: exact segment/box clipping decides whether a cell is disjoint
// from a polyline or crossed by a single coordinate-monotone strand.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "curvesig/curve.hpp"
#include "curvesig/inverse.hpp"

namespace fixtures {

using curvesig::Point;
using curvesig::ProbeRectangle;
using curvesig::SampledCurve;

// Feasible t-interval of one linear constraint lo <= p + t*d <= hi on [0,1].
inline bool clip_axis(double p, double d, double lo, double hi, double& t0, double& t1) {
  if (d == 0.0) return p >= lo && p <= hi;
  double a = (lo - p) / d;
  double b = (hi - p) / d;
  if (a > b) std::swap(a, b);
  t0 = std::max(t0, a);
  t1 = std::min(t1, b);
  return t0 <= t1;
}

// Intersection of the segment [p, q] with a closed box, as a t-interval.
inline std::optional<std::pair<double, double>> segment_in_box(
    const Point& p, const Point& q, double xmin, double ymin, double xmax, double ymax) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Point d = q - p;
  if (!clip_axis(p.x(), d.x(), xmin, xmax, t0, t1)) return std::nullopt;
  if (!clip_axis(p.y(), d.y(), ymin, ymax, t0, t1)) return std::nullopt;
  if (t0 > t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

inline std::optional<std::pair<double, double>> segment_in_cell(
    const Point& p, const Point& q, const ProbeRectangle& rect) {
  return segment_in_box(p, q, rect.x0, rect.y0, rect.x0 + rect.h, rect.y0 + rect.h);
}

inline bool cell_disjoint(const SampledCurve& curve, const ProbeRectangle& rect) {
  for (int i = 0; i < curve.size(); ++i) {
    if (segment_in_cell(curve.vertex(i), curve.vertex(i + 1), rect)) return false;
  }
  return true;
}

// Certifies the configuration under which the alternating sum equals one:
// the curve meets the cell along exactly one parameter arc with strictly
// monotone coordinates of opposite sense; the arc enters through the right
// cell edge and leaves through the top edge (so its sublevel component ends
// at the quadrant boundary); its crossing of the vertical line through the
// b/d probes lies in the middle height third and its crossing of the
// horizontal line through the a/b probes lies in the middle width third (so
// the strand separates probe b from a, c, d); and no probe point lies on the
// curve.
inline bool certify_top_right_transversal(const SampledCurve& curve,
                                          const ProbeRectangle& rect) {
  const int n = curve.size();
  struct Piece {
    int edge;
    double t0, t1;
  };
  std::vector<Piece> pieces;
  for (int i = 0; i < n; ++i) {
    const auto hit = segment_in_cell(curve.vertex(i), curve.vertex(i + 1), rect);
    if (hit) pieces.push_back({i, hit->first, hit->second});
  }
  if (pieces.empty()) return false;
  if (static_cast<int>(pieces.size()) == n) return false;  // fully inside

  // Chain pieces sharing a vertex into strands (with wrap).
  std::vector<std::vector<Piece>> strands;
  for (const Piece& piece : pieces) {
    if (!strands.empty() && strands.back().back().edge == piece.edge - 1 &&
        strands.back().back().t1 == 1.0 && piece.t0 == 0.0) {
      strands.back().push_back(piece);
    } else {
      strands.push_back({piece});
    }
  }
  if (strands.size() > 1) {
    const auto& tail = strands.back();
    const auto& head = strands.front();
    if (tail.back().edge == n - 1 && tail.back().t1 == 1.0 && head.front().edge == 0 &&
        head.front().t0 == 0.0) {
      auto merged = strands.back();
      for (const Piece& piece : strands.front()) merged.push_back(piece);
      strands.front() = merged;
      strands.pop_back();
    }
  }
  if (strands.size() != 1) return false;

  // Sample the strand's clipped points in traversal order.
  std::vector<Point> pts;
  for (const Piece& piece : strands.front()) {
    const Point& a = curve.vertex(piece.edge);
    const Point& b = curve.vertex(piece.edge + 1);
    if (pts.empty()) pts.push_back(a + piece.t0 * (b - a));
    if (piece.t1 > piece.t0) pts.push_back(a + piece.t1 * (b - a));
  }
  if (pts.size() < 2) return false;

  int sx = 0, sy = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1].x() - pts[i].x();
    const double dy = pts[i + 1].y() - pts[i].y();
    if (dx == 0.0 || dy == 0.0) return false;  // axis-parallel step
    const int nsx = dx > 0 ? 1 : -1;
    const int nsy = dy > 0 ? 1 : -1;
    if (sx == 0) {
      sx = nsx;
      sy = nsy;
    } else if (nsx != sx || nsy != sy) {
      return false;
    }
  }
  if (sx == sy) return false;  // same sense: not a top-right crossing

  // Endpoint sides: one endpoint on the right edge, the other on the top.
  const double side_tol = 1e-9 * rect.h;
  const Point& e0 = pts.front();
  const Point& e1 = pts.back();
  const Point& on_right = e0.x() > e1.x() ? e0 : e1;
  const Point& on_top = e0.x() > e1.x() ? e1 : e0;
  if (std::abs(on_right.x() - (rect.x0 + rect.h)) > side_tol) return false;
  if (std::abs(on_top.y() - (rect.y0 + rect.h)) > side_tol) return false;

  // Mid-line crossings inside the probe windows. x is strictly monotone
  // along the strand, so each line is crossed at most once.
  const double margin = 0.02 * rect.h;
  const double bx = rect.x0 + 2.0 * rect.h / 3.0;
  const double by = rect.y0 + 2.0 * rect.h / 3.0;
  double y_at_bx = std::numeric_limits<double>::quiet_NaN();
  double x_at_by = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point& p = pts[i];
    const Point& q = pts[i + 1];
    if ((p.x() - bx) * (q.x() - bx) <= 0.0 && p.x() != q.x()) {
      const double t = (bx - p.x()) / (q.x() - p.x());
      y_at_bx = p.y() + t * (q.y() - p.y());
    }
    if ((p.y() - by) * (q.y() - by) <= 0.0 && p.y() != q.y()) {
      const double t = (by - p.y()) / (q.y() - p.y());
      x_at_by = p.x() + t * (q.x() - p.x());
    }
  }
  if (!(y_at_bx > rect.y0 + rect.h / 3.0 + margin && y_at_bx < by - margin)) return false;
  if (!(x_at_by > rect.x0 + rect.h / 3.0 + margin && x_at_by < bx - margin)) return false;

  // The strand must avoid the probe blocks below-left of a and d.
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (segment_in_box(pts[i], pts[i + 1], rect.x0 - rect.h, rect.y0 - rect.h,
                       rect.x0 + rect.h / 3.0, rect.y0 + 2.0 * rect.h / 3.0) ||
        segment_in_box(pts[i], pts[i + 1], rect.x0 - rect.h, rect.y0 - rect.h,
                       rect.x0 + 2.0 * rect.h / 3.0, rect.y0 + rect.h / 3.0)) {
      return false;
    }
  }

  // Probe points must avoid the curve.
  for (const Point& probe : {rect.a(), rect.b(), rect.c(), rect.d(), rect.v()}) {
    for (int i = 0; i < n; ++i) {
      const Point& a = curve.vertex(i);
      const Point& b = curve.vertex(i + 1);
      const Point d = b - a;
      const double len2 = d.squaredNorm();
      const double t = len2 > 0 ? std::clamp((probe - a).dot(d) / len2, 0.0, 1.0) : 0.0;
      if ((probe - (a + t * d)).norm() < 1e-9 * rect.h) return false;
    }
  }
  return true;
}

// Places a probe cell over the curve point at parameter theta so that the
// local strand crosses the probe windows; returns nothing when the local
// slope is unsuitable. The certifier remains the authority.
inline std::optional<ProbeRectangle> aim_transversal_cell(const SampledCurve& curve,
                                                          double theta, double h) {
  const double step = curve.parameter_step();
  const int edge = static_cast<int>(std::floor(theta / step)) % curve.size();
  const Point d = curve.vertex(edge + 1) - curve.vertex(edge);
  if (d.x() == 0.0 || d.y() == 0.0) return std::nullopt;
  if ((d.x() > 0.0) == (d.y() > 0.0)) return std::nullopt;  // same sense
  const double lambda = std::abs(d.y() / d.x());
  if (lambda < 0.6 || lambda > 1.4) return std::nullopt;
  // Aim the crossing of the horizontal probe line at normalized x = xc.
  double xc = std::max(1.0 - 0.5867 / lambda, 1.0 / (3.0 * lambda) + 0.035);
  xc = std::min(xc, 0.64);
  const double yc = 2.0 / 3.0 - lambda * (2.0 / 3.0 - xc);
  const double y_in = 2.0 / 3.0 - lambda * (1.0 - xc);
  const double x_top = xc - 1.0 / (3.0 * lambda);
  if (!(yc > 0.345 && yc < 0.656)) return std::nullopt;
  if (!(y_in > 0.02 && y_in < 0.63)) return std::nullopt;
  if (!(x_top > 0.02)) return std::nullopt;
  const Point p = curve.at(theta);
  return ProbeRectangle{p.x() - xc * h, p.y() - (2.0 / 3.0) * h, h};
}

// Thin closed strip around the descending diagonal: two parallel monotone
// strands plus caps. Both strands cross the cell returned by
// two_strand_cell() inside the probe windows, so each contributes one to the
// alternating sum.
inline ProbeRectangle two_strand_cell() { return {0.20835, 0.20835, 0.5}; }

inline SampledCurve two_strand_loop(int per_side = 40) {
  std::vector<Point> v;
  const Point start(0.0, 1.0), end(1.0, 0.0);
  const Point normal(std::sqrt(0.5), std::sqrt(0.5));
  const double w = 0.05;
  for (int i = 0; i < per_side; ++i) {
    const double t = static_cast<double>(i) / per_side;
    v.push_back((1.0 - t) * start + t * end + w * normal);
  }
  for (int i = 0; i < 6; ++i) {  // cap around `end`
    const double a = (0.25 + 0.5 * i / 6.0) * 3.14159265358979323846;
    v.push_back(end + w * Point(std::sin(a), std::cos(a)));
  }
  for (int i = 0; i < per_side; ++i) {
    const double t = static_cast<double>(i) / per_side;
    v.push_back((1.0 - t) * end + t * start - w * normal);
  }
  for (int i = 0; i < 6; ++i) {  // cap around `start`
    const double a = (1.25 + 0.5 * i / 6.0) * 3.14159265358979323846;
    v.push_back(start + w * Point(std::sin(a), std::cos(a)));
  }
  return SampledCurve(std::move(v));
}

}  // namespace fixtures

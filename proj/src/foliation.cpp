#include "curvesig/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvesig {

AdmissibleLine AdmissibleLine::from_angle_offset(double phi, double beta) {
  if (!(phi > 0.0 && phi < std::numbers::pi / 2.0)) {
    throw InvalidQuery("admissible line angle must lie strictly inside (0, pi/2)");
  }
  AdmissibleLine line;
  line.direction = Eigen::Vector2d(std::cos(phi), std::sin(phi));
  line.offset = Eigen::Vector2d(beta, -beta);
  return line;
}

AdmissibleLine LineGrid::line(int k, int m) const {
  if (k < 0 || k >= K || m < 0 || m >= M) {
    throw InvalidQuery("line grid index out of range");
  }
  const double phi = std::numbers::pi * (k + 1) / (2.0 * (K + 1));
  const double beta = (M == 1) ? 0.0 : -B + 2.0 * B * m / (M - 1);
  return AdmissibleLine::from_angle_offset(phi, beta);
}

LineGrid default_grid(const SampledCurve& f, const SampledCurve& g, int K, int M) {
  if (K < 1 || M < 1) throw InvalidQuery("line grid requires K >= 1 and M >= 1");
  LineGrid grid;
  grid.K = K;
  grid.M = M;
  grid.B = 2.0 * std::max(f.max_abs_coordinate(), g.max_abs_coordinate()) + 1.0;
  return grid;
}

namespace {

double reduce_value(const Point& p, const AdmissibleLine& line) {
  const double a = (p.x() - line.offset.x()) / line.direction.x();
  const double b = (p.y() - line.offset.y()) / line.direction.y();
  return line.weight() * std::max(a, b);
}

}  // namespace

std::vector<double> reduce(const SampledCurve& curve, const AdmissibleLine& line) {
  std::vector<double> values;
  values.reserve(static_cast<size_t>(curve.size()));
  for (const Point& p : curve.vertices()) values.push_back(reduce_value(p, line));
  return values;
}

std::vector<double> reduced_profile(const SampledCurve& curve,
                                    const AdmissibleLine& line) {
  const int n = curve.size();
  const double w = line.weight();
  std::vector<double> values;
  values.reserve(static_cast<size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const Point& p = curve.vertex(i);
    const Point& q = curve.vertex(i + 1);
    values.push_back(reduce_value(p, line));
    // Branch switch of the max inside the edge: the reduced function is
    // piecewise linear with one breakpoint there, which can be a local
    // minimum, so it must appear in the profile. Endpoints are taken in
    // canonical order so the breakpoint value is bitwise identical for the
    // reversed traversal of the same edge.
    const bool swap_ends = q.x() < p.x() || (q.x() == p.x() && q.y() < p.y());
    const Point& lo = swap_ends ? q : p;
    const Point& hi = swap_ends ? p : q;
    const double a0 = (lo.x() - line.offset.x()) / line.direction.x();
    const double b0 = (lo.y() - line.offset.y()) / line.direction.y();
    const double a1 = (hi.x() - line.offset.x()) / line.direction.x();
    const double b1 = (hi.y() - line.offset.y()) / line.direction.y();
    const double d0 = a0 - b0;
    const double d1 = a1 - b1;
    if ((d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0)) {
      const double t = d0 / (d0 - d1);
      const double at = a0 + t * (a1 - a0);
      values.push_back(w * at);
    }
  }
  return values;
}

PersistenceDiagram line_diagram(const SampledCurve& curve, const AdmissibleLine& line) {
  return circle_diagram(reduced_profile(curve, line));
}

int rank_via_line(const SampledCurve& curve, const AdmissibleLine& line, double s,
                  double t) {
  if (!(s < t)) throw InvalidQuery("rank_via_line requires s < t");
  const double w = line.weight();
  return diagram_rank(line_diagram(curve, line), w * s, w * t);
}

}  // namespace curvesig

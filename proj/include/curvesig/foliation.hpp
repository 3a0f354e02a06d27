#pragma once

#include <vector>

#include "curvesig/curve.hpp"
#include "curvesig/persistence.hpp"

namespace curvesig {

/// Positive-slope line of the half-plane foliation: unit direction l with
/// both components in (0, 1), offset b with b1 + b2 = 0. The point at
/// parameter s is s*l + b.
struct AdmissibleLine {
  Eigen::Vector2d direction = Eigen::Vector2d(0.0, 0.0);
  Eigen::Vector2d offset = Eigen::Vector2d(0.0, 0.0);

  /// phi in (0, pi/2): direction (cos phi, sin phi), offset (beta, -beta).
  static AdmissibleLine from_angle_offset(double phi, double beta);

  double weight() const { return std::min(direction.x(), direction.y()); }
  Point point_at(double s) const { return s * direction + offset; }
};

/// Discretization of the space of admissible lines: K directions at angles
/// phi_k = pi*k/(2*(K+1)), k = 1..K, and M offsets beta uniform in [-B, B].
struct LineGrid {
  int K = 1;
  int M = 1;
  double B = 1.0;

  AdmissibleLine line(int k, int m) const;  // k in [0, K), m in [0, M)
};

/// Grid with the default offset half-range
/// B = 2 * (max absolute vertex coordinate of f and g) + 1.
LineGrid default_grid(const SampledCurve& f, const SampledCurve& g, int K, int M);

/// Reduction of the curve along the line, evaluated at the vertices:
/// F(theta_i) = min(l1,l2) * max((f1-b1)/l1, (f2-b2)/l2).
std::vector<double> reduce(const SampledCurve& curve, const AdmissibleLine& line);

/// Reduction evaluated exactly on the polyline: vertex values plus the value
/// at each edge-interior branch switch of the max. The result is a cyclic
/// value sequence on which the piecewise-linear reduced function is linear
/// between consecutive entries, so circle_diagram of it is the exact diagram
/// of the reduced function.
std::vector<double> reduced_profile(const SampledCurve& curve,
                                    const AdmissibleLine& line);

/// Exact 0th sublevel diagram of the reduced function along the line.
PersistenceDiagram line_diagram(const SampledCurve& curve,
                                const AdmissibleLine& line);

/// diagram_rank of the reduced diagram at (w*s, w*t), w = min(l1,l2);
/// equals rank_h0(curve, s*l + b, t*l + b). Requires s < t.
int rank_via_line(const SampledCurve& curve, const AdmissibleLine& line,
                  double s, double t);

}  // namespace curvesig

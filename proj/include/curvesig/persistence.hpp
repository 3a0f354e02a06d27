#pragma once

#include <vector>

#include "curvesig/curve.hpp"

namespace curvesig {

/// A finite persistence pair; birth < death always holds (zero-length pairs
/// are dropped where diagrams are built).
struct CornerPoint {
  double birth = 0.0;
  double death = 0.0;
};

/// 0th sublevel persistence of a scalar function on the circle: finite pairs
/// plus essential births (death = +inf). For a connected circle there is
/// exactly one essential birth, the global minimum value.
struct PersistenceDiagram {
  std::vector<CornerPoint> finite;
  std::vector<double> essential;
};

/// Maximal closed parameter arc [start, end] traversed counterclockwise;
/// both endpoints lie in [0, 2*pi). end < start encodes wrapping through 0.
/// start == end is a single-point arc.
struct Arc {
  double start = 0.0;
  double end = 0.0;
};

struct ArcSet {
  std::vector<Arc> arcs;  // empty when full_circle
  bool full_circle = false;

  bool empty() const { return !full_circle && arcs.empty(); }
};

/// Exact sublevel set {theta : f1(theta) <= v1 and f2(theta) <= v2} of the
/// piecewise-linear interpolant, computed by closed-form per-edge clipping.
/// Sublevel sets are closed; arcs touching at a point are merged.
ArcSet sublevel_arcs(const SampledCurve& curve, const Point& v);

/// Direct rank oracle: the number of connected components of the v-sublevel
/// set containing at least one point of the u-sublevel set. Requires
/// u1 < v1 and u2 < v2.
int rank_h0(const SampledCurve& curve, const Point& u, const Point& v);

/// 0th sublevel persistence of cyclic vertex values. Edges enter the
/// filtration at the larger endpoint value (lower-star); merges follow the
/// elder rule with ties broken by vertex index (lower index = elder).
PersistenceDiagram circle_diagram(const std::vector<double>& values);

/// Persistent Betti number of the diagram:
/// #{(b,d) finite : b <= s and d > t} + #{b essential : b <= s}.
/// Requires s <= t.
int diagram_rank(const PersistenceDiagram& diagram, double s, double t);

}  // namespace curvesig

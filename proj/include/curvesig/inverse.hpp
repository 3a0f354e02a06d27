#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "curvesig/curve.hpp"
#include "curvesig/persistence.hpp"

namespace curvesig {

/// Square probe cell with bottom-left corner (x0, y0) and side h. The four
/// probe points sit at cell thirds,
///   a = (x0+h/3, y0+2h/3), b = (x0+2h/3, y0+2h/3),
///   c = (x0+h/3, y0+h/3),  d = (x0+2h/3, y0+h/3),
/// and v is the top-right corner, so a1 = c1 < b1 = d1 < v1 and
/// c2 = d2 < a2 = b2 < v2.
struct ProbeRectangle {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;

  Point a() const { return {x0 + h / 3.0, y0 + 2.0 * h / 3.0}; }
  Point b() const { return {x0 + 2.0 * h / 3.0, y0 + 2.0 * h / 3.0}; }
  Point c() const { return {x0 + h / 3.0, y0 + h / 3.0}; }
  Point d() const { return {x0 + 2.0 * h / 3.0, y0 + h / 3.0}; }
  Point v() const { return {x0 + h, y0 + h}; }
};

/// Image of the cell under a reflection, renormalized to a bottom-left
/// corner so the probe configuration holds in the reflected frame.
ProbeRectangle reflect_probe(const ProbeRectangle& rect, Reflection s);

/// Abstract rank-query interface: q(s, u, v) must equal the persistent Betti
/// number of the reflected function at (u, v) and satisfy its monotonicity.
class RankOracle {
 public:
  virtual ~RankOracle() = default;
  virtual int rank(Reflection s, const Point& u, const Point& v) const = 0;
};

/// Oracle backed by the direct rank computation on a sampled curve; the four
/// reflected copies are precomputed.
class CurveRankOracle final : public RankOracle {
 public:
  explicit CurveRankOracle(const SampledCurve& curve);
  int rank(Reflection s, const Point& u, const Point& v) const override;
  const SampledCurve& reflected(Reflection s) const;

 private:
  std::vector<SampledCurve> reflected_;
};

/// q(s,b,v) - q(s,d,v) - q(s,a,v) + q(s,c,v) with the rectangle's probe
/// points. Zero when the cell misses the reflected image; one per strand
/// crossing the cell top-right transversally.
int alternating_sum(const RankOracle& oracle, Reflection s, const ProbeRectangle& rect);

struct BoundingBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
};

struct OccupancyGrid {
  BoundingBox bbox;
  double cell = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> occupied;  // row-major, index iy*nx + ix
  /// Cells detected only through the half-offset fallback (axis-parallel
  /// tangency handling).
  std::vector<std::pair<int, int>> flagged_axis_cells;

  bool at(int ix, int iy) const { return occupied[static_cast<size_t>(iy) * nx + ix] != 0; }
  Point cell_center(int ix, int iy) const {
    return {bbox.xmin + (ix + 0.5) * cell, bbox.ymin + (iy + 0.5) * cell};
  }
};

/// Reconstruction of the curve image from rank queries alone. A cell is
/// occupied when some reflection yields a nonzero alternating sum on it; a
/// cell whose four sums all vanish but where some half-offset cell (shifted
/// by cell/2 along an axis) yields a nonzero sum is occupied and flagged.
OccupancyGrid reconstruct_image(const RankOracle& oracle, const BoundingBox& bbox,
                                double cell);

/// Sampled reparameterization h with g(h(theta_i)) ~ f(theta_i).
struct ReparamResult {
  /// Parameter in g's circle for each f vertex.
  std::vector<double> params;
  /// max_i |f(theta_i) - g(h(theta_i))| over the chosen correspondences.
  double residual = 0.0;
  int orientation = 1;  // +1 or -1
  /// When every correspondence lands exactly on a g vertex and the sample
  /// counts agree: the shift with g == reparameterize(f, shift, orientation).
  std::optional<int> shift;
};

/// Nearest-point correspondence from f vertices onto g's polyline, with
/// tangent-direction disambiguation at double points of g. Raises
/// NoCorrespondence when some nearest distance exceeds tol and NotMonotone
/// when the assembled circle map is not cyclically monotone of degree +-1.
/// Both curves are expected generic (the caller runs check_generic).
ReparamResult build_reparameterization(const SampledCurve& f, const SampledCurve& g,
                                       double tol);

}  // namespace curvesig

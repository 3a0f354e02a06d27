#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "curvesig/errors.hpp"

namespace curvesig {

using Point = Eigen::Vector2d;

/// Closed polyline on the circle, sampled at uniformly spaced parameters
/// theta_i = 2*pi*i/N and closed by the edge from vertex N-1 back to vertex 0.
/// Intermediate parameters are evaluated by piecewise-linear interpolation.
///
/// Construction requires N >= 8 and finite coordinates. Coincident
/// consecutive vertices are representable (so that degenerate inputs can be
/// loaded and diagnosed); check_generic raises DegenerateCurve for them.
class SampledCurve {
 public:
  explicit SampledCurve(std::vector<Point> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  double parameter_step() const;
  double theta(int i) const;

  /// Vertex access; the index is taken modulo N.
  const Point& vertex(int i) const;
  const std::vector<Point>& vertices() const { return vertices_; }

  /// Piecewise-linear interpolation at an arbitrary parameter.
  Point at(double theta) const;

  /// Axis-aligned bounding box (min corner, max corner).
  std::pair<Point, Point> bounding_box() const;
  double bounding_box_diagonal() const;
  double max_abs_coordinate() const;

 private:
  std::vector<Point> vertices_;
};

/// The four-element group generated by the coordinate-axis reflections
/// s1(x, y) = (-x, y) and s2(x, y) = (x, -y).
enum class Reflection : int { Id = 0, S1 = 1, S2 = 2, S1S2 = 3 };

inline constexpr std::array<Reflection, 4> kAllReflections = {
    Reflection::Id, Reflection::S1, Reflection::S2, Reflection::S1S2};

Point apply(Reflection s, const Point& p);
Reflection compose(Reflection a, Reflection b);
const char* to_string(Reflection s);
std::optional<Reflection> parse_reflection(std::string_view name);

/// A transversal self-intersection between two non-adjacent edges.
/// `angle` is the angle between the two tangent lines, in (0, pi/2].
struct DoublePoint {
  int edge_a = 0;
  int edge_b = 0;
  Point where = Point::Zero();
  double angle = 0.0;
};

struct GenericityReport {
  bool is_immersion = false;
  double min_speed = 0.0;  // min edge length divided by the parameter step
  std::vector<DoublePoint> double_points;
  /// Non-adjacent edge pairs in contact along a common tangent line
  /// (collinear overlap or collinear touch). Any entry makes the curve
  /// non-clean.
  std::vector<std::pair<int, int>> overlapping_pairs;
  bool all_clean = false;
  bool is_generic = false;
};

struct ClassBoundReport {
  bool radius_ok = false;
  bool length_ok = false;
  bool curvature_ok = false;
  double measured_radius = 0.0;
  double measured_length = 0.0;
  double max_curvature = 0.0;
  double k = 0.0;
  /// The neighborhood-genericity condition quantifies over a C^1 ball and is
  /// not decidable from one sample; it is reported unchecked.
  bool neighborhood_condition_evaluated = false;
};

SampledCurve reflect(const SampledCurve& curve, Reflection s);

/// Output vertex i = input vertex (orientation*i + shift mod N).
/// orientation must be +1 or -1.
SampledCurve reparameterize(const SampledCurve& curve, int shift, int orientation);

inline constexpr double kDefaultAngleTolerance = 1e-3;

/// Scale-relative default immersion threshold:
/// 1e-6 times the bounding-box diagonal.
double default_speed_tolerance(const SampledCurve& curve);

GenericityReport check_generic(const SampledCurve& curve, double tol_speed,
                               double tol_angle);
GenericityReport check_generic(const SampledCurve& curve);

ClassBoundReport check_class_bound(const SampledCurve& curve, double k);

enum class CurveKind {
  Circle,
  Ellipse,
  RandomGeneric,
  Fig2AnalogA,
  Fig2AnalogB,
  Fig3AnalogA,
  Fig3AnalogB,
};

const char* to_string(CurveKind kind);
std::optional<CurveKind> parse_curve_kind(std::string_view name);

struct GenerateParams {
  double radius = 1.0;   // circle
  double semi_a = 2.0;   // ellipse, x semi-axis
  double semi_b = 1.0;   // ellipse, y semi-axis
};

/// Deterministic corpus generator. `seed` only affects RandomGeneric.
/// RandomGeneric rejection-samples smooth trigonometric curves until
/// check_generic passes and raises RejectionExhausted after 100 failures.
SampledCurve generate(CurveKind kind, int samples, std::uint64_t seed,
                      const GenerateParams& params = {});

}  // namespace curvesig

#include "curvesig/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace curvesig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

SampledCurve::SampledCurve(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 8) {
    throw InvalidQuery("SampledCurve requires at least 8 vertices, got " +
                       std::to_string(vertices_.size()));
  }
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) {
      throw InvalidQuery("SampledCurve vertices must be finite");
    }
  }
}

double SampledCurve::parameter_step() const { return kTwoPi / size(); }

double SampledCurve::theta(int i) const { return kTwoPi * i / size(); }

const Point& SampledCurve::vertex(int i) const {
  const int n = size();
  int j = i % n;
  if (j < 0) j += n;
  return vertices_[static_cast<size_t>(j)];
}

Point SampledCurve::at(double theta) const {
  const int n = size();
  double u = std::fmod(theta, kTwoPi);
  if (u < 0) u += kTwoPi;
  const double scaled = u / parameter_step();
  int i = static_cast<int>(std::floor(scaled));
  if (i >= n) i = n - 1;
  const double t = scaled - i;
  return (1.0 - t) * vertex(i) + t * vertex(i + 1);
}

std::pair<Point, Point> SampledCurve::bounding_box() const {
  Point lo = vertices_.front();
  Point hi = vertices_.front();
  for (const Point& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

double SampledCurve::bounding_box_diagonal() const {
  auto [lo, hi] = bounding_box();
  return (hi - lo).norm();
}

double SampledCurve::max_abs_coordinate() const {
  double m = 0.0;
  for (const Point& p : vertices_) m = std::max({m, std::abs(p.x()), std::abs(p.y())});
  return m;
}

Point apply(Reflection s, const Point& p) {
  switch (s) {
    case Reflection::Id:
      return p;
    case Reflection::S1:
      return {-p.x(), p.y()};
    case Reflection::S2:
      return {p.x(), -p.y()};
    case Reflection::S1S2:
      return {-p.x(), -p.y()};
  }
  return p;
}

Reflection compose(Reflection a, Reflection b) {
  // The group is Z2 x Z2 with the enum value acting as a bit mask.
  return static_cast<Reflection>(static_cast<int>(a) ^ static_cast<int>(b));
}

const char* to_string(Reflection s) {
  switch (s) {
    case Reflection::Id:
      return "id";
    case Reflection::S1:
      return "s1";
    case Reflection::S2:
      return "s2";
    case Reflection::S1S2:
      return "s1s2";
  }
  return "id";
}

std::optional<Reflection> parse_reflection(std::string_view name) {
  for (Reflection s : kAllReflections) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

SampledCurve reflect(const SampledCurve& curve, Reflection s) {
  std::vector<Point> out;
  out.reserve(curve.size());
  for (const Point& p : curve.vertices()) out.push_back(apply(s, p));
  return SampledCurve(std::move(out));
}

SampledCurve reparameterize(const SampledCurve& curve, int shift, int orientation) {
  if (orientation != 1 && orientation != -1) {
    throw InvalidQuery("reparameterize orientation must be +1 or -1");
  }
  const int n = curve.size();
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    long long j = static_cast<long long>(orientation) * i + shift;
    j %= n;
    if (j < 0) j += n;
    out.push_back(curve.vertex(static_cast<int>(j)));
  }
  return SampledCurve(std::move(out));
}

double default_speed_tolerance(const SampledCurve& curve) {
  return 1e-6 * curve.bounding_box_diagonal();
}

namespace {

// Classification of one non-adjacent edge pair.
enum class SegContact { None, Crossing, CollinearContact };

struct SegHit {
  SegContact contact = SegContact::None;
  Point where = Point::Zero();
};

bool on_segment_collinear(const Point& a, const Point& b, const Point& p) {
  // p assumed collinear with a-b
  const double lo_x = std::min(a.x(), b.x()), hi_x = std::max(a.x(), b.x());
  const double lo_y = std::min(a.y(), b.y()), hi_y = std::max(a.y(), b.y());
  return p.x() >= lo_x && p.x() <= hi_x && p.y() >= lo_y && p.y() <= hi_y;
}

// Orientation sign with a relative sine threshold: consecutive samples of a
// straight stretch are collinear only up to rounding, and must not be
// reported as shallow crossings.
int orientation_sign(const Point& dir, const Point& rel) {
  const double cr = cross2(dir, rel);
  if (std::abs(cr) <= 1e-12 * dir.norm() * rel.norm()) return 0;
  return cr > 0.0 ? 1 : -1;
}

SegHit classify_segments(const Point& p1, const Point& p2, const Point& q1,
                         const Point& q2) {
  const Point r = p2 - p1;
  const Point s = q2 - q1;
  const int d1 = orientation_sign(r, q1 - p1);
  const int d2 = orientation_sign(r, q2 - p1);
  const int d3 = orientation_sign(s, p1 - q1);
  const int d4 = orientation_sign(s, p2 - q1);

  SegHit hit;
  if (d1 == 0 && d2 == 0) {
    // Collinear: any shared point means contact along a common tangent line.
    if (on_segment_collinear(p1, p2, q1) || on_segment_collinear(p1, p2, q2) ||
        on_segment_collinear(q1, q2, p1) || on_segment_collinear(q1, q2, p2)) {
      hit.contact = SegContact::CollinearContact;
    }
    return hit;
  }
  if (d1 * d2 <= 0 && d3 * d4 <= 0) {
    // Straddling on both sides (endpoint touches included).
    const double denom = cross2(r, s);
    if (std::abs(denom) <= 1e-12 * r.norm() * s.norm()) return hit;  // parallel
    const double t = std::clamp(cross2(q1 - p1, s) / denom, 0.0, 1.0);
    hit.contact = SegContact::Crossing;
    hit.where = p1 + t * r;
  }
  return hit;
}

double line_angle(const Point& u, const Point& v) {
  return std::atan2(std::abs(cross2(u, v)), std::abs(u.dot(v)));
}

}  // namespace

GenericityReport check_generic(const SampledCurve& curve, double tol_speed,
                               double tol_angle) {
  const int n = curve.size();
  GenericityReport report;

  double min_len = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double len = (curve.vertex(i + 1) - curve.vertex(i)).norm();
    if (len == 0.0) {
      throw DegenerateCurve("zero-length edge at index " + std::to_string(i));
    }
    min_len = std::min(min_len, len);
  }
  report.min_speed = min_len / curve.parameter_step();
  report.is_immersion = report.min_speed >= tol_speed;

  double min_angle = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap edge
      const Point& a = curve.vertex(i);
      const Point& b = curve.vertex(i + 1);
      const Point& c = curve.vertex(j);
      const Point& d = curve.vertex(j + 1);
      const SegHit hit = classify_segments(a, b, c, d);
      if (hit.contact == SegContact::CollinearContact) {
        report.overlapping_pairs.emplace_back(i, j);
      } else if (hit.contact == SegContact::Crossing) {
        DoublePoint dp;
        dp.edge_a = i;
        dp.edge_b = j;
        dp.where = hit.where;
        dp.angle = line_angle(b - a, d - c);
        min_angle = std::min(min_angle, dp.angle);
        report.double_points.push_back(dp);
      }
    }
  }

  report.all_clean = report.overlapping_pairs.empty() &&
                     (report.double_points.empty() || min_angle >= tol_angle);
  report.is_generic = report.is_immersion && report.all_clean;
  return report;
}

GenericityReport check_generic(const SampledCurve& curve) {
  return check_generic(curve, default_speed_tolerance(curve), kDefaultAngleTolerance);
}

ClassBoundReport check_class_bound(const SampledCurve& curve, double k) {
  if (!(k > 0.0)) throw InvalidQuery("class bound k must be positive");
  const int n = curve.size();
  ClassBoundReport report;
  report.k = k;

  for (const Point& p : curve.vertices()) {
    report.measured_radius = std::max(report.measured_radius, p.norm());
  }
  for (int i = 0; i < n; ++i) {
    report.measured_length += (curve.vertex(i + 1) - curve.vertex(i)).norm();
  }
  for (int i = 0; i < n; ++i) {
    const Point& a = curve.vertex(i - 1);
    const Point& b = curve.vertex(i);
    const Point& c = curve.vertex(i + 1);
    const double area2 = std::abs(cross2(b - a, c - a));
    if (area2 == 0.0) continue;  // collinear triple: curvature 0
    const double denom = (b - a).norm() * (c - b).norm() * (c - a).norm();
    report.max_curvature = std::max(report.max_curvature, 2.0 * area2 / denom);
  }

  report.radius_ok = report.measured_radius <= k;
  report.length_ok = report.measured_length <= k;
  report.curvature_ok = report.max_curvature <= k;
  return report;
}

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Circle:
      return "circle";
    case CurveKind::Ellipse:
      return "ellipse";
    case CurveKind::RandomGeneric:
      return "random-generic";
    case CurveKind::Fig2AnalogA:
      return "fig2-analog-a";
    case CurveKind::Fig2AnalogB:
      return "fig2-analog-b";
    case CurveKind::Fig3AnalogA:
      return "fig3-analog-a";
    case CurveKind::Fig3AnalogB:
      return "fig3-analog-b";
  }
  return "circle";
}

std::optional<CurveKind> parse_curve_kind(std::string_view name) {
  for (CurveKind k :
       {CurveKind::Circle, CurveKind::Ellipse, CurveKind::RandomGeneric,
        CurveKind::Fig2AnalogA, CurveKind::Fig2AnalogB, CurveKind::Fig3AnalogA,
        CurveKind::Fig3AnalogB}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

// Platform-independent uniform doubles from mt19937_64 bits.
struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::mt19937_64 eng;
};

SampledCurve make_circle(int n, double radius) {
  std::vector<Point> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    v.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  return SampledCurve(std::move(v));
}

SampledCurve make_ellipse(int n, double a, double b) {
  std::vector<Point> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    v.emplace_back(a * std::cos(t), b * std::sin(t));
  }
  return SampledCurve(std::move(v));
}

SampledCurve make_random_generic(int n, std::uint64_t seed) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(seed * 1000003ull + static_cast<std::uint64_t>(attempt));
    // Base loop plus a low-degree trigonometric field keeps rejections rare.
    std::array<double, 2> a0{};
    std::array<std::array<double, 3>, 2> ac{}, as{};
    for (int c = 0; c < 2; ++c) {
      a0[c] = rng.uniform(-0.3, 0.3);
      for (int m = 0; m < 3; ++m) {
        const double scale = 0.55 / ((m + 1) * (m + 1));
        ac[c][m] = rng.uniform(-scale, scale);
        as[c][m] = rng.uniform(-scale, scale);
      }
    }
    std::vector<Point> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      double x = 1.2 * std::cos(t) + a0[0];
      double y = 1.2 * std::sin(t) + a0[1];
      for (int m = 0; m < 3; ++m) {
        x += ac[0][m] * std::cos((m + 1) * t) + as[0][m] * std::sin((m + 1) * t);
        y += ac[1][m] * std::cos((m + 1) * t) + as[1][m] * std::sin((m + 1) * t);
      }
      v.emplace_back(x, y);
    }
    try {
      SampledCurve curve(std::move(v));
      if (check_generic(curve).is_generic) return curve;
    } catch (const DegenerateCurve&) {
      // fall through to the next attempt
    }
  }
  throw RejectionExhausted("random-generic rejection sampling failed 100 times for seed " +
                           std::to_string(seed));
}

// Largest-remainder allocation of `total` samples over weights, each part >= 1.
std::vector<int> allocate(const std::vector<double>& weights, int total) {
  const int parts = static_cast<int>(weights.size());
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> counts(parts, 1);
  int used = parts;
  std::vector<std::pair<double, int>> frac;
  for (int i = 0; i < parts; ++i) {
    const double quota = weights[i] / sum * total;
    const int extra = std::max(0, static_cast<int>(std::floor(quota)) - 1);
    counts[i] += extra;
    used += extra;
    frac.emplace_back(quota - std::floor(quota), i);
  }
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  for (int i = 0; used < total; ++i) {
    counts[frac[static_cast<size_t>(i) % frac.size()].second] += 1;
    ++used;
  }
  while (used > total) {  // tiny sample counts only
    auto it = std::max_element(counts.begin(), counts.end());
    if (*it <= 1) break;
    --*it;
    --used;
  }
  return counts;
}

// Closed polygonal path through anchor points, sampled with counts[i] vertices
// on the arc from anchors[i] to anchors[i+1] (start included, end excluded).
std::vector<Point> sample_polygon(const std::vector<Point>& anchors,
                                  const std::vector<int>& counts) {
  std::vector<Point> v;
  const int parts = static_cast<int>(anchors.size());
  for (int i = 0; i < parts; ++i) {
    const Point& p = anchors[static_cast<size_t>(i)];
    const Point& q = anchors[static_cast<size_t>((i + 1) % parts)];
    const int c = counts[static_cast<size_t>(i)];
    for (int j = 0; j < c; ++j) {
      const double t = static_cast<double>(j) / c;
      v.push_back((1.0 - t) * p + t * q);
    }
  }
  return v;
}

// Hexagon pair through three tips and three saddles. The tips form a
// componentwise chain and saddle Z is componentwise below saddles X and Y, so
// the reduced diagrams of the two wirings coincide along every admissible
// line while the images differ (the wirings swap which saddle joins which
// tips). Reflections expose the difference.
SampledCurve make_fig2(int n, bool variant_a) {
  const Point tip_a(0.0, 0.0), tip_b(0.9, 1.3), tip_c(2.1, 1.9);
  const Point saddle_x(3.6, 3.9), saddle_y(4.4, 3.3), saddle_z(3.05, 2.42);
  std::vector<Point> anchors;
  if (variant_a) {
    anchors = {tip_a, saddle_x, tip_b, saddle_y, tip_c, saddle_z};
  } else {
    anchors = {tip_a, saddle_y, tip_b, saddle_x, tip_c, saddle_z};
  }
  std::vector<double> weights;
  for (size_t i = 0; i < anchors.size(); ++i) {
    weights.push_back((anchors[(i + 1) % anchors.size()] - anchors[i]).norm());
  }
  return SampledCurve(sample_polygon(anchors, allocate(weights, n)));
}

// Theta-graph with a doubled wall: a vertical segment W at x = 0 traversed
// twice plus left and right lobes between its endpoints. The two traversal
// orders share the image but are not reparameterizations of each other; the
// overlapping wall passes make both curves non-clean.
SampledCurve make_fig3(int n, bool variant_a) {
  // Pass sample counts; both variants must emit bitwise-identical pass
  // geometry, so lobe parameters are always integer fractions j/m.
  const int wall_n = std::max(1, static_cast<int>(std::lround(n / 6.2)));
  const int lobe_right = std::max(1, (n - 2 * wall_n) / 2);
  const int lobe_left = n - 2 * wall_n - lobe_right;
  auto wall_point = [](int j, int m) { return Point(0.0, static_cast<double>(j) / m); };
  auto lobe_point = [](int j, int m, double side) {
    if (j == 0) return Point(0.0, 1.0);  // exact junction coordinates
    if (j == m) return Point(0.0, 0.0);
    const double t = static_cast<double>(j) / m;
    return Point(side * 0.8 * std::sin(std::numbers::pi * t),
                 0.5 * (1.0 + std::cos(std::numbers::pi * t)));
  };

  std::vector<Point> v;
  v.reserve(static_cast<size_t>(n));
  // wall up
  for (int j = 0; j < wall_n; ++j) v.push_back(wall_point(j, wall_n));
  // left lobe down, from (0,1) toward (0,0) (excluded)
  for (int j = 0; j < lobe_left; ++j) v.push_back(lobe_point(j, lobe_left, -1.0));
  if (variant_a) {
    // wall up again, then right lobe down
    for (int j = 0; j < wall_n; ++j) v.push_back(wall_point(j, wall_n));
    for (int j = 0; j < lobe_right; ++j) v.push_back(lobe_point(j, lobe_right, 1.0));
  } else {
    // right lobe up, then wall down
    for (int j = 0; j < lobe_right; ++j) {
      v.push_back(lobe_point(lobe_right - j, lobe_right, 1.0));
    }
    for (int j = 0; j < wall_n; ++j) v.push_back(wall_point(wall_n - j, wall_n));
  }
  return SampledCurve(std::move(v));
}

}  // namespace

SampledCurve generate(CurveKind kind, int samples, std::uint64_t seed,
                      const GenerateParams& params) {
  if (samples < 8) throw InvalidQuery("generate requires samples >= 8");
  switch (kind) {
    case CurveKind::Circle:
      return make_circle(samples, params.radius);
    case CurveKind::Ellipse:
      return make_ellipse(samples, params.semi_a, params.semi_b);
    case CurveKind::RandomGeneric:
      return make_random_generic(samples, seed);
    case CurveKind::Fig2AnalogA:
      return make_fig2(samples, true);
    case CurveKind::Fig2AnalogB:
      return make_fig2(samples, false);
    case CurveKind::Fig3AnalogA:
      return make_fig3(samples, true);
    case CurveKind::Fig3AnalogB:
      return make_fig3(samples, false);
  }
  throw InvalidQuery("unknown curve kind");
}

}  // namespace curvesig

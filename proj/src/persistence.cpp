#include "curvesig/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace curvesig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Feasible t-interval of {p + t*(q-p) <= bound} on [0, 1]; false when empty.
bool axis_interval(double p, double q, double bound, double& t0, double& t1) {
  const double slope = q - p;
  if (slope == 0.0) {
    if (p > bound) return false;
    t0 = 0.0;
    t1 = 1.0;
    return true;
  }
  const double tc = (bound - p) / slope;
  if (slope > 0.0) {
    if (tc < 0.0) return false;
    t0 = 0.0;
    t1 = std::min(1.0, tc);
  } else {
    if (tc > 1.0) return false;
    t0 = std::max(0.0, tc);
    t1 = 1.0;
  }
  return true;
}

struct EdgeInterval {
  int edge = 0;
  double t0 = 0.0;
  double t1 = 0.0;
};

}  // namespace

ArcSet sublevel_arcs(const SampledCurve& curve, const Point& v) {
  const int n = curve.size();
  const double step = curve.parameter_step();

  std::vector<EdgeInterval> feasible;
  feasible.reserve(static_cast<size_t>(n));
  bool all_full = true;
  for (int i = 0; i < n; ++i) {
    const Point& p = curve.vertex(i);
    const Point& q = curve.vertex(i + 1);
    double ax0, ax1, ay0, ay1;
    if (!axis_interval(p.x(), q.x(), v.x(), ax0, ax1) ||
        !axis_interval(p.y(), q.y(), v.y(), ay0, ay1)) {
      all_full = false;
      continue;
    }
    const double t0 = std::max(ax0, ay0);
    const double t1 = std::min(ax1, ay1);
    if (t0 > t1) {
      all_full = false;
      continue;
    }
    if (t0 != 0.0 || t1 != 1.0) all_full = false;
    feasible.push_back({i, t0, t1});
  }

  ArcSet out;
  if (all_full) {
    out.full_circle = true;
    return out;
  }
  if (feasible.empty()) return out;

  // Chain per-edge intervals that share a vertex into maximal arcs.
  struct RawArc {
    double start;
    double end;
    int first_edge;
    int last_edge;
    double last_t1;
  };
  std::vector<RawArc> raw;
  for (const EdgeInterval& e : feasible) {
    const double start = (e.edge + e.t0) * step;
    const double end = (e.edge + e.t1) * step;
    if (!raw.empty() && raw.back().last_edge == e.edge - 1 && raw.back().last_t1 == 1.0 &&
        e.t0 == 0.0) {
      raw.back().end = end;
      raw.back().last_edge = e.edge;
      raw.back().last_t1 = e.t1;
    } else {
      raw.push_back({start, end, e.edge, e.edge, e.t1});
    }
  }
  // Wrap-around merge between the last edge interval and the first one.
  if (raw.size() > 1) {
    const RawArc& tail = raw.back();
    const RawArc& head = raw.front();
    if (tail.last_edge == n - 1 && tail.last_t1 == 1.0 && head.first_edge == 0 &&
        head.start == 0.0) {
      raw.front().start = tail.start;
      raw.front().first_edge = tail.first_edge;
      raw.pop_back();
    }
  }

  out.arcs.reserve(raw.size());
  for (const RawArc& a : raw) {
    Arc arc;
    arc.start = std::fmod(a.start, kTwoPi);
    arc.end = std::fmod(a.end, kTwoPi);
    out.arcs.push_back(arc);
  }
  std::sort(out.arcs.begin(), out.arcs.end(),
            [](const Arc& a, const Arc& b) { return a.start < b.start; });
  return out;
}

namespace {

double arc_length_ccw(const Arc& a) {
  double len = a.end - a.start;
  if (len < 0.0) len += kTwoPi;
  return len;
}

bool arc_contains(const Arc& a, double phi) {
  double d = phi - a.start;
  d = std::fmod(d, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d <= arc_length_ccw(a);
}

}  // namespace

int rank_h0(const SampledCurve& curve, const Point& u, const Point& v) {
  if (!(u.x() < v.x() && u.y() < v.y())) {
    throw InvalidQuery("rank_h0 requires u1 < v1 and u2 < v2");
  }
  const ArcSet at_v = sublevel_arcs(curve, v);
  const ArcSet at_u = sublevel_arcs(curve, u);
  if (at_v.full_circle) return at_u.empty() ? 0 : 1;
  if (at_u.empty()) return 0;
  if (at_u.full_circle) return static_cast<int>(at_v.arcs.size());

  // Each u-arc lies inside exactly one v-arc (D^u is strictly inside D^v).
  std::vector<char> hit(at_v.arcs.size(), 0);
  for (const Arc& ua : at_u.arcs) {
    for (size_t j = 0; j < at_v.arcs.size(); ++j) {
      if (arc_contains(at_v.arcs[j], ua.start)) {
        hit[j] = 1;
        break;
      }
    }
  }
  return static_cast<int>(std::count(hit.begin(), hit.end(), 1));
}

PersistenceDiagram circle_diagram(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 3) throw InvalidQuery("circle_diagram requires at least 3 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidQuery("circle_diagram requires finite values");
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<size_t>(a)] < values[static_cast<size_t>(b)] ||
           (values[static_cast<size_t>(a)] == values[static_cast<size_t>(b)] && a < b);
  });

  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  // birth key of a root: (value, index) of its oldest member
  std::vector<double> birth_value(static_cast<size_t>(n));
  std::vector<int> birth_index(static_cast<size_t>(n));
  std::vector<char> active(static_cast<size_t>(n), 0);

  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };

  PersistenceDiagram diagram;
  for (int idx : order) {
    active[static_cast<size_t>(idx)] = 1;
    birth_value[static_cast<size_t>(idx)] = values[static_cast<size_t>(idx)];
    birth_index[static_cast<size_t>(idx)] = idx;
    const double now = values[static_cast<size_t>(idx)];
    for (int nb : {(idx + n - 1) % n, (idx + 1) % n}) {
      if (!active[static_cast<size_t>(nb)]) continue;
      int ra = find(idx);
      int rb = find(nb);
      if (ra == rb) continue;  // cycle-closing edge, no 0th event
      // elder rule: the component with the smaller (value, index) birth survives
      const bool a_elder =
          birth_value[static_cast<size_t>(ra)] < birth_value[static_cast<size_t>(rb)] ||
          (birth_value[static_cast<size_t>(ra)] == birth_value[static_cast<size_t>(rb)] &&
           birth_index[static_cast<size_t>(ra)] < birth_index[static_cast<size_t>(rb)]);
      const int elder = a_elder ? ra : rb;
      const int young = a_elder ? rb : ra;
      if (birth_value[static_cast<size_t>(young)] < now) {
        diagram.finite.push_back({birth_value[static_cast<size_t>(young)], now});
      }
      parent[static_cast<size_t>(young)] = elder;
    }
  }
  const int root = find(order.front());
  diagram.essential.push_back(birth_value[static_cast<size_t>(root)]);
  std::sort(diagram.finite.begin(), diagram.finite.end(),
            [](const CornerPoint& a, const CornerPoint& b) {
              return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
            });
  return diagram;
}

int diagram_rank(const PersistenceDiagram& diagram, double s, double t) {
  if (s > t) throw InvalidQuery("diagram_rank requires s <= t");
  int rank = 0;
  for (const CornerPoint& p : diagram.finite) {
    if (p.birth <= s && p.death > t) ++rank;
  }
  for (double b : diagram.essential) {
    if (b <= s) ++rank;
  }
  return rank;
}

}  // namespace curvesig

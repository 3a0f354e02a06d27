#include "curvesig/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curvesig/parallel.hpp"

namespace curvesig {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

ProbeRectangle reflect_probe(const ProbeRectangle& rect, Reflection s) {
  ProbeRectangle out = rect;
  switch (s) {
    case Reflection::Id:
      break;
    case Reflection::S1:
      out.x0 = -(rect.x0 + rect.h);
      break;
    case Reflection::S2:
      out.y0 = -(rect.y0 + rect.h);
      break;
    case Reflection::S1S2:
      out.x0 = -(rect.x0 + rect.h);
      out.y0 = -(rect.y0 + rect.h);
      break;
  }
  return out;
}

CurveRankOracle::CurveRankOracle(const SampledCurve& curve) {
  reflected_.reserve(4);
  for (Reflection s : kAllReflections) reflected_.push_back(reflect(curve, s));
}

int CurveRankOracle::rank(Reflection s, const Point& u, const Point& v) const {
  return rank_h0(reflected_[static_cast<size_t>(s)], u, v);
}

const SampledCurve& CurveRankOracle::reflected(Reflection s) const {
  return reflected_[static_cast<size_t>(s)];
}

int alternating_sum(const RankOracle& oracle, Reflection s, const ProbeRectangle& rect) {
  if (!(rect.h > 0.0)) throw InvalidQuery("probe rectangle side must be positive");
  const Point v = rect.v();
  return oracle.rank(s, rect.b(), v) - oracle.rank(s, rect.d(), v) -
         oracle.rank(s, rect.a(), v) + oracle.rank(s, rect.c(), v);
}

namespace {

bool detected(const RankOracle& oracle, const ProbeRectangle& rect) {
  for (Reflection s : kAllReflections) {
    if (alternating_sum(oracle, s, reflect_probe(rect, s)) != 0) return true;
  }
  return false;
}

}  // namespace

OccupancyGrid reconstruct_image(const RankOracle& oracle, const BoundingBox& bbox,
                                double cell) {
  if (!(cell > 0.0)) throw InvalidQuery("cell size must be positive");
  if (!(bbox.xmax > bbox.xmin && bbox.ymax > bbox.ymin)) {
    throw InvalidQuery("bounding box must be nonempty");
  }
  OccupancyGrid grid;
  grid.bbox = bbox;
  grid.cell = cell;
  grid.nx = static_cast<int>(std::ceil((bbox.xmax - bbox.xmin) / cell));
  grid.ny = static_cast<int>(std::ceil((bbox.ymax - bbox.ymin) / cell));
  const int total = grid.nx * grid.ny;
  grid.occupied.assign(static_cast<size_t>(total), 0);
  std::vector<char> flagged(static_cast<size_t>(total), 0);

  parallel_for(total, [&](int idx) {
    const int ix = idx % grid.nx;
    const int iy = idx / grid.nx;
    ProbeRectangle rect;
    rect.x0 = bbox.xmin + ix * cell;
    rect.y0 = bbox.ymin + iy * cell;
    rect.h = cell;
    if (detected(oracle, rect)) {
      grid.occupied[static_cast<size_t>(idx)] = 255;
      return;
    }
    // Half-offset fallback for strands the centered probes cannot see
    // (axis-parallel tangencies in particular).
    const double half = cell / 2.0;
    const double ox[4] = {half, -half, 0.0, 0.0};
    const double oy[4] = {0.0, 0.0, half, -half};
    for (int o = 0; o < 4; ++o) {
      ProbeRectangle shifted = rect;
      shifted.x0 += ox[o];
      shifted.y0 += oy[o];
      if (detected(oracle, shifted)) {
        grid.occupied[static_cast<size_t>(idx)] = 255;
        flagged[static_cast<size_t>(idx)] = 1;
        return;
      }
    }
  });

  // Axis-tangency closure. Strands running parallel to an axis cancel the
  // alternating sum in every reflected frame (the probe pattern has b1 = d1
  // and a2 = b2), so cells at vertical or horizontal tangencies stay
  // undetected even with offset probes. Such cells sit between detected
  // cells along the tangent axis; fill those short gaps and flag them.
  constexpr int kClosureReach = 3;
  auto occupied_at = [&](int ix, int iy) {
    return ix >= 0 && ix < grid.nx && iy >= 0 && iy < grid.ny &&
           grid.occupied[static_cast<size_t>(iy) * grid.nx + ix] != 0;
  };
  std::vector<char> closure(static_cast<size_t>(total), 0);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (occupied_at(ix, iy)) continue;
      bool bridged = false;
      for (const auto& [dx, dy] : {std::pair(1, 0), std::pair(0, 1)}) {
        bool before = false, after = false;
        for (int r = 1; r <= kClosureReach; ++r) {
          before = before || occupied_at(ix - r * dx, iy - r * dy);
          after = after || occupied_at(ix + r * dx, iy + r * dy);
        }
        bridged = bridged || (before && after);
      }
      if (bridged) closure[static_cast<size_t>(iy) * grid.nx + ix] = 1;
    }
  }
  for (int idx = 0; idx < total; ++idx) {
    if (closure[static_cast<size_t>(idx)]) {
      grid.occupied[static_cast<size_t>(idx)] = 255;
      flagged[static_cast<size_t>(idx)] = 1;
    }
  }

  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (flagged[static_cast<size_t>(iy) * grid.nx + ix]) {
        grid.flagged_axis_cells.emplace_back(ix, iy);
      }
    }
  }
  return grid;
}

namespace {

struct EdgeProjection {
  int edge = 0;
  double t = 0.0;
  double distance = std::numeric_limits<double>::infinity();
  Point closest = Point::Zero();
};

EdgeProjection project_to_edge(const SampledCurve& g, int edge, const Point& p) {
  const Point& a = g.vertex(edge);
  const Point& b = g.vertex(edge + 1);
  const Point d = b - a;
  const double len2 = d.squaredNorm();
  EdgeProjection proj;
  proj.edge = edge;
  proj.t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  proj.closest = a + proj.t * d;
  proj.distance = (p - proj.closest).norm();
  return proj;
}

Point vertex_tangent(const SampledCurve& c, int i) {
  return (c.vertex(i + 1) - c.vertex(i - 1)).normalized();
}

Point edge_direction(const SampledCurve& c, int edge) {
  return (c.vertex(edge + 1) - c.vertex(edge)).normalized();
}

// Cyclic edge distance in the polyline with M edges.
int cyclic_edge_gap(int a, int b, int m) {
  const int d = std::abs(a - b);
  return std::min(d, m - d);
}

}  // namespace

ReparamResult build_reparameterization(const SampledCurve& f, const SampledCurve& g,
                                       double tol) {
  if (!(tol > 0.0)) throw InvalidQuery("tolerance must be positive");
  const int nf = f.size();
  const int mg = g.size();
  const double g_step = g.parameter_step();

  ReparamResult result;
  result.params.reserve(static_cast<size_t>(nf));
  double residual = 0.0;
  bool all_vertex_hits = true;
  std::vector<int> vertex_hits(static_cast<size_t>(nf), -1);

  for (int i = 0; i < nf; ++i) {
    const Point& p = f.vertex(i);
    std::vector<EdgeProjection> candidates;
    double best = std::numeric_limits<double>::infinity();
    for (int e = 0; e < mg; ++e) {
      const EdgeProjection proj = project_to_edge(g, e, p);
      best = std::min(best, proj.distance);
      if (proj.distance <= tol) candidates.push_back(proj);
    }
    if (candidates.empty()) {
      throw NoCorrespondence("nearest distance " + std::to_string(best) +
                             " exceeds tolerance at f vertex " + std::to_string(i));
    }

    // Group candidate edges into branches; edges within two steps of each
    // other along g belong to the same branch.
    std::sort(candidates.begin(), candidates.end(),
              [](const EdgeProjection& a, const EdgeProjection& b) {
                return a.edge < b.edge;
              });
    std::vector<std::vector<EdgeProjection>> branches;
    for (const EdgeProjection& proj : candidates) {
      if (!branches.empty() &&
          cyclic_edge_gap(branches.back().back().edge, proj.edge, mg) <= 2) {
        branches.back().push_back(proj);
      } else {
        branches.push_back({proj});
      }
    }
    if (branches.size() > 1 &&
        cyclic_edge_gap(branches.front().front().edge, branches.back().back().edge, mg) <=
            2) {
      for (const EdgeProjection& proj : branches.back()) branches.front().push_back(proj);
      branches.pop_back();
    }

    const Point tf = vertex_tangent(f, i);
    const EdgeProjection* chosen = nullptr;
    double chosen_align = -1.0;
    double chosen_dist = std::numeric_limits<double>::infinity();
    for (const auto& branch : branches) {
      const EdgeProjection* local = &branch.front();
      for (const EdgeProjection& proj : branch) {
        if (proj.distance < local->distance) local = &proj;
      }
      if (branches.size() == 1) {
        chosen = local;
        break;
      }
      // Double point of g within tolerance: pick the branch whose tangent
      // line matches f's.
      const double align = std::abs(tf.dot(edge_direction(g, local->edge)));
      if (align > chosen_align ||
          (align == chosen_align && local->distance < chosen_dist)) {
        chosen = local;
        chosen_align = align;
        chosen_dist = local->distance;
      }
    }

    residual = std::max(residual, chosen->distance);
    double param = (chosen->edge + chosen->t) * g_step;
    if (chosen->t == 0.0) {
      vertex_hits[static_cast<size_t>(i)] = chosen->edge % mg;
    } else if (chosen->t == 1.0) {
      vertex_hits[static_cast<size_t>(i)] = (chosen->edge + 1) % mg;
    } else {
      all_vertex_hits = false;
    }
    result.params.push_back(std::fmod(param, kTwoPi));
  }

  // Monotone degree +-1 verification of the assembled circle map.
  double winding = 0.0;
  int positive = 0, negative = 0;
  for (int i = 0; i < nf; ++i) {
    double d = result.params[static_cast<size_t>((i + 1) % nf)] -
               result.params[static_cast<size_t>(i)];
    d = std::remainder(d, kTwoPi);
    if (d > 0.0) ++positive;
    if (d < 0.0) ++negative;
    winding += d;
  }
  const long degree = std::lround(winding / kTwoPi);
  if ((positive > 0 && negative > 0) || std::abs(degree) != 1) {
    throw NotMonotone("assembled circle map is not cyclically monotone of degree +-1");
  }
  result.orientation = degree > 0 ? 1 : -1;
  result.residual = residual;

  if (all_vertex_hits && nf == mg) {
    // g == reparameterize(f, shift, orientation) means the correspondence
    // m(i) satisfies orientation*m(i) + shift == i (mod N).
    const int o = result.orientation;
    long long shift = (static_cast<long long>(0) - static_cast<long long>(o) *
                                                       vertex_hits[0]) %
                      nf;
    if (shift < 0) shift += nf;
    bool consistent = true;
    for (int i = 0; i < nf; ++i) {
      long long expect = (static_cast<long long>(o) * vertex_hits[static_cast<size_t>(i)] +
                          shift) %
                         nf;
      if (expect < 0) expect += nf;
      if (expect != i) {
        consistent = false;
        break;
      }
    }
    if (consistent) result.shift = static_cast<int>(shift);
  }
  return result;
}

}  // namespace curvesig

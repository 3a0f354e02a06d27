#include "curvesig/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "curvesig/parallel.hpp"

namespace curvesig {

namespace {

double persistence_half(const CornerPoint& p) { return (p.death - p.birth) / 2.0; }

double pair_cost(const CornerPoint& a, const CornerPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Perfect-matching feasibility at cost c in the standard augmented bipartite
// graph: left = D1 points plus one diagonal slot per D2 point, right = D2
// points plus one diagonal slot per D1 point. A point may take its own
// diagonal slot at cost (death-birth)/2; diagonal slots match each other at
// zero cost.
class BottleneckFeasibility {
 public:
  BottleneckFeasibility(const std::vector<CornerPoint>& d1,
                        const std::vector<CornerPoint>& d2)
      : d1_(d1), d2_(d2), n1_(static_cast<int>(d1.size())), n2_(static_cast<int>(d2.size())) {}

  bool feasible(double c) {
    const int total = n1_ + n2_;
    match_left_.assign(static_cast<size_t>(total), -1);
    match_right_.assign(static_cast<size_t>(total), -1);
    cost_ = c;
    int matched = 0;
    for (int u = 0; u < total; ++u) {
      seen_.assign(static_cast<size_t>(total), 0);
      if (augment(u)) ++matched;
    }
    return matched == total;
  }

 private:
  bool edge_ok(int u, int v) const {
    const bool u_real = u < n1_;
    const bool v_real = v < n2_;
    if (u_real && v_real) {
      return pair_cost(d1_[static_cast<size_t>(u)], d2_[static_cast<size_t>(v)]) <= cost_;
    }
    if (u_real && !v_real) {
      // own diagonal slot only
      return (v - n2_) == u && persistence_half(d1_[static_cast<size_t>(u)]) <= cost_;
    }
    if (!u_real && v_real) {
      return (u - n1_) == v && persistence_half(d2_[static_cast<size_t>(v)]) <= cost_;
    }
    return true;  // diagonal-diagonal
  }

  bool augment(int u) {
    const int total = n1_ + n2_;
    for (int v = 0; v < total; ++v) {
      if (seen_[static_cast<size_t>(v)] || !edge_ok(u, v)) continue;
      seen_[static_cast<size_t>(v)] = 1;
      if (match_right_[static_cast<size_t>(v)] < 0 ||
          augment(match_right_[static_cast<size_t>(v)])) {
        match_left_[static_cast<size_t>(u)] = v;
        match_right_[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    return false;
  }

  const std::vector<CornerPoint>& d1_;
  const std::vector<CornerPoint>& d2_;
  int n1_;
  int n2_;
  double cost_ = 0.0;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<char> seen_;
};

double finite_bottleneck(const std::vector<CornerPoint>& d1,
                         const std::vector<CornerPoint>& d2) {
  if (d1.empty() && d2.empty()) return 0.0;
  std::vector<double> candidates;
  candidates.push_back(0.0);
  for (const CornerPoint& a : d1) {
    candidates.push_back(persistence_half(a));
    for (const CornerPoint& b : d2) candidates.push_back(pair_cost(a, b));
  }
  for (const CornerPoint& b : d2) candidates.push_back(persistence_half(b));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BottleneckFeasibility checker(d1, d2);
  size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (checker.feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace

double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  if (d1.essential.size() != d2.essential.size()) {
    throw EssentialMismatch("essential multiplicities differ: " +
                            std::to_string(d1.essential.size()) + " vs " +
                            std::to_string(d2.essential.size()));
  }
  // Essential births never match the diagonal; sorted pairing minimizes the
  // bottleneck of a one-dimensional assignment.
  std::vector<double> e1 = d1.essential;
  std::vector<double> e2 = d2.essential;
  std::sort(e1.begin(), e1.end());
  std::sort(e2.begin(), e2.end());
  double essential_cost = 0.0;
  for (size_t i = 0; i < e1.size(); ++i) {
    essential_cost = std::max(essential_cost, std::abs(e1[i] - e2[i]));
  }
  return std::max(essential_cost, finite_bottleneck(d1.finite, d2.finite));
}

namespace {

struct LineScore {
  double value = 0.0;
  int k = 0;
  int m = 0;
};

LineScore dmatch_core(const SampledCurve& f, const SampledCurve& g,
                      const LineGrid& grid) {
  const int total = grid.K * grid.M;
  std::vector<double> scores(static_cast<size_t>(total));
  parallel_for(total, [&](int idx) {
    const AdmissibleLine line = grid.line(idx / grid.M, idx % grid.M);
    scores[static_cast<size_t>(idx)] =
        diagram_distance(line_diagram(f, line), line_diagram(g, line));
  });
  LineScore best;
  best.value = -1.0;
  for (int idx = 0; idx < total; ++idx) {
    if (scores[static_cast<size_t>(idx)] > best.value) {
      best.value = scores[static_cast<size_t>(idx)];
      best.k = idx / grid.M;
      best.m = idx % grid.M;
    }
  }
  return best;
}

}  // namespace

double dmatch(const SampledCurve& f, const SampledCurve& g, const LineGrid& grid) {
  return dmatch_core(f, g, grid).value;
}

Sigma2DistanceTable sigma2_distance(const SampledCurve& f, const SampledCurve& g,
                                    const LineGrid& grid) {
  Sigma2DistanceTable table;
  table.grid = grid;
  table.max_over_sigma2 = 0.0;
  for (Reflection s : kAllReflections) {
    const double d = dmatch(reflect(f, s), reflect(g, s), grid);
    table.per_reflection[static_cast<size_t>(s)] = d;
    table.max_over_sigma2 = std::max(table.max_over_sigma2, d);
  }
  return table;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent:
      return "Equivalent";
    case Verdict::Distinguished:
      return "Distinguished";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

GenericitySummary summarize(const GenericityReport& report) {
  GenericitySummary s;
  s.is_generic = report.is_generic;
  s.is_immersion = report.is_immersion;
  s.all_clean = report.all_clean;
  s.double_point_count = static_cast<int>(report.double_points.size());
  return s;
}

}  // namespace

double default_delta(const SampledCurve& f, const SampledCurve& g) {
  auto [flo, fhi] = f.bounding_box();
  auto [glo, ghi] = g.bounding_box();
  const Point lo = flo.cwiseMin(glo);
  const Point hi = fhi.cwiseMax(ghi);
  return 1e-3 * (hi - lo).norm();
}

EquivalenceVerdict decide_equivalence(const SampledCurve& f, const SampledCurve& g,
                                      double delta, const LineGrid& grid) {
  EquivalenceVerdict verdict;
  verdict.delta = delta;
  verdict.f_report = summarize(check_generic(f));
  verdict.g_report = summarize(check_generic(g));
  if (!verdict.f_report.is_generic || !verdict.g_report.is_generic) {
    verdict.verdict = Verdict::Inconclusive;
    return verdict;
  }

  double max_value = 0.0;
  Reflection max_s = Reflection::Id;
  LineScore max_score;
  for (Reflection s : kAllReflections) {
    const LineScore score = dmatch_core(reflect(f, s), reflect(g, s), grid);
    if (score.value > max_value) {
      max_value = score.value;
      max_s = s;
      max_score = score;
    }
  }
  verdict.max_over_sigma2 = max_value;
  if (max_value <= delta) {
    verdict.verdict = Verdict::Equivalent;
  } else {
    verdict.verdict = Verdict::Distinguished;
    EquivalenceWitness witness;
    witness.s = max_s;
    witness.line = grid.line(max_score.k, max_score.m);
    witness.distance = max_value;
    verdict.witness = witness;
  }
  return verdict;
}

}  // namespace curvesig

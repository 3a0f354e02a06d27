#pragma once

#include <array>
#include <optional>

#include "curvesig/curve.hpp"
#include "curvesig/foliation.hpp"
#include "curvesig/persistence.hpp"

namespace curvesig {

/// Bottleneck-style matching distance between diagrams. Finite points match
/// each other at cost max(|b-b'|, |d-d'|) or the diagonal at cost (d-b)/2;
/// essential births match each other at cost |b-b'| and never the diagonal.
/// Computed exactly by binary search over the candidate cost set with
/// bipartite feasibility checks. Raises EssentialMismatch when the essential
/// multiplicities differ.
double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

/// Grid-sampled matching distance: max over the K*M lines of
/// diagram_distance between the reduced diagrams of f and g. Grid sampling
/// can only under-estimate the supremum over all admissible lines.
double dmatch(const SampledCurve& f, const SampledCurve& g, const LineGrid& grid);

struct Sigma2DistanceTable {
  std::array<double, 4> per_reflection{};  // indexed by Reflection
  double max_over_sigma2 = 0.0;
  LineGrid grid;

  double operator[](Reflection s) const {
    return per_reflection[static_cast<int>(s)];
  }
};

/// dmatch between s∘f and s∘g for every s in the reflection group.
Sigma2DistanceTable sigma2_distance(const SampledCurve& f, const SampledCurve& g,
                                    const LineGrid& grid);

enum class Verdict { Equivalent, Distinguished, Inconclusive };
const char* to_string(Verdict v);

struct EquivalenceWitness {
  Reflection s = Reflection::Id;
  AdmissibleLine line;
  double distance = 0.0;
};

struct GenericitySummary {
  bool is_generic = false;
  bool is_immersion = false;
  bool all_clean = false;
  int double_point_count = 0;
};

/// Grid-resolution equivalence verdict. Inconclusive when either input fails
/// check_generic; Distinguished carries the maximizing (reflection, line)
/// witness. Equivalent means "consistent with equivalence at this grid
/// resolution", not a proof.
struct EquivalenceVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<EquivalenceWitness> witness;
  GenericitySummary f_report;
  GenericitySummary g_report;
  double delta = 0.0;
  double max_over_sigma2 = 0.0;
};

EquivalenceVerdict decide_equivalence(const SampledCurve& f, const SampledCurve& g,
                                      double delta, const LineGrid& grid);

/// Scale-relative default threshold: 1e-3 times the bounding-box diagonal of
/// the union of both curves.
double default_delta(const SampledCurve& f, const SampledCurve& g);

}  // namespace curvesig

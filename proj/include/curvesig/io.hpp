#pragma once

#include <filesystem>
#include <string>

#include "curvesig/curve.hpp"
#include "curvesig/inverse.hpp"
#include "curvesig/matching.hpp"
#include "curvesig/persistence.hpp"

namespace curvesig {

/// Shortest decimal representation that round-trips the double exactly
/// (locale-independent, at most 17 significant digits).
std::string format_double(double x);

/// Curve files: JSON {"n": N, "vertices": [[x, y], ...]} or CSV with one
/// "x,y" row per vertex; closure is implied. The format is chosen by the
/// ".csv" extension.
SampledCurve read_curve(const std::filesystem::path& path);
void write_curve(const std::filesystem::path& path, const SampledCurve& curve);

std::string curve_to_json(const SampledCurve& curve);
std::string curve_to_csv(const SampledCurve& curve);
SampledCurve curve_from_json(const std::string& text);
SampledCurve curve_from_csv(const std::string& text);

/// Diagram file: {"finite": [[b, d], ...], "essential": [b, ...]}.
std::string diagram_to_json(const PersistenceDiagram& diagram);

std::string distance_report_to_json(const Sigma2DistanceTable& table);
std::string verdict_to_json(const EquivalenceVerdict& verdict);
std::string genericity_report_to_json(const GenericityReport& report);
std::string class_bound_report_to_json(const ClassBoundReport& report);
std::string reparam_result_to_json(const ReparamResult& result);

/// Plain-text PGM (P2), 0 = empty, 255 = occupied. Row 0 of the raster is
/// the top of the bounding box.
std::string occupancy_to_pgm(const OccupancyGrid& grid);
/// Sidecar with bbox, cell size, grid dimensions and flagged_axis_cells.
std::string occupancy_sidecar_to_json(const OccupancyGrid& grid);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace curvesig

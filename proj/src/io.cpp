#include "curvesig/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace curvesig {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(const std::string& text, const char* what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

SampledCurve curve_from_vertices(std::vector<Point> vertices) {
  try {
    return SampledCurve(std::move(vertices));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid curve: ") + e.what());
  }
}

}  // namespace

std::string curve_to_json(const SampledCurve& curve) {
  std::string out = "{\"n\": " + std::to_string(curve.size()) + ", \"vertices\": [";
  for (int i = 0; i < curve.size(); ++i) {
    if (i > 0) out += ", ";
    out += "[" + format_double(curve.vertex(i).x()) + ", " +
           format_double(curve.vertex(i).y()) + "]";
  }
  out += "]}\n";
  return out;
}

std::string curve_to_csv(const SampledCurve& curve) {
  std::string out;
  for (const Point& p : curve.vertices()) {
    out += format_double(p.x()) + "," + format_double(p.y()) + "\n";
  }
  return out;
}

SampledCurve curve_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("curve JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("curve JSON: expected object with a 'vertices' array");
  }
  std::vector<Point> vertices;
  for (const auto& item : doc["vertices"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number()) {
      throw ParseError("curve JSON: vertices must be [x, y] pairs");
    }
    vertices.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  if (doc.contains("n") &&
      (!doc["n"].is_number_integer() ||
       doc["n"].get<long long>() != static_cast<long long>(vertices.size()))) {
    throw ParseError("curve JSON: 'n' does not match the vertex count");
  }
  return curve_from_vertices(std::move(vertices));
}

SampledCurve curve_from_csv(const std::string& text) {
  std::vector<Point> vertices;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("curve CSV: expected 'x,y' rows");
    }
    vertices.emplace_back(parse_number(line.substr(0, comma), "CSV number"),
                          parse_number(line.substr(comma + 1), "CSV number"));
  }
  return curve_from_vertices(std::move(vertices));
}

SampledCurve read_curve(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".csv") return curve_from_csv(text);
  return curve_from_json(text);
}

void write_curve(const std::filesystem::path& path, const SampledCurve& curve) {
  write_text_file(path, path.extension() == ".csv" ? curve_to_csv(curve)
                                                   : curve_to_json(curve));
}

std::string diagram_to_json(const PersistenceDiagram& diagram) {
  std::string out = "{\"finite\": [";
  for (size_t i = 0; i < diagram.finite.size(); ++i) {
    if (i > 0) out += ", ";
    out += "[" + format_double(diagram.finite[i].birth) + ", " +
           format_double(diagram.finite[i].death) + "]";
  }
  out += "], \"essential\": [";
  for (size_t i = 0; i < diagram.essential.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(diagram.essential[i]);
  }
  out += "]}\n";
  return out;
}

std::string distance_report_to_json(const Sigma2DistanceTable& table) {
  std::string out = "{\"grid\": {\"K\": " + std::to_string(table.grid.K) +
                    ", \"M\": " + std::to_string(table.grid.M) +
                    ", \"B\": " + format_double(table.grid.B) + "}";
  out += ", \"per_reflection\": {";
  bool first = true;
  for (Reflection s : kAllReflections) {
    if (!first) out += ", ";
    first = false;
    out += std::string("\"") + to_string(s) + "\": " + format_double(table[s]);
  }
  out += "}, \"max\": " + format_double(table.max_over_sigma2) + "}\n";
  return out;
}

namespace {

std::string genericity_summary_json(const GenericitySummary& s) {
  std::string out = "{";
  out += std::string("\"is_generic\": ") + (s.is_generic ? "true" : "false");
  out += std::string(", \"is_immersion\": ") + (s.is_immersion ? "true" : "false");
  out += std::string(", \"all_clean\": ") + (s.all_clean ? "true" : "false");
  out += ", \"double_points\": " + std::to_string(s.double_point_count);
  out += "}";
  return out;
}

}  // namespace

std::string verdict_to_json(const EquivalenceVerdict& verdict) {
  std::string out = "{\"verdict\": \"" + std::string(to_string(verdict.verdict)) + "\"";
  out += ", \"delta\": " + format_double(verdict.delta);
  out += ", \"max_over_sigma2\": " + format_double(verdict.max_over_sigma2);
  out += ", \"witness\": ";
  if (verdict.witness) {
    const EquivalenceWitness& w = *verdict.witness;
    out += std::string("{\"reflection\": \"") + to_string(w.s) + "\"";
    out += ", \"line\": {\"direction\": [" + format_double(w.line.direction.x()) + ", " +
           format_double(w.line.direction.y()) + "], \"offset\": [" +
           format_double(w.line.offset.x()) + ", " + format_double(w.line.offset.y()) +
           "]}";
    out += ", \"distance\": " + format_double(w.distance) + "}";
  } else {
    out += "null";
  }
  out += ", \"f\": " + genericity_summary_json(verdict.f_report);
  out += ", \"g\": " + genericity_summary_json(verdict.g_report);
  out += "}\n";
  return out;
}

std::string genericity_report_to_json(const GenericityReport& report) {
  std::string out = "{";
  out += std::string("\"is_generic\": ") + (report.is_generic ? "true" : "false");
  out += std::string(", \"is_immersion\": ") + (report.is_immersion ? "true" : "false");
  out += ", \"min_speed\": " + format_double(report.min_speed);
  out += std::string(", \"all_clean\": ") + (report.all_clean ? "true" : "false");
  out += ", \"double_points\": [";
  for (size_t i = 0; i < report.double_points.size(); ++i) {
    const DoublePoint& dp = report.double_points[i];
    if (i > 0) out += ", ";
    out += "{\"edge_a\": " + std::to_string(dp.edge_a) +
           ", \"edge_b\": " + std::to_string(dp.edge_b) + ", \"point\": [" +
           format_double(dp.where.x()) + ", " + format_double(dp.where.y()) +
           "], \"angle\": " + format_double(dp.angle) + "}";
  }
  out += "], \"overlapping_pairs\": [";
  for (size_t i = 0; i < report.overlapping_pairs.size(); ++i) {
    if (i > 0) out += ", ";
    out += "[" + std::to_string(report.overlapping_pairs[i].first) + ", " +
           std::to_string(report.overlapping_pairs[i].second) + "]";
  }
  out += "]}";
  return out;
}

std::string class_bound_report_to_json(const ClassBoundReport& report) {
  std::string out = "{";
  out += "\"k\": " + format_double(report.k);
  out += std::string(", \"radius_ok\": ") + (report.radius_ok ? "true" : "false");
  out += std::string(", \"length_ok\": ") + (report.length_ok ? "true" : "false");
  out += std::string(", \"curvature_ok\": ") + (report.curvature_ok ? "true" : "false");
  out += ", \"measured_radius\": " + format_double(report.measured_radius);
  out += ", \"measured_length\": " + format_double(report.measured_length);
  out += ", \"max_curvature\": " + format_double(report.max_curvature);
  out += std::string(", \"neighborhood_condition_evaluated\": ") +
         (report.neighborhood_condition_evaluated ? "true" : "false");
  out += "}";
  return out;
}

std::string reparam_result_to_json(const ReparamResult& result) {
  std::string out = "{\"orientation\": " + std::to_string(result.orientation);
  out += ", \"shift\": ";
  out += result.shift ? std::to_string(*result.shift) : "null";
  out += ", \"residual\": " + format_double(result.residual);
  out += ", \"params\": [";
  for (size_t i = 0; i < result.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(result.params[i]);
  }
  out += "]}\n";
  return out;
}

std::string occupancy_to_pgm(const OccupancyGrid& grid) {
  std::string out = "P2\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) +
                    "\n255\n";
  for (int iy = grid.ny - 1; iy >= 0; --iy) {  // first raster row = top
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (ix > 0) out += " ";
      out += grid.at(ix, iy) ? "255" : "0";
    }
    out += "\n";
  }
  return out;
}

std::string occupancy_sidecar_to_json(const OccupancyGrid& grid) {
  std::string out = "{\"bbox\": [" + format_double(grid.bbox.xmin) + ", " +
                    format_double(grid.bbox.ymin) + ", " + format_double(grid.bbox.xmax) +
                    ", " + format_double(grid.bbox.ymax) + "]";
  out += ", \"cell\": " + format_double(grid.cell);
  out += ", \"nx\": " + std::to_string(grid.nx);
  out += ", \"ny\": " + std::to_string(grid.ny);
  out += ", \"flagged_axis_cells\": [";
  for (size_t i = 0; i < grid.flagged_axis_cells.size(); ++i) {
    if (i > 0) out += ", ";
    out += "[" + std::to_string(grid.flagged_axis_cells[i].first) + ", " +
           std::to_string(grid.flagged_axis_cells[i].second) + "]";
  }
  out += "]}\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace curvesig

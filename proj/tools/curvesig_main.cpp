#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvesig/curve.hpp"
#include "curvesig/foliation.hpp"
#include "curvesig/inverse.hpp"
#include "curvesig/io.hpp"
#include "curvesig/matching.hpp"
#include "curvesig/persistence.hpp"

namespace {

using namespace curvesig;

Point parse_point(const std::string& text) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw curvesig::ParseError("expected 'x,y', got '" + text + "'");
  }
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw curvesig::ParseError("expected 'x,y', got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw curvesig::ParseError("empty entry in list '" + text + "'");
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw curvesig::ParseError("invalid number '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(output_path, text);
  }
}

// Smooth trigonometric perturbation scaled to exact sup-norm eps over the
// samples (max norm on the plane).
SampledCurve perturb_curve(const SampledCurve& curve, std::uint64_t seed, double eps) {
  std::mt19937_64 eng(seed);
  auto unit = [&eng] { return (eng() >> 11) * 0x1.0p-53; };
  std::array<std::array<double, 4>, 2> coef_cos{};
  std::array<std::array<double, 4>, 2> coef_sin{};
  for (int c = 0; c < 2; ++c) {
    for (int m = 0; m < 4; ++m) {
      coef_cos[c][m] = 2.0 * unit() - 1.0;
      coef_sin[c][m] = 2.0 * unit() - 1.0;
    }
  }
  const int n = curve.size();
  std::vector<Point> delta(static_cast<size_t>(n));
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = curve.theta(i);
    Point d = Point::Zero();
    for (int m = 0; m < 4; ++m) {
      d.x() += coef_cos[0][m] * std::cos(m * t) + coef_sin[0][m] * std::sin(m * t);
      d.y() += coef_cos[1][m] * std::cos(m * t) + coef_sin[1][m] * std::sin(m * t);
    }
    delta[static_cast<size_t>(i)] = d;
    sup = std::max({sup, std::abs(d.x()), std::abs(d.y())});
  }
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(n));
  const double scale = sup > 0.0 ? eps / sup : 0.0;
  for (int i = 0; i < n; ++i) {
    out.push_back(curve.vertex(i) + scale * delta[static_cast<size_t>(i)]);
  }
  return SampledCurve(std::move(out));
}

struct Options {
  std::string kind = "circle";
  int samples = 256;
  std::uint64_t seed = 0;
  double radius = 1.0;
  double semi_a = 2.0;
  double semi_b = 1.0;
  std::string input;
  std::string input_a;
  std::string input_b;
  std::string output;
  std::string u_text;
  std::string v_text;
  double angle = std::numbers::pi / 4.0;
  double line_offset = 0.0;
  int lines = 32;
  int offsets = 32;
  double offset_range = 0.0;  // 0 = derive from the inputs
  std::optional<double> delta;
  double cell = 0.05;
  std::string bbox_text;
  std::optional<double> tol_speed;
  double tol_angle = kDefaultAngleTolerance;
  std::optional<double> tol;
  std::string eps_text = "0.01,0.05,0.1";
  double class_k = 10.0;
};

LineGrid make_grid(const Options& opt, const SampledCurve& f, const SampledCurve& g) {
  LineGrid grid = default_grid(f, g, opt.lines, opt.offsets);
  if (opt.offset_range > 0.0) grid.B = opt.offset_range;
  return grid;
}

int run_gencurve(const Options& opt) {
  const auto kind = parse_curve_kind(opt.kind);
  if (!kind) throw curvesig::ParseError("unknown curve kind '" + opt.kind + "'");
  GenerateParams params;
  params.radius = opt.radius;
  params.semi_a = opt.semi_a;
  params.semi_b = opt.semi_b;
  const SampledCurve curve = generate(*kind, opt.samples, opt.seed, params);
  if (opt.output.empty()) {
    std::cout << curve_to_json(curve);
  } else {
    write_curve(opt.output, curve);
  }
  return 0;
}

int run_check(const Options& opt) {
  const SampledCurve curve = read_curve(opt.input);
  const double tol_speed = opt.tol_speed.value_or(default_speed_tolerance(curve));
  const GenericityReport generic = check_generic(curve, tol_speed, opt.tol_angle);
  const ClassBoundReport bound = check_class_bound(curve, opt.class_k);
  emit("{\"genericity\": " + genericity_report_to_json(generic) +
           ", \"class_bound\": " + class_bound_report_to_json(bound) + "}\n",
       opt.output);
  return 0;
}

int run_rank(const Options& opt) {
  const SampledCurve curve = read_curve(opt.input);
  const int rank = rank_h0(curve, parse_point(opt.u_text), parse_point(opt.v_text));
  emit(std::to_string(rank) + "\n", opt.output);
  return 0;
}

int run_diagram(const Options& opt) {
  const SampledCurve curve = read_curve(opt.input);
  const AdmissibleLine line = AdmissibleLine::from_angle_offset(opt.angle, opt.line_offset);
  emit(diagram_to_json(line_diagram(curve, line)), opt.output);
  return 0;
}

int run_distance(const Options& opt) {
  const SampledCurve a = read_curve(opt.input_a);
  const SampledCurve b = read_curve(opt.input_b);
  const Sigma2DistanceTable table = sigma2_distance(a, b, make_grid(opt, a, b));
  emit(distance_report_to_json(table), opt.output);
  return 0;
}

int run_decide(const Options& opt) {
  const SampledCurve a = read_curve(opt.input_a);
  const SampledCurve b = read_curve(opt.input_b);
  const double delta = opt.delta.value_or(default_delta(a, b));
  const EquivalenceVerdict verdict = decide_equivalence(a, b, delta, make_grid(opt, a, b));
  emit(verdict_to_json(verdict), opt.output);
  return 0;
}

int run_reconstruct(const Options& opt) {
  const SampledCurve curve = read_curve(opt.input);
  BoundingBox bbox;
  if (!opt.bbox_text.empty()) {
    const std::vector<double> values = parse_list(opt.bbox_text);
    if (values.size() != 4) {
      throw curvesig::ParseError("--bbox expects xmin,ymin,xmax,ymax");
    }
    bbox = {values[0], values[1], values[2], values[3]};
  } else {
    auto [lo, hi] = curve.bounding_box();
    const double pad = 0.1 * curve.bounding_box_diagonal() + opt.cell;
    bbox = {lo.x() - pad, lo.y() - pad, hi.x() + pad, hi.y() + pad};
  }
  const CurveRankOracle oracle(curve);
  const OccupancyGrid grid = reconstruct_image(oracle, bbox, opt.cell);
  if (opt.output.empty()) {
    std::cout << occupancy_to_pgm(grid);
    std::cout << occupancy_sidecar_to_json(grid);
  } else {
    write_text_file(opt.output, occupancy_to_pgm(grid));
    std::filesystem::path sidecar(opt.output);
    sidecar.replace_extension(".json");
    write_text_file(sidecar, occupancy_sidecar_to_json(grid));
  }
  return 0;
}

int run_reparam(const Options& opt) {
  const SampledCurve f = read_curve(opt.input_a);
  const SampledCurve g = read_curve(opt.input_b);
  const double tol = opt.tol.value_or(1e-6 * f.bounding_box_diagonal());
  emit(reparam_result_to_json(build_reparameterization(f, g, tol)), opt.output);
  return 0;
}

int run_stability(const Options& opt) {
  const auto kind = parse_curve_kind(opt.kind);
  if (!kind) throw curvesig::ParseError("unknown curve kind '" + opt.kind + "'");
  GenerateParams params;
  params.radius = opt.radius;
  params.semi_a = opt.semi_a;
  params.semi_b = opt.semi_b;
  const SampledCurve base = generate(*kind, opt.samples, opt.seed, params);
  const std::vector<double> eps_values = parse_list(opt.eps_text);

  std::string csv = "eps,dmatch_max,bound_ok\n";
  for (size_t i = 0; i < eps_values.size(); ++i) {
    const double eps = eps_values[i];
    if (!(eps > 0.0)) throw curvesig::ParseError("eps values must be positive");
    const SampledCurve moved =
        perturb_curve(base, opt.seed * 1000003ull + i + 1, eps);
    const LineGrid grid = make_grid(opt, base, moved);
    const Sigma2DistanceTable table = sigma2_distance(base, moved, grid);
    const bool ok = table.max_over_sigma2 <= eps + 1e-12;
    csv += format_double(eps) + "," + format_double(table.max_over_sigma2) + "," +
           (ok ? "true" : "false") + "\n";
  }
  emit(csv, opt.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reflection-augmented two-parameter persistence signatures of closed "
      "planar curves: generation, genericity checks, rank queries, matching "
      "distances, equivalence decisions, and image reconstruction."};
  app.require_subcommand(1);
  Options opt;

  CLI::App* gencurve = app.add_subcommand("gencurve", "Generate a corpus curve");
  gencurve->add_option("--kind", opt.kind, "circle, ellipse, random-generic, fig2-analog-a/b, fig3-analog-a/b");
  gencurve->add_option("--samples", opt.samples, "number of vertices (>= 8)");
  gencurve->add_option("--seed", opt.seed, "random seed (random-generic)");
  gencurve->add_option("--radius", opt.radius, "circle radius");
  gencurve->add_option("--semi-a", opt.semi_a, "ellipse x semi-axis");
  gencurve->add_option("--semi-b", opt.semi_b, "ellipse y semi-axis");
  gencurve->add_option("-o,--output", opt.output, "output path (.json or .csv)");

  CLI::App* check = app.add_subcommand("check", "Genericity and class-bound reports");
  check->add_option("--input", opt.input, "curve file")->required();
  check->add_option("--tol-speed", [&opt](const CLI::results_t& r) {
    opt.tol_speed = std::stod(r[0]);
    return true;
  }, "immersion speed threshold (default: scale-relative)");
  check->add_option("--tol-angle", opt.tol_angle, "clean crossing angle threshold");
  check->add_option("--k", opt.class_k, "class bound k");
  check->add_option("-o,--output", opt.output, "output path");

  CLI::App* rank = app.add_subcommand("rank", "Single persistent rank query");
  rank->add_option("--input", opt.input, "curve file")->required();
  rank->add_option("--u", opt.u_text, "lower corner 'x,y'")->required();
  rank->add_option("--v", opt.v_text, "upper corner 'x,y'")->required();

  CLI::App* diagram = app.add_subcommand("diagram", "Reduced diagram along one line");
  diagram->add_option("--input", opt.input, "curve file")->required();
  diagram->add_option("--angle", opt.angle, "direction angle in (0, pi/2)");
  diagram->add_option("--offset", opt.line_offset, "offset beta, line offset (beta, -beta)");
  diagram->add_option("-o,--output", opt.output, "output path");

  CLI::App* distance = app.add_subcommand("distance", "Reflection-augmented distances");
  distance->add_option("--a", opt.input_a, "first curve")->required();
  distance->add_option("--b", opt.input_b, "second curve")->required();
  distance->add_option("--lines", opt.lines, "direction samples K");
  distance->add_option("--offsets", opt.offsets, "offset samples M");
  distance->add_option("--offset-range", opt.offset_range, "offset half-range B");
  distance->add_option("-o,--output", opt.output, "output path");

  CLI::App* decide = app.add_subcommand("decide", "Equivalence verdict");
  decide->add_option("--a", opt.input_a, "first curve")->required();
  decide->add_option("--b", opt.input_b, "second curve")->required();
  decide->add_option("--delta", [&opt](const CLI::results_t& r) {
    opt.delta = std::stod(r[0]);
    return true;
  }, "equivalence threshold (default: scale-relative)");
  decide->add_option("--lines", opt.lines, "direction samples K");
  decide->add_option("--offsets", opt.offsets, "offset samples M");
  decide->add_option("--offset-range", opt.offset_range, "offset half-range B");
  decide->add_option("-o,--output", opt.output, "output path");

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "Occupancy-grid reconstruction");
  reconstruct->add_option("--input", opt.input, "curve file")->required();
  reconstruct->add_option("--cell", opt.cell, "cell size");
  reconstruct->add_option("--bbox", opt.bbox_text, "xmin,ymin,xmax,ymax (default: padded curve bbox)");
  reconstruct->add_option("-o,--output", opt.output, "PGM output path; sidecar gets .json");

  CLI::App* reparam = app.add_subcommand("reparam", "Reparameterization between equivalent curves");
  reparam->add_option("--f", opt.input_a, "source curve")->required();
  reparam->add_option("--g", opt.input_b, "target curve")->required();
  reparam->add_option("--tol", [&opt](const CLI::results_t& r) {
    opt.tol = std::stod(r[0]);
    return true;
  }, "correspondence tolerance (default: scale-relative)");
  reparam->add_option("-o,--output", opt.output, "output path");

  CLI::App* stability = app.add_subcommand("stability-harness", "Perturbation stability sweep");
  stability->add_option("--kind", opt.kind, "base curve kind");
  stability->add_option("--samples", opt.samples, "number of vertices");
  stability->add_option("--seed", opt.seed, "random seed");
  stability->add_option("--eps", opt.eps_text, "comma-separated sup-norm perturbations");
  stability->add_option("--lines", opt.lines, "direction samples K");
  stability->add_option("--offsets", opt.offsets, "offset samples M");
  stability->add_option("--offset-range", opt.offset_range, "offset half-range B");
  stability->add_option("-o,--output", opt.output, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gencurve->parsed()) return run_gencurve(opt);
    if (check->parsed()) return run_check(opt);
    if (rank->parsed()) return run_rank(opt);
    if (diagram->parsed()) return run_diagram(opt);
    if (distance->parsed()) return run_distance(opt);
    if (decide->parsed()) return run_decide(opt);
    if (reconstruct->parsed()) return run_reconstruct(opt);
    if (reparam->parsed()) return run_reparam(opt);
    if (stability->parsed()) return run_stability(opt);
  } catch (const curvesig::Error& e) {
    std::cerr << "error[" << e.kind() << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error[Internal]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

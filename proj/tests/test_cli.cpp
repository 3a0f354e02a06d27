#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "curvesig/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "curvesig_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const fs::path out_file = work_dir() / "stdout.txt";
  const std::string cmd =
      std::string(CURVESIG_BIN) + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.out = buf.str();
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("gencurve then rank round trip") {
  const fs::path curve = work_dir() / "c.json";
  REQUIRE(run("gencurve --kind circle --samples 64 -o " + curve.string()).status == 0);

  const RunResult rank = run("rank --input " + curve.string() + " --u 2,2 --v 3,3");
  CHECK(rank.status == 0);
  CHECK(rank.out == "1\n");

  // the emitted file reparses to an identical in-memory curve
  const curvesig::SampledCurve a = curvesig::read_curve(curve);
  const curvesig::SampledCurve b = curvesig::generate(curvesig::CurveKind::Circle, 64, 0);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(a.vertex(i) == b.vertex(i));
}

TEST_CASE("gencurve emits CSV when asked") {
  const fs::path curve = work_dir() / "c.csv";
  REQUIRE(run("gencurve --kind circle --samples 32 -o " + curve.string()).status == 0);
  const curvesig::SampledCurve a = curvesig::read_curve(curve);
  CHECK(a.size() == 32);
  CHECK(slurp(curve).substr(0, 2) == "1,");
}

TEST_CASE("gencurve output is byte-identical across runs") {
  const fs::path c1 = work_dir() / "d1.json";
  const fs::path c2 = work_dir() / "d2.json";
  REQUIRE(run("gencurve --kind random-generic --samples 128 --seed 9 -o " + c1.string())
              .status == 0);
  REQUIRE(run("gencurve --kind random-generic --samples 128 --seed 9 -o " + c2.string())
              .status == 0);
  CHECK(slurp(c1) == slurp(c2));
}

TEST_CASE("check reports genericity and class bounds") {
  const fs::path curve = work_dir() / "e.json";
  REQUIRE(run("gencurve --kind ellipse --samples 128 -o " + curve.string()).status == 0);
  const RunResult res = run("check --input " + curve.string() + " --k 10");
  CHECK(res.status == 0);
  CHECK(res.out.find("\"is_generic\": true") != std::string::npos);
  CHECK(res.out.find("\"curvature_ok\": true") != std::string::npos);
}

TEST_CASE("distance of a curve with itself is all zeros") {
  const fs::path curve = work_dir() / "f.json";
  REQUIRE(run("gencurve --kind circle --samples 64 -o " + curve.string()).status == 0);
  const RunResult res = run("distance --a " + curve.string() + " --b " + curve.string() +
                            " --lines 8 --offsets 8");
  CHECK(res.status == 0);
  CHECK(res.out.find("\"id\": 0") != std::string::npos);
  CHECK(res.out.find("\"s1s2\": 0") != std::string::npos);
  CHECK(res.out.find("\"max\": 0") != std::string::npos);
}

TEST_CASE("diagram subcommand emits the reduced diagram") {
  const fs::path curve = work_dir() / "g.json";
  REQUIRE(run("gencurve --kind circle --samples 64 -o " + curve.string()).status == 0);
  const RunResult res =
      run("diagram --input " + curve.string() + " --angle 0.785398163 --offset 0");
  CHECK(res.status == 0);
  CHECK(res.out.find("\"essential\": [-0.7071") != std::string::npos);
}

TEST_CASE("decide on fig2 analogs distinguishes with a witness") {
  const fs::path a = work_dir() / "f2a.json";
  const fs::path b = work_dir() / "f2b.json";
  REQUIRE(run("gencurve --kind fig2-analog-a --samples 256 -o " + a.string()).status == 0);
  REQUIRE(run("gencurve --kind fig2-analog-b --samples 256 -o " + b.string()).status == 0);
  const RunResult res = run("decide --a " + a.string() + " --b " + b.string() +
                            " --lines 16 --offsets 16");
  CHECK(res.status == 0);
  CHECK(res.out.find("\"verdict\": \"Distinguished\"") != std::string::npos);
  CHECK(res.out.find("\"reflection\"") != std::string::npos);
}

TEST_CASE("reconstruct writes a PGM raster plus sidecar") {
  const fs::path curve = work_dir() / "h.json";
  const fs::path pgm = work_dir() / "h.pgm";
  REQUIRE(run("gencurve --kind circle --samples 128 -o " + curve.string()).status == 0);
  const RunResult res = run("reconstruct --input " + curve.string() +
                            " --cell 0.2 --bbox -1.4,-1.4,1.4,1.4 -o " + pgm.string());
  CHECK(res.status == 0);
  const std::string raster = slurp(pgm);
  CHECK(raster.substr(0, 3) == "P2\n");
  CHECK(raster.find("255") != std::string::npos);
  const std::string side = slurp(fs::path(pgm).replace_extension(".json"));
  CHECK(side.find("\"cell\": 0.2") != std::string::npos);
  CHECK(side.find("\"flagged_axis_cells\"") != std::string::npos);
}

TEST_CASE("reparam recovers shift and orientation") {
  const fs::path a = work_dir() / "r1.json";
  REQUIRE(run("gencurve --kind random-generic --samples 64 --seed 3 -o " + a.string())
              .status == 0);
  const curvesig::SampledCurve base = curvesig::read_curve(a);
  const fs::path b = work_dir() / "r2.json";
  curvesig::write_curve(b, curvesig::reparameterize(base, 11, 1));
  const RunResult res = run("reparam --f " + a.string() + " --g " + b.string());
  CHECK(res.status == 0);
  CHECK(res.out.find("\"orientation\": 1") != std::string::npos);
  CHECK(res.out.find("\"shift\": 11") != std::string::npos);
  CHECK(res.out.find("\"residual\": 0") != std::string::npos);
}

TEST_CASE("stability harness reports the bound as satisfied") {
  const RunResult res = run(
      "stability-harness --kind random-generic --seed 7 --samples 96 "
      "--eps 0.01,0.05 --lines 6 --offsets 6");
  CHECK(res.status == 0);
  CHECK(res.out.substr(0, 24) == "eps,dmatch_max,bound_ok\n");
  CHECK(res.out.find("false") == std::string::npos);
  // two data rows, both ending in true
  int true_count = 0;
  for (size_t pos = 0; (pos = res.out.find(",true\n", pos)) != std::string::npos; ++pos) {
    ++true_count;
  }
  CHECK(true_count == 2);
}

TEST_CASE("error paths exit with distinct statuses and message prefixes") {
  SUBCASE("missing input file is a validation error") {
    const RunResult res = run("rank --input /nonexistent.json --u 0,0 --v 1,1");
    CHECK(res.status == 1);
    CHECK(res.out.find("error[ParseError]:") != std::string::npos);
  }
  SUBCASE("invalid rank query is a validation error") {
    const fs::path curve = work_dir() / "q.json";
    REQUIRE(run("gencurve --kind circle --samples 32 -o " + curve.string()).status == 0);
    const RunResult res = run("rank --input " + curve.string() + " --u 2,2 --v 1,1");
    CHECK(res.status == 1);
    CHECK(res.out.find("error[InvalidQuery]:") != std::string::npos);
  }
  SUBCASE("no correspondence is a computation error") {
    const fs::path a = work_dir() / "w1.json";
    const fs::path b = work_dir() / "w2.json";
    REQUIRE(run("gencurve --kind circle --samples 64 -o " + a.string()).status == 0);
    REQUIRE(run("gencurve --kind ellipse --samples 64 -o " + b.string()).status == 0);
    const RunResult res = run("reparam --f " + a.string() + " --g " + b.string() +
                              " --tol 0.001");
    CHECK(res.status == 2);
    CHECK(res.out.find("error[NoCorrespondence]:") != std::string::npos);
  }
  SUBCASE("unknown flags are a usage error") {
    CHECK(run("gencurve --definitely-not-a-flag 3").status == 1);
  }
  SUBCASE("malformed curve file is a validation error") {
    const fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{\"vertices\": [[0, 0], [1]]}";
    const RunResult res = run("check --input " + bad.string());
    CHECK(res.status == 1);
    CHECK(res.out.find("error[ParseError]:") != std::string::npos);
  }
}

TEST_CASE("deterministic distance reports") {
  const fs::path a = work_dir() / "da.json";
  const fs::path b = work_dir() / "db.json";
  REQUIRE(run("gencurve --kind random-generic --samples 96 --seed 1 -o " + a.string())
              .status == 0);
  REQUIRE(run("gencurve --kind random-generic --samples 96 --seed 2 -o " + b.string())
              .status == 0);
  const fs::path r1 = work_dir() / "rep1.json";
  const fs::path r2 = work_dir() / "rep2.json";
  REQUIRE(run("distance --a " + a.string() + " --b " + b.string() +
              " --lines 6 --offsets 6 -o " + r1.string())
              .status == 0);
  REQUIRE(run("distance --a " + a.string() + " --b " + b.string() +
              " --lines 6 --offsets 6 -o " + r2.string())
              .status == 0);
  CHECK(slurp(r1) == slurp(r2));
}

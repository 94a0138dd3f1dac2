#include "cli.hpp"
#include "report.hpp"

#include "b0box/csv.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using b0box::cli::run;

namespace {

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("b0box-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("project subcommand") {
  auto r = call({"project", "--w", "2,3", "--x", "0,-1", "--delta", "2", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("point: 0,1\n") != std::string::npos);
  CHECK(r.out.find("support: 1\n") != std::string::npos);
  CHECK(r.out.find("sq_distance: 8\n") != std::string::npos);

  r = call({"project", "--w", "3,2", "--x", "0,-1", "--delta", "3", "--k", "1", "--check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("point: 3,0\n") != std::string::npos);
  CHECK(r.out.find("check oracle: pass") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = call({"project", "--w", "0,-1", "--x", "0,-1", "--delta", "2", "--k", "1"});
  CHECK(r.out.find("point: 0,-1\n") != std::string::npos);
  CHECK(r.out.find("distance: 0\n") != std::string::npos);
}

TEST_CASE("project reads vectors from files") {
  const auto dir = scratch("vectors");
  std::ofstream(dir / "w.csv") << "w\n2\n3\n";
  std::ofstream(dir / "x.csv") << "0\n-1\n";
  const auto r = call({"project", "--w", (dir / "w.csv").string(), "--x", (dir / "x.csv").string(), "--delta", "2",
                       "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("point: 0,1\n") != std::string::npos);
}

TEST_CASE("bad arguments exit with code 3") {
  CHECK(call({}).code == 3);
  CHECK(call({"nope"}).code == 3);
  CHECK(call({"project", "--w", "1,2", "--x", "1,1", "--delta", "1", "--k", "1"}).code == 3);
  CHECK(call({"project", "--w", "1,2,3", "--x", "0,0", "--delta", "1", "--k", "1"}).code == 3);
  CHECK(call({"project", "--w", "1,abc", "--x", "0,0", "--delta", "1", "--k", "1"}).code == 3);
  CHECK(call({"project", "--w", "1,2", "--x", "0,0", "--delta", "-1", "--k", "1"}).code == 3);
  const auto r = call({"bpdn", "--solver", "newton"});
  CHECK(r.code == 3);
  CHECK(r.err.find("unknown solver") != std::string::npos);
  CHECK(call({"bpdn", "--m", "10", "--n", "5"}).code == 3);
  CHECK(call({"validate", "--max-n", "0"}).code == 3);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("validate subcommand") {
  auto r = call({"validate", "--trials", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fixtures: 5/5 passed") != std::string::npos);
  CHECK(r.out.find("random: 0/0 passed") != std::string::npos);
  r = call({"validate", "--trials", "200", "--max-n", "2", "--seed", "4"});
  CHECK(r.code == 0);
  r = call({"validate", "--trials", "300", "--max-n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("random: 300/300 passed") != std::string::npos);
}

TEST_CASE("bpdn subcommand writes tables and files") {
  const auto dir = scratch("bpdn");
  const auto r = call({"bpdn", "--solver", "tr-lsr1", "--m", "40", "--n", "80", "--k", "4", "--seed", "3", "--out-dir",
                       dir.string(), "--export-instance", (dir / "instance.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind(b0box::report::table_header(false), 0) == 0);
  CHECK(r.out.find("TR: terminating with ξ1 = ") != std::string::npos);
  CHECK(r.out.find("norm(solution - x_star) / norm(x_star) = ") != std::string::npos);
  for (const char* f : {"solution.csv", "errors.csv", "history.csv", "steps.csv", "iterations.csv", "manifest.txt"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const std::string manifest = slurp(dir / "manifest.txt");
  char hex[16];
  std::snprintf(hex, sizeof hex, "%08x", b0box::report::crc32_of(slurp(dir / "solution.csv")));
  CHECK(manifest.find(std::string("file.solution.csv=crc32:") + hex) != std::string::npos);
  CHECK(manifest.find("solver=tr-lsr1\n") != std::string::npos);

  // h(x) column is zero on every row
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line) && line.find("terminating") == std::string::npos) {
    CHECK(line.substr(25, 7) == "0.0e+00");
    ++rows;
  }
  CHECK(rows > 0);

  // same problem read back from the exported instance gives the same solution
  const auto dir2 = scratch("bpdn2");
  const auto again = call({"bpdn", "--solver", "tr-lsr1", "--instance", (dir / "instance.csv").string(), "--out-dir",
                           dir2.string()});
  REQUIRE(again.code == 0);
  CHECK(slurp(dir / "solution.csv") == slurp(dir2 / "solution.csv"));
  CHECK(slurp(dir / "iterations.csv") == slurp(dir2 / "iterations.csv"));
}

TEST_CASE("table formatting") {
  b0box::IterationRecord rec;
  rec.outer = 1;
  rec.inner = 3;
  rec.f = 1.9;
  rec.sqrt_xi1 = 0.89;
  rec.rho = 1.0;
  rec.delta = 1.0;
  rec.model_scale = 1.0;
  const std::string row = b0box::report::table_row(rec);
  CHECK(row == "    1        3  1.9e+00  0.0e+00 8.9e-01 0.0e+00  1.0e+00 1.0e+00 0.0e+00 0.0e+00 1.0e+00");
  CHECK(b0box::report::sci(-2.5e-7) == "-2.5e-07");
}

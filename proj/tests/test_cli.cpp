#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "eam/cft.hpp"
#include "eam/solver.hpp"
#include "eam/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eamctl_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" EAMCTL_PATH "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_lines(const fs::path& p) {
  std::istringstream in(read(p));
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::istringstream in(data_lines(p));
  std::string line;
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    for (auto cell : eam::split(line, ',')) cells.emplace_back(cell);
    out.push_back(cells);
  }
  return out;
}

json read_json(const fs::path& p) { return json::parse(read(p)); }

}  // namespace

TEST_CASE("fit writes the table, the EAM and the profiles") {
  const auto dir = scratch("fit");
  REQUIRE(run("fit --state dimer --n 8 --out " + dir.string()) == 0);
  for (const char* f : {"table.csv", "eam.csv", "profile.csv", "profile_chord.csv", "errors.json"}) {
    CHECK(fs::exists(dir / f));
  }
  const auto e = eam::load_eam((dir / "eam.csv").string(), eam::TableFormat::csv);
  CHECK(e(0, 1) == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(e(1, 2)) < 1e-9);
  const auto err = read_json(dir / "errors.json");
  CHECK(err["mean_abs_error"].get<double>() < 1e-12);
  CHECK(err["config"]["state"]["kind"] == "dimer");
}

TEST_CASE("invalid arguments exit with code 2") {
  const auto dir = scratch("bad");
  CHECK(run("fit --state nonsense --n 8 --out " + dir.string()) == 2);
  CHECK(run("fit --state dimer --n 7 --out " + dir.string()) == 2);
  CHECK(run("fit --state dimer --n 8 --bogus-flag --out " + dir.string()) == 2);
  CHECK(run("metric --out " + dir.string()) == 2);
}

TEST_CASE("reruns are reproducible") {
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  const std::string args = "fit --state free-fermion --profile dimerized --delta 0.3 --n 10 --sample 300 --seed 4 ";
  REQUIRE(run(args + "--out " + a.string()) == 0);
  REQUIRE(run(args + "--out " + b.string()) == 0);
  for (const char* f : {"table.csv", "eam.csv", "profile.csv"}) {
    CAPTURE(f);
    CHECK(data_lines(a / f) == data_lines(b / f));
  }
}

TEST_CASE("contour routes") {
  const auto dir = scratch("contour");
  REQUIRE(run("contour --state free-fermion --n 10 --block 0-4 --route both --out " + dir.string()) == 0);
  const auto summary = read_json(dir / "contour.json");
  CHECK(summary["fermion"]["sum"].get<double>() > 0.0);
  CHECK(rows(dir / "contour_eam.csv").size() == 6);      // header + 5 sites
  CHECK(rows(dir / "contour_fermion.csv").size() == 6);
  CHECK(run("contour --state xxz --n 8 --block 0-3 --route fermion --out " + dir.string()) == 1);
}

TEST_CASE("cft curves") {
  const auto dir = scratch("cft");
  REQUIRE(run("cft --geometry II --N 12 --c 1 --out " + dir.string()) == 0);
  const auto j = rows(dir / "cft_J.csv");
  REQUIRE(j.size() == 12);
  for (std::size_t k = 1; k < j.size(); ++k) {
    const int r = eam::parse_int(j[k][0]);
    CHECK(eam::parse_double(j[k][1]) == doctest::Approx(eam::cft::lattice_conformal_J(12, r)).epsilon(1e-12));
  }
  CHECK(fs::exists(dir / "cft_S.csv"));
  CHECK(fs::exists(dir / "cft_kernel.csv"));
  CHECK(read_json(dir / "cft.json")["geometry"] == "II");
  CHECK(run("cft --geometry IX --out " + dir.string()) == 2);
}

TEST_CASE("metric and audit on a fitted EAM") {
  const auto dir = scratch("metric");
  REQUIRE(run("fit --state free-fermion --n 8 --out " + dir.string()) == 0);
  REQUIRE(run("metric --input " + (dir / "eam.csv").string() + " --l0 1 --pairs 0:4 --out " + dir.string()) == 0);
  const auto m = read_json(dir / "metric.json");
  CHECK(m["triangle_audit"]["violations"] == 0);
  CHECK(m["geodesics"][0]["path"].front() == 0);
  CHECK(rows(dir / "distances.csv").size() == 1 + 28);

  REQUIRE(run("audit --input " + (dir / "table.csv").string() + " --out " + dir.string()) == 0);
  const auto a = read_json(dir / "audit.json");
  CHECK(a["ssa"]["ssa_violations"] == 0);
  CHECK(a["ssa"]["triples"] == 168);
  REQUIRE(run("audit --input " + (dir / "eam.csv").string() + " --out " + dir.string()) == 0);
}

TEST_CASE("config file and output directory from the environment") {
  const auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"state": "rainbow", "n": 6})";
  }
  const auto out = scratch("envout");
  REQUIRE(run("fit --config " + (dir / "run.json").string() + " --n 8", "EAM_OUTPUT_DIR=" + out.string()) == 0);
  const auto err = read_json(out / "errors.json");
  CHECK(err["config"]["state"]["kind"] == "rainbow");
  CHECK(err["config"]["state"]["n_sites"] == 8);
  {
    std::ofstream cfg(dir / "broken.json");
    cfg << "[1, 2";
  }
  CHECK(run("fit --config " + (dir / "broken.json").string() + " --out " + dir.string()) == 2);
}

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "seesaw/io.hpp"

namespace fs = std::filesystem;
using namespace seesaw;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(SEESAW_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("seesaw_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("every subcommand documents its flags") {
  for (const char* sub : {"spectrum", "impulse", "selfosc", "shuttle", "map", "noise", "threshold", "strobo",
                          "simulate", "config"}) {
    const auto r = run_cli(std::string(sub) + " --help");
    CHECK_MESSAGE(r.code == 0, sub);
    for (const char* flag : {"--preset", "--config", "--seed", "--out", "--set"})
      CHECK_MESSAGE(r.out.find(flag) != std::string::npos, sub << " " << flag);
  }
  const auto shuttle = run_cli("shuttle --help");
  CHECK(shuttle.out.find("--pump-power") != std::string::npos);
  CHECK(shuttle.out.find("--amplitude") != std::string::npos);
  CHECK(run_cli("impulse --help").out.find("--env") != std::string::npos);
}

TEST_CASE("invalid device config exits with code 2") {
  const auto dir = scratch("invalid");
  write_text(dir / "bad.cfg", "torsion.q_mech = -1\n");
  const auto r = run_cli("map --config " + (dir / "bad.cfg").string() + " --out " + (dir / "o").string());
  CHECK(r.code == 2);
  CHECK(r.out.find("Gamma_m > 0") != std::string::npos);
  CHECK(run_cli("map --set optics.kapa=1 --out " + (dir / "o").string()).code == 2);
  CHECK(run_cli("no_such_command").code != 0);
  fs::remove_all(dir);
}

TEST_CASE("map is normalized to one at the origin and reproduces from its echo") {
  const auto dir = scratch("map");
  const auto first = run_cli("map --out " + (dir / "a").string());
  REQUIRE(first.code == 0);
  const std::string text = read_text(dir / "a" / "map.csv");
  const auto csv = parse_csv(text);
  // First column is the row grid; the rest are columns of the delta_r grid.
  const auto& rows = csv.table.columns.front();
  REQUIRE(rows.size() == 161);
  REQUIRE(csv.table.columns.size() == 162);
  CHECK(rows[80] == 0.0);
  CHECK(csv.table.columns[81][80] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(csv.content_hash == csv.recomputed_hash);

  write_text(dir / "echo.cfg", embedded_config(text));
  const auto again = run_cli("map --config " + (dir / "echo.cfg").string() + " --out " + (dir / "b").string());
  REQUIRE(again.code == 0);
  CHECK(parse_csv(read_text(dir / "b" / "map.csv")).content_hash == csv.content_hash);
  CHECK(read_text(dir / "b" / "map_trajectory.csv") == read_text(dir / "a" / "map_trajectory.csv"));
  fs::remove_all(dir);
}

TEST_CASE("config subcommand prints a loadable canonical echo") {
  const auto r = run_cli("config --set pump.power_w=6.76e-6");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("pump.power_w = 6.7599999999999997e-06") != std::string::npos);
}

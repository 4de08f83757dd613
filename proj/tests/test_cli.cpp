#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace gz;
using namespace gz::cli;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gz_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_gz(const std::string& args) {
  const std::string cmd = std::string(GZ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = load_config(json{{"generator", "box(0,1)"}, {"u", "1/2"}, {"P", 1}, {"Q", 1}, {"S", 32}, {"nx", 32}});
  CHECK(std::holds_alternative<recipe::Box>(c.recipe));
  CHECK(c.support == Interval{0, 1});
  CHECK(c.u == Rational(1, 2));
  CHECK(c.S == 32);

  CHECK(load_config(json{{"generator", "box_sine"}}).support == Interval{0, 1});
  CHECK(load_config(json::object()).support == Interval{-8, 8});

  CHECK_THROWS_AS(load_config(json{{"bogus", 1}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"u", "1/0"}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"u", "half"}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"metaplectic", "2,0,0,1"}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"lattice", "1,2,2,4"}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"lattice", "1,0,0,1"}, {"P", 2}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"vmo_pitch", 24}}), ValidationError);
  CHECK_THROWS_AS(load_config(json{{"radii", json::array()}}), ValidationError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(validate_grid(load_config(json{{"S", 64}, {"nx", 48}})), ValidationError);
  CHECK_THROWS_AS(validate_grid(load_config(json{{"S", 48}, {"nx", 48}})), ValidationError);
  // nw must cover the 16 support cells of the Gaussian
  CHECK_THROWS_AS(validate_grid(load_config(json{{"nw", 8}})), ValidationError);
  // u must sit on the 1/nx grid
  CHECK_THROWS_AS(validate_grid(load_config(json{{"nx", 4}, {"u", "1/8"}})), ValidationError);
  CHECK_NOTHROW(validate_grid(load_config(json{{"nx", 8}, {"u", "1/8"}})));
}

TEST_CASE("config hash") {
  const auto a = load_config(json{{"S", 32}, {"u", "1/2"}});
  const auto b = load_config(json{{"u", "1/2"}, {"S", 32}});
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  CHECK(a.hash() != load_config(json{{"S", 32}, {"u", "1/4"}}).hash());
  CHECK(a.hash() == load_config(json{{"S", 32}, {"u", "1/2"}, {"out", "elsewhere"}}).hash());
}

TEST_CASE("output files") {
  const fs::path dir = scratch("out");
  const OutputDir out(dir, "0123456789abcdef");
  out.write_json("x.json", "zak", json{{"value", 1}});
  const json j = json::parse(slurp(dir / "x.json"));
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "zak");
  CHECK(j["config_hash"] == "0123456789abcdef");
  CHECK(j["value"] == 1);
  out.write_csv("y.csv", [](std::ostream& o) { o << "a,b\n1,2\n"; });
  CHECK(slurp(dir / "y.csv") == "# config_hash=0123456789abcdef\na,b\n1,2\n");
  CHECK_FALSE(fs::exists(dir / "y.csv.tmp"));
}

TEST_CASE("analyze reduces a diagonal lattice") {
  const fs::path dir = scratch("reduce");
  json j{{"generator", "gaussian"}, {"lattice", "1/2,0,0,1"}, {"S", 32}, {"nx", 32}, {"nw", 32}, {"out", dir.string()}};
  std::ostringstream log;
  const AnalyzeSummary s = run_analyze(load_config(j), log);
  CHECK(s.body["reduction"]["P"] == 1);
  CHECK(s.body["reduction"]["Q"] == 2);
  // (1/2)Z x Z has density 2: the Gaussian cannot be a Riesz sequence there
  CHECK_FALSE(s.riesz);
  CHECK(s.invariance == "skipped");
  CHECK(fs::exists(dir / "summary.json"));
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run_gz("proptest no-such-suite --out " + (dir / "a").string()) == 2);
  CHECK(run_gz("zak --config " + write_config(dir, json{{"nx", 48}}).string()) == 2);
  CHECK(run_gz("zak --config " + write_config(dir, json{{"typo", 1}}).string()) == 2);
  CHECK(run_gz("nonsense") == 2);
  CHECK(run_gz("zak --out " + (dir / "z").string() + " --config " +
               write_config(dir, json{{"S", 32}, {"nx", 32}, {"nw", 32}}).string()) == 0);
  CHECK(fs::exists(dir / "z" / "zak.csv"));
  CHECK(fs::exists(dir / "z" / "zak_identities.json"));
  CHECK(run_gz("proptest zak-shift --cases 5 --out " + (dir / "p").string()) == 0);
}

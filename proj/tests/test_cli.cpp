#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "m2wis/metis_io.hpp"
#include "m2wis/oracle.hpp"
#include "support/graphs.hpp"

using namespace m2wis;
using namespace m2wis::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "m2wis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("m2wis_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    write_file_atomic(p.string(), contents);
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("solve writes a record and a verifiable solution") {
  TempDir dir;
  Rng rng(1);
  const auto g = random_graph(rng, 18, 0.25);
  const auto graph = dir.file("g.graph", write_metis(g));
  const auto sol = dir.path("g.sol");
  const auto res = dir.path("g.json");
  auto o = invoke({"solve", graph, "--time-limit", "10", "--seed", "1", "--ordering", "baseline",
                   "--population-size", "20", "--output", sol, "--result", res, "--quiet"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.err.empty());
  auto record = nlohmann::json::parse(o.out);
  for (const char* key :
       {"instance", "n", "m", "seed", "weight", "elapsed_seconds", "rounds", "ordering", "strategy"}) {
    CHECK(record.contains(key));
  }
  CHECK(record["weight"].get<Weight>() == brute_force(g).alpha_w);
  CHECK(record["strategy"] == "hybrid");
  CHECK(nlohmann::json::parse(read_text_file(res)) == record);

  auto v = invoke({"verify", graph, sol});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out.rfind("OK, weight=", 0) == 0);

  auto loud = invoke({"solve", graph, "--seed", "1", "--population-size", "10"});
  CHECK(loud.code == cli::kExitOk);
  CHECK(loud.err.find("instance") != std::string::npos);
}

TEST_CASE("verify flags corrupted solutions") {
  TempDir dir;
  const auto graph = dir.file("p3.graph", write_metis(path_graph({5, 1, 5})));
  auto bad = invoke({"verify", graph, dir.file("bad.sol", "0\n1\n")});
  CHECK(bad.code == cli::kExitVerifyFailed);
  CHECK(bad.err.find("edge 0 1") != std::string::npos);
  CHECK(invoke({"verify", graph, dir.file("dup.sol", "0\n0\n")}).code == cli::kExitVerifyFailed);
  CHECK(invoke({"verify", graph, dir.file("far.sol", "9\n")}).code == cli::kExitVerifyFailed);
  CHECK(invoke({"verify", graph, dir.file("junk.sol", "zero\n")}).code == cli::kExitVerifyFailed);
  CHECK(invoke({"verify", graph, dir.file("ok.sol", "0\n2\n")}).code == cli::kExitOk);
}

TEST_CASE("usage and input errors map to exit codes") {
  TempDir dir;
  const auto graph = dir.file("p3.graph", write_metis(path_graph({5, 1, 5})));
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"solve", graph, "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(invoke({"solve", graph, "--seed", "x"}).code == cli::kExitUsage);
  CHECK(invoke({"solve", graph, "--ordering", "fastest"}).code == cli::kExitUsage);
  CHECK(invoke({"solve", graph, "--selection", "random"}).code == cli::kExitUsage);
  CHECK(invoke({"solve", graph, "--mutation-prob", "2"}).code == cli::kExitUsage);
  auto conflict =
      invoke({"solve", graph, "--selection", "participation", "--selection-fraction", "0.5"});
  CHECK(conflict.code == cli::kExitUsage);
  CHECK(conflict.err.find("--selection-fraction") != std::string::npos);
  CHECK(conflict.err.find("--selection participation") != std::string::npos);
  CHECK(invoke({"ordering-bench", graph, "--mode", "all"}).code == cli::kExitUsage);

  const auto broken = dir.file("broken.graph", "3 2\n1\n0 1\n");
  CHECK(invoke({"solve", broken}).code == cli::kExitMalformed);
  CHECK(invoke({"reduce", broken}).code == cli::kExitMalformed);
  CHECK(invoke({"solve", dir.path("missing.graph")}).code == cli::kExitError);

  auto help = invoke({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("ordering-bench") != std::string::npos);
}

TEST_CASE("reduce writes the kernel") {
  TempDir dir;
  Rng rng(2);
  const auto g = random_graph(rng, 20, 0.2);
  const auto graph = dir.file("g.graph", write_metis(g));
  const auto kernel = dir.path("k.graph");
  auto o = invoke({"reduce", graph, "--ordering", "weight", "--output", kernel});
  REQUIRE(o.code == cli::kExitOk);
  auto record = nlohmann::json::parse(o.out);
  const auto k = read_metis_file(kernel);
  CHECK(record["kernel_n"].get<std::size_t>() == k.live_count());
  CHECK(record["offset"].get<Weight>() + brute_force(k).alpha_w == brute_force(g).alpha_w);
}

TEST_CASE("exact subcommand") {
  TempDir dir;
  const auto graph = dir.file("c5.graph", write_metis(cycle_graph({1, 1, 1, 1, 1})));
  auto o = invoke({"exact", graph, "--output", dir.path("c5.sol")});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(o.out)["weight"] == 2);
  CHECK(read_solution_file(dir.path("c5.sol")).size() == 2);
  CHECK(invoke({"exact", graph, "--max-vertices", "3"}).code == cli::kExitError);
}

TEST_CASE("ordering bench tables") {
  TempDir dir;
  Rng rng(3);
  const auto graph = dir.file("g.graph", write_metis(random_graph(rng, 30, 0.1)));
  auto o = invoke({"ordering-bench", graph, "--mode", "disable-one", "--result", dir.path("b.json")});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(count_lines(o.out) == 14);
  CHECK(o.out.rfind("label\t", 0) == 0);
  CHECK(nlohmann::json::parse(read_text_file(dir.path("b.json"))).size() == 13);
  auto p = invoke({"ordering-bench", graph, "--mode", "presets"});
  CHECK(count_lines(p.out) == 6);
}

TEST_CASE("same seed gives byte-identical solution files") {
  TempDir dir;
  Rng rng(4);
  const auto graph = dir.file("g.graph", write_metis(random_graph(rng, 200, 0.03)));
  for (const char* name : {"a.sol", "b.sol"}) {
    CHECK(invoke({"solve", graph, "--seed", "7", "--population-size", "16", "--unsuccessful-limit",
                  "50", "--quiet", "--output", dir.path(name)})
              .code == cli::kExitOk);
  }
  CHECK(read_text_file(dir.path("a.sol")) == read_text_file(dir.path("b.sol")));
}

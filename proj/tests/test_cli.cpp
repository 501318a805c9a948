#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

#ifndef BUBBLE_CLI
#error "BUBBLE_CLI must point at the bubble executable"
#endif

namespace {

int runCli(const std::string& args) {
  const std::string cmd = std::string(BUBBLE_CLI) + " " + args + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

fs::path tempDir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("bubble_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void writeFile(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  os << content;
}

std::string readFile(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli build: happy path writes meshes and a report") {
  const fs::path dir = tempDir("build");
  writeFile(dir / "spec.json",
            R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"
            R"("resolution":0.1,"seed":42})");
  CHECK(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
               (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "cluster.off"));
  CHECK(fs::exists(dir / "out" / "cluster.obj"));
  const std::string report = readFile(dir / "out" / "build_report.json");
  CHECK(report.find("\"branch\": \"flat_interface\"") != std::string::npos);
}

TEST_CASE("cli build: constructor violations exit 3") {
  const fs::path dir = tempDir("unequal");
  writeFile(dir / "spec.json",
            R"({"kind":"standard_triple","volumes":[1.0,2.0,3.0],)"
            R"("resolution":0.1})");
  CHECK(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
               (dir / "out").string()) == 3);
}

TEST_CASE("cli build: malformed JSON exits 2") {
  const fs::path dir = tempDir("malformed");
  writeFile(dir / "spec.json", "{\"kind\": ");
  CHECK(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
               (dir / "out").string()) == 2);
}

TEST_CASE("cli verify: catalogue passes, jittered fails") {
  const fs::path dir = tempDir("verify");
  writeFile(dir / "spec.json",
            R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"
            R"("resolution":0.04,"seed":1})");
  REQUIRE(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
                 (dir / "good").string()) == 0);
  CHECK(runCli("verify --mesh " + (dir / "good" / "cluster.off").string() +
               " --out " + (dir / "vgood").string()) == 0);
  writeFile(dir / "bad.json",
            R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"
            R"("resolution":0.04,"seed":1,"jitter_rel":0.05})");
  REQUIRE(runCli("build --spec " + (dir / "bad.json").string() + " --out " +
                 (dir / "bad").string()) == 0);
  CHECK(runCli("verify --mesh " + (dir / "bad" / "cluster.off").string() +
               " --out " + (dir / "vbad").string()) != 0);
}

TEST_CASE("cli verify: single icosphere passes with lambda near 2/r") {
  const fs::path dir = tempDir("ball");
  writeFile(dir / "spec.json",
            R"({"kind":"disjoint_balls","volumes":[4.18879020478639],)"
            R"("resolution":0.07})");
  REQUIRE(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
                 (dir / "out").string()) == 0);
  CHECK(runCli("verify --mesh " + (dir / "out" / "cluster.off").string() +
               " --out " + (dir / "v").string()) == 0);
  const std::string rep = readFile(dir / "v" / "variation_report.json");
  CHECK(rep.find("\"lambdas\"") != std::string::npos);
}

TEST_CASE("cli evolve: zero-step run exits 4 with a one-row trace") {
  const fs::path dir = tempDir("evolve0");
  writeFile(dir / "spec.json",
            R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"
            R"("resolution":0.1})");
  writeFile(dir / "params.json", R"({"max_steps":0})");
  CHECK(runCli("evolve --spec " + (dir / "spec.json").string() + " --params " +
               (dir / "params.json").string() + " --out " +
               (dir / "out").string()) == 4);
  const std::string trace = readFile(dir / "out" / "trace.csv");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 2);  // header + 1 row
}

TEST_CASE("cli classify emits a configuration") {
  const fs::path dir = tempDir("classify");
  writeFile(dir / "spec.json",
            R"({"kind":"disjoint_balls","volumes":[1.0,0.5],)"
            R"("resolution":0.08})");
  REQUIRE(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
                 (dir / "out").string()) == 0);
  CHECK(runCli("classify --mesh " + (dir / "out" / "cluster.off").string() +
               " --out " + (dir / "c").string()) == 0);
  const std::string cls = readFile(dir / "c" / "classification.json");
  CHECK(cls.find("\"configuration\": \"disjoint_balls\"") != std::string::npos);
  CHECK(cls.find("\"case\": 1") != std::string::npos);
}

TEST_CASE("cli determinism: identical manifests give identical bytes") {
  const fs::path dir = tempDir("determinism");
  writeFile(dir / "spec.json",
            R"({"kind":"standard_double_bubble","volumes":[1.0,1.0],)"
            R"("resolution":0.07,"seed":5,"jitter_rel":0.02})");
  REQUIRE(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
                 (dir / "a").string()) == 0);
  REQUIRE(runCli("build --spec " + (dir / "spec.json").string() + " --out " +
                 (dir / "b").string()) == 0);
  CHECK(readFile(dir / "a" / "cluster.off") ==
        readFile(dir / "b" / "cluster.off"));
}

TEST_CASE("cli sweep: explicit grid with an infeasible row exits 1") {
  const fs::path dir = tempDir("sweep");
  writeFile(dir / "grid.json", R"({"rows":[
    {"kind":"disjoint_balls","volumes":[1.0,0.5],"resolution":0.08},
    {"kind":"lined_up_triple","volumes":[1.0,50.0,1.0],"resolution":0.08,
     "branch":"non_parallel"}
  ]})");
  CHECK(runCli("sweep --grid " + (dir / "grid.json").string() + " --out " +
               (dir / "out").string()) == 1);
  const std::string csv = readFile(dir / "out" / "sweep.csv");
  CHECK(csv.find("volume_out_of_range") != std::string::npos);
  CHECK(csv.find("pass") != std::string::npos);
}

TEST_CASE("cli sweep: empty grid writes just the header and exits 0") {
  const fs::path dir = tempDir("sweep_empty");
  writeFile(dir / "grid.json", R"({"rows":[]})");
  CHECK(runCli("sweep --grid " + (dir / "grid.json").string() + " --out " +
               (dir / "out").string()) == 0);
  const std::string csv = readFile(dir / "out" / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

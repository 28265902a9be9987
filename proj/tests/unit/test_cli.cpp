#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {
const fs::path root = fs::temp_directory_path() / "hatom_cli_test";

int run(const std::string &args) {
  const std::string cmd = std::string(HATOM_CLI_PATH) + " --cache-dir " +
                          (root / "cache").string() + " " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Setup {
  Setup() {
    fs::remove_all(root);
    fs::create_directories(root);
  }
};
const Setup setup_once;
} // namespace

TEST_CASE("help and configuration errors") {
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("tf-solve --delta 0.2") == 2);
  CHECK(run("tf-solve --kappa 0.95") == 2);
  CHECK(run("tf-solve --format xml") == 2);
  CHECK(run("tf-solve --z-grid -5") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("bounds-upper --mode exact") == 2);
}

TEST_CASE("tf-solve writes one row per Z") {
  const auto out = root / "tf";
  REQUIRE(run("tf-solve --z-grid 1,10,100 --output-dir " + out.string()) == 0);
  const std::string csv = slurp(out / "tf_atoms.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  REQUIRE(run("tf-solve --format json --z-grid 1,10 --output-dir " + out.string()) == 0);
  CHECK(fs::exists(out / "tf_atoms.jsonl"));
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string args =
      "bounds-upper --mode mc --mc-samples 40000 --z-grid 10,100,1000 --seed 7";
  REQUIRE(run(args + " --output-dir " + (root / "r1").string()) == 0);
  REQUIRE(run(args + " --jobs 2 --output-dir " + (root / "r2").string()) == 0);
  int files = 0;
  for (const auto &e : fs::directory_iterator(root / "r1")) {
    ++files;
    const auto other = root / "r2" / e.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(e.path()) == slurp(other));
  }
  CHECK(files >= 3);
}

TEST_CASE("configuration file") {
  const auto cfg = root / "run.ini";
  std::ofstream(cfg) << "kappa = 0.4\nz-grid = [10, 100, 1000]\n";
  CHECK(run("--config " + cfg.string() + " bounds-upper --output-dir " +
            (root / "cfg").string()) == 0);
  const std::string csv = slurp(root / "cfg" / "bounds_terms.csv");
  CHECK(csv.find("0.40000000000000002") != std::string::npos);
}

TEST_CASE("check command passes") {
  CHECK(run("check --output-dir " + (root / "check").string()) == 0);
}

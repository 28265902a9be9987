#include "doctest.h"

#include "fixtures.hpp"
#include "hatom/errors.hpp"
#include "hatom/io/records.hpp"
#include "hatom/io/serialization.hpp"
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace hatom;
using namespace hatom::io;
using hatom::testing::universal;
namespace fs = std::filesystem;

namespace {
fs::path scratch_dir(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("hatom_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
} // namespace

TEST_CASE("doubles round-trip through 17 significant digits") {
  for (double v : {0.1, -1.588071022611368, 1e-300, 6.02214076e23, 1.0 / 3.0})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("CSV and JSON-lines rendering") {
  Record r;
  r.add("term", std::string("lemma1"))
      .add("Z", 10.0)
      .add("samples", std::uint64_t{1000})
      .add("ok", true)
      .add("grid", std::vector<double>{1.0, 2.5})
      .add("note", std::string("a,b"));
  CHECK(csv_header(r) == "term,Z,samples,ok,grid,note");
  CHECK(csv_row(r) == "lemma1,10,1000,true,1;2.5,\"a,b\"");
  const auto j = nlohmann::json::parse(json_line(r));
  CHECK(j["term"] == "lemma1");
  CHECK(j["Z"].get<double>() == 10.0);
  CHECK(j["samples"].get<std::uint64_t>() == 1000);
  CHECK(j["ok"].get<bool>());
  CHECK(j["grid"].size() == 2);
  const std::string csv = render({r, r}, Format::csv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(parse_format("json") == Format::json);
  CHECK(extension(Format::json) == ".jsonl");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("record files are written atomically and deterministically") {
  const auto dir = scratch_dir("records");
  Record r;
  r.add("x", 1.25);
  write_records(dir / "a.csv", {r}, Format::csv);
  write_records(dir / "b.csv", {r}, Format::csv);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.csv") == "x\n1.25\n");
}

TEST_CASE("universal solution cache round trip") {
  const auto dir = scratch_dir("cache");
  const auto &sol = *universal();
  save_universal(dir / "u.json", sol);
  const auto back = load_universal(dir / "u.json");
  CHECK(back.slope0() == sol.slope0());
  CHECK(back.grid().size() == sol.grid().size());
  for (double x : {1e-6, 0.3, 7.0, 500.0})
    CHECK(back.phi_at(x) == sol.phi_at(x));
  CHECK(universal_cache_name(1e-10) == "tf_universal_tol1e-10.json");

  bool hit = true;
  const auto first = cached_universal(dir, 1e-10, &hit);
  CHECK_FALSE(hit);
  const auto second = cached_universal(dir, 1e-10, &hit);
  CHECK(hit);
  CHECK(first->slope0() == second->slope0());
}

TEST_CASE("malformed or mismatched caches are rejected") {
  CHECK_THROWS_AS(universal_from_json("{not json"), NumericalError);
  CHECK_THROWS_AS(universal_from_json(R"({"schema":"other","version":1})"),
                  NumericalError);
  CHECK_THROWS_AS(atom_summary_from_json(universal_to_json(*universal())),
                  NumericalError);
}

TEST_CASE("atom summary round trip") {
  const auto dir = scratch_dir("atom");
  const tf::TFAtom a(26.0, universal());
  save_atom(dir / "fe.json", a);
  const auto s = load_atom_summary(dir / "fe.json");
  CHECK(s.Z == 26.0);
  CHECK(s.energy == a.energy());
  CHECK(s.kinetic == a.kinetic());
  CHECK(s.b == a.b());
}

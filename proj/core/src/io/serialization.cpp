#include "hatom/io/serialization.hpp"
#include "hatom/errors.hpp"
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hatom::io {

namespace {
using nlohmann::json;

std::string read_file(const std::filesystem::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in)
    throw NumericalError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &file, const std::string &text) {
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw NumericalError("cannot write " + tmp);
    out << text << '\n';
  }
  std::filesystem::rename(tmp, file);
}

json parse_checked(std::string_view text, std::string_view schema) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw NumericalError(std::string("malformed cache: ") + e.what());
  }
  if (j.value("schema", "") != schema || j.value("version", 0) != schema_version)
    throw NumericalError(fmt::format("cache schema mismatch: expected {} v{}",
                                     schema, schema_version));
  return j;
}
} // namespace

std::string universal_to_json(const tf::TFUniversalSolution &sol) {
  const auto &g = sol.grid();
  json j;
  j["schema"] = universal_schema;
  j["version"] = schema_version;
  j["grid"] = {{"x_min", g.r_min()}, {"x_max", g.r_max()}, {"nodes", g.size()}};
  j["slope0"] = sol.slope0();
  j["slope0_check"] = sol.slope0_check();
  j["tolerance"] = sol.tolerance();
  j["phi"] = std::vector<double>(sol.phi().begin(), sol.phi().end());
  j["dphi"] = std::vector<double>(sol.dphi().begin(), sol.dphi().end());
  return j.dump();
}

tf::TFUniversalSolution universal_from_json(std::string_view text) {
  const json j = parse_checked(text, universal_schema);
  try {
    const auto &g = j.at("grid");
    LogGrid grid(g.at("x_min").get<double>(), g.at("x_max").get<double>(),
                 g.at("nodes").get<std::size_t>());
    return tf::TFUniversalSolution(
        std::move(grid), j.at("phi").get<std::vector<double>>(),
        j.at("dphi").get<std::vector<double>>(), j.at("slope0").get<double>(),
        j.at("slope0_check").get<double>(), j.at("tolerance").get<double>());
  } catch (const json::exception &e) {
    throw NumericalError(std::string("malformed universal cache: ") + e.what());
  } catch (const DomainError &e) {
    throw NumericalError(std::string("invalid universal cache: ") + e.what());
  }
}

void save_universal(const std::filesystem::path &file,
                    const tf::TFUniversalSolution &sol) {
  write_file(file, universal_to_json(sol));
}

tf::TFUniversalSolution load_universal(const std::filesystem::path &file) {
  return universal_from_json(read_file(file));
}

std::string atom_to_json(const tf::TFAtom &atom) {
  json j;
  j["schema"] = atom_schema;
  j["version"] = schema_version;
  j["Z"] = atom.Z();
  j["b"] = atom.b();
  j["slope0"] = atom.universal().slope0();
  j["energy"] = atom.energy();
  j["kinetic"] = atom.kinetic();
  j["attraction"] = atom.attraction();
  j["repulsion"] = atom.repulsion();
  const auto &g = atom.grid();
  j["grid"] = {{"r_min", g.r_min()}, {"r_max", g.r_max()}, {"nodes", g.size()}};
  j["rho"] = std::vector<double>(atom.rho().values().begin(),
                                 atom.rho().values().end());
  j["V"] = std::vector<double>(atom.V().values().begin(),
                               atom.V().values().end());
  return j.dump();
}

AtomSummary atom_summary_from_json(std::string_view text) {
  const json j = parse_checked(text, atom_schema);
  try {
    return {j.at("Z").get<double>(),          j.at("b").get<double>(),
            j.at("energy").get<double>(),     j.at("kinetic").get<double>(),
            j.at("attraction").get<double>(), j.at("repulsion").get<double>()};
  } catch (const json::exception &e) {
    throw NumericalError(std::string("malformed atom cache: ") + e.what());
  }
}

void save_atom(const std::filesystem::path &file, const tf::TFAtom &atom) {
  write_file(file, atom_to_json(atom));
}

AtomSummary load_atom_summary(const std::filesystem::path &file) {
  return atom_summary_from_json(read_file(file));
}

std::string universal_cache_name(double tolerance) {
  return fmt::format("tf_universal_tol{:.0e}.json", tolerance);
}

std::string atom_cache_name(double Z, double tolerance) {
  return fmt::format("tf_atom_Z{:.17g}_tol{:.0e}.json", Z, tolerance);
}

std::shared_ptr<const tf::TFUniversalSolution>
cached_universal(const std::filesystem::path &dir, double tolerance,
                 bool *from_cache) {
  if (from_cache)
    *from_cache = false;
  if (dir.empty())
    return std::make_shared<const tf::TFUniversalSolution>(
        tf::solve_universal_tf(tolerance));
  const auto file = dir / universal_cache_name(tolerance);
  if (std::filesystem::exists(file)) {
    auto sol = load_universal(file);
    if (sol.tolerance() == tolerance) {
      if (from_cache)
        *from_cache = true;
      return std::make_shared<const tf::TFUniversalSolution>(std::move(sol));
    }
  }
  auto sol = tf::solve_universal_tf(tolerance);
  save_universal(file, sol);
  return std::make_shared<const tf::TFUniversalSolution>(std::move(sol));
}

} // namespace hatom::io

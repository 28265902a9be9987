#pragma once

#include "hatom/tf/atom.hpp"
#include "hatom/tf/universal.hpp"
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

//! JSON persistence of TF solutions. Doubles are written in shortest
//! round-trip form, so a reloaded solution is bit-identical to the original.
namespace hatom::io {

inline constexpr std::string_view universal_schema = "hatom.tf_universal";
inline constexpr std::string_view atom_schema = "hatom.tf_atom";
inline constexpr int schema_version = 1;

std::string universal_to_json(const tf::TFUniversalSolution &sol);
//! Throws NumericalError on schema / version mismatch or malformed input.
tf::TFUniversalSolution universal_from_json(std::string_view text);

void save_universal(const std::filesystem::path &file,
                    const tf::TFUniversalSolution &sol);
tf::TFUniversalSolution load_universal(const std::filesystem::path &file);

//! Per-Z summary: Z, b, energies, slope0 and the rho / V tables.
std::string atom_to_json(const tf::TFAtom &atom);

struct AtomSummary {
  double Z, b, energy, kinetic, attraction, repulsion;
};
AtomSummary atom_summary_from_json(std::string_view text);

void save_atom(const std::filesystem::path &file, const tf::TFAtom &atom);
AtomSummary load_atom_summary(const std::filesystem::path &file);

//! File name of the universal cache for a tolerance, e.g.
//! "tf_universal_tol1e-10.json".
std::string universal_cache_name(double tolerance);
std::string atom_cache_name(double Z, double tolerance);

//! Loads the universal solution from `dir` when a cache file for this
//! tolerance exists, otherwise solves and writes it (dir created on demand).
//! An empty `dir` disables caching.
std::shared_ptr<const tf::TFUniversalSolution>
cached_universal(const std::filesystem::path &dir, double tolerance,
                 bool *from_cache = nullptr);

} // namespace hatom::io

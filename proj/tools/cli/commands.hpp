#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hatom::cli {

enum class Command { tf_solve, bounds_upper, bounds_lower, hole_scan, sandwich, check };

Command parse_command(const std::string &name);
std::string command_name(Command c);

struct RunConfig {
  Command command{Command::check};
  std::vector<double> z_grid; //!< empty: per-command default
  double kappa{0.5};
  double delta{5.0 / 9.0};
  std::uint64_t seed{20240601};
  std::uint64_t mc_samples{1000000};
  unsigned jobs{1};
  std::filesystem::path output_dir{"hatom_out"};
  std::string format{"csv"};
  std::filesystem::path cache_dir;
  std::string mode{"moment_bound"};
  double tolerance{1e-10};
  double lieb_constant{1.0};
  double remainder_cap{1e4};
  std::uint64_t configurations{10000};
  double correlation_z{20.0};
};

//! Default Z grid of a command.
std::vector<double> default_z_grid(Command c);

//! Throws ConfigError on any out-of-range value.
void validate(const RunConfig &cfg);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Runs one command; returns the number of invariant violations found.
//! Files go to cfg.output_dir; a summary goes to `log`.
std::uint64_t run(const RunConfig &cfg, std::ostream &log);

} // namespace hatom::cli

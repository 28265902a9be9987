#include "commands.hpp"
#include "hatom/errors.hpp"
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>

namespace {
enum Exit { ok = 0, invariant = 1, config = 2, numerical = 3 };
}

int main(int argc, char **argv) {
  using hatom::cli::RunConfig;
  RunConfig cfg;
  std::string cache_dir, output_dir = cfg.output_dir.string();

  CLI::App app{"Thomas-Fermi / Brown-Ravenhall heavy-atom bound calculator"};
  app.set_config("--config", "", "TOML/INI configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  app.add_option("--z-grid", cfg.z_grid, "Nuclear charges, e.g. 10,100,1000")
      ->delimiter(',');
  app.add_option("--kappa", cfg.kappa, "Z / c");
  app.add_option("--delta", cfg.delta, "Coherent-state localization exponent");
  app.add_option("--seed", cfg.seed, "Random seed (64-bit)");
  app.add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo samples per term");
  app.add_option("--jobs", cfg.jobs, "Worker threads (0 = all cores)");
  app.add_option("--output-dir", output_dir, "Directory for emitted records");
  app.add_option("--format", cfg.format, "csv or json (JSON lines)");
  app.add_option("--cache-dir", cache_dir,
                 "TF solution cache (overridden by HEAVY_ATOM_CACHE)");
  app.add_option("--mode", cfg.mode, "moment_bound or monte_carlo");
  app.add_option("--tolerance", cfg.tolerance, "TF shooting tolerance");
  app.add_option("--lieb-constant", cfg.lieb_constant,
                 "Placeholder constant of the Z^(5/2 - delta/2) remainder");
  app.add_option("--remainder-cap", cfg.remainder_cap,
                 "Largest allowed upper remainder / Z^(20/9)");
  app.add_option("--configurations", cfg.configurations,
                 "Random configurations for the correlation inequality");
  app.add_option("--correlation-z", cfg.correlation_z,
                 "Nuclear charge of the correlation sweep");

  std::string command;
  const std::pair<const char *, const char *> commands[] = {
      {"tf-solve", "TF energies and density diagnostics per Z"},
      {"bounds-upper", "Relativistic trial-state upper bound per Z"},
      {"bounds-lower", "Semiclassical lower bound per Z"},
      {"hole-scan", "Exchange-hole potential sups and correlation sweep"},
      {"sandwich", "Lower and upper bounds with remainder scaling fits"},
      {"check", "Run the invariant suite"}};
  for (const auto &[name, help] : commands)
    app.add_subcommand(name, help)->callback([&command, name = name] { command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return config;
  }

  if (const char *env = std::getenv("HEAVY_ATOM_CACHE"); env && *env)
    cache_dir = env;
  cfg.cache_dir = cache_dir;
  cfg.output_dir = output_dir;

  try {
    cfg.command = hatom::cli::parse_command(command);
    const auto violations = hatom::cli::run(cfg, std::cout);
    return violations == 0 ? ok : invariant;
  } catch (const hatom::cli::ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config;
  } catch (const hatom::DomainError &e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config;
  } catch (const hatom::InvariantViolation &e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return invariant;
  } catch (const std::exception &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical;
  }
}

#include <iostream>

#include "CLI11.hpp"
#include "app.hpp"

int main(int argc, char** argv) {
  using namespace cmvspec::app;
  CLI::App cli{"Spectra, densities of states and thin-spectrum constructions for periodic CMV operators"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", CMVSPEC_VERSION);

  RunConfig config;
  long long grid = 0;
  double tol = 0.0;
  unsigned threads = 0;

  const std::pair<Command, const char*> commands[] = {
      {Command::Spectrum, "bands, gaps and touch points of a periodic word"},
      {Command::Dos, "density of states, its cdf and the two lower bounds on a tau grid"},
      {Command::Lyapunov, "discriminant and Lyapunov exponent on the circle; Thouless check at given points"},
      {Command::Schur, "Schur function values at every even shift inside the bands"},
      {Command::Thin, "one thin-spectrum refinement with its certificate"},
      {Command::Tower, "multi-level refinement tower"},
      {Command::Walk, "coined quantum walk with survival and RAGE averages"},
      {Command::Verify, "run the acceptance suite"},
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = cli.add_subcommand(to_string(cmd), help);
    sub->add_option("--config", config.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", config.out_dir, "output directory")->capture_default_str();
    sub->add_option("--grid", grid, "grid size override");
    sub->add_option("--tol", tol, "tolerance override");
    sub->add_option("--threads", threads, "worker threads (default: CMV_SPECTRA_THREADS, then all cores)");
    subs.emplace_back(sub, cmd);
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    config.command = cmd;
    if (sub->count("--grid")) config.grid = grid;
    if (sub->count("--tol")) config.tol = tol;
    if (sub->count("--threads")) config.threads = threads;
  }
  return run(config, std::cout);
}

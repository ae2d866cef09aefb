#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "expara/config.hpp"
#include "expara/errors.hpp"
#include "expara/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exponential integrators, repartitioning and Parareal experiments"};
  app.require_subcommand(1);
  int threads = 1;
  std::string out_dir = ".";
  app.add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment config (or preset:NAME)");
  run->add_option("config", config_path, "Config file")->required();
  auto* list = app.add_subcommand("list-presets", "List shipped presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& p : expara::presets()) std::cout << expara::describe_preset(p) << '\n';
      return 0;
    }
    expara::ExperimentConfig cfg;
    const std::string prefix = "preset:";
    if (config_path.rfind(prefix, 0) == 0) {
      cfg.set("experiment", "preset", config_path.substr(prefix.size()));
    } else {
      cfg = expara::ExperimentConfig::load(config_path);
    }
    expara::RunOptions opt;
    opt.out_dir = out_dir;
    opt.threads = threads;
    for (const auto& f : expara::run_experiment(cfg, opt)) std::cout << f << '\n';
  } catch (const expara::Error& e) {
    std::cerr << "expara: " << expara::kind_name(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case expara::ErrorKind::config: return 2;
      case expara::ErrorKind::overflow: return 3;
      case expara::ErrorKind::unsupported: return 4;
      case expara::ErrorKind::domain: return 5;
    }
  } catch (const std::exception& e) {
    std::cerr << "expara: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

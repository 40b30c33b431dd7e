#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "circuitlab/experiments.hpp"
#include "circuitlab/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"circuitlab: random, structured and monitored circuit experiments"};
  app.require_subcommand(1);

  CLI::App* list = app.add_subcommand("list", "list available experiments");

  std::string config_path, out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::vector<CLI::App*> subs;
  for (const auto& info : circuitlab::experiment_registry()) {
    CLI::App* sub = app.add_subcommand(info.name, info.description);
    sub->add_option("--config", config_path, "config file (key = value lines)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "master seed (overrides config)")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--threads", threads,
                    "worker threads (default: CIRCUITLAB_THREADS or hardware)");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& info : circuitlab::experiment_registry())
      std::printf("%-28s %s\n", info.name.c_str(), info.description.c_str());
    return 0;
  }
  for (const auto* sub : subs) {
    if (sub->parsed()) {
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      const int threads_eff =
          threads > 0 ? threads : circuitlab::default_thread_count();
      return circuitlab::run_experiment_cli(sub->get_name(), config_path,
                                            out_dir, seed, seed_given,
                                            threads_eff);
    }
  }
  return 2;
}

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "lrergo/experiment.hpp"
#include "lrergo/parallel.hpp"

using namespace lrergo;

int main(int argc, char** argv) {
  CLI::App app{"finite-volume laboratory for propagation bounds and ergodic averages on quantum "
               "spin lattices"};
  app.set_version_flag("--version", kToolVersion);

  std::string command, config_path, out_dir = ".", format = "default";
  int workers = 0;
  bool serial = false;

  app.add_option("command", command,
                 "lr-certify | localize | ergodic-sweep | oscillatory | moments | mean-square | "
                 "multi-point | spacelike-probe | kms-check | hydro");
  app.add_option("--config", config_path, "experiment description file")->required();
  app.add_option("--workers", workers, "worker threads (0 = all cores)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "artifact format: csv | json");
  app.add_flag("--serial", serial, "run the serial reference kernels");

  CLI11_PARSE(app, argc, argv);

  try {
    set_worker_count(workers);
    ExperimentConfig ex = parse_experiment(load_config(config_path));
    if (!command.empty()) {
      if (!ex.command.empty() && ex.command != command)
        throw config_error("config names command '" + ex.command + "' but '" + command +
                           "' was requested");
      ex.command = command;
    }
    if (ex.command.empty())
      throw config_error("no command given (argument or [command] name in the config)");

    RunOptions opts;
    opts.out_dir = out_dir;
    opts.format = format;
    opts.exec = serial ? Exec::serial : Exec::openmp;
    RunResult res = run_experiment(ex, opts);
    for (const auto& f : res.outputs) std::printf("wrote %s\n", f.c_str());
    if (res.exit_code == 4) std::fprintf(stderr, "certificate violated\n");
    return res.exit_code;
  } catch (const guard_error& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return 3;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "cpnsw/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cpnswitch - timed coloured Petri net simulation of an Ethernet switch"};

  cpnsw::CliInvocation inv;
  std::uint64_t seed = 0;
  std::uint64_t stop_steps = 0;
  long long stop_time = 0;
  std::string weights;
  std::string emit;

  app.add_option("--scenario", inv.scenario,
                 "built-in name (sp-base, sp-congested, wrr-base, wrr-congested) or scenario file")
      ->required();
  auto* seed_opt = app.add_option("--seed", seed, "override the random seed");
  auto* steps_opt = app.add_option("--stop-steps", stop_steps, "override the step bound");
  auto* time_opt = app.add_option("--stop-time", stop_time, "override the time bound (t.u)");
  auto* weights_opt =
      app.add_option("--weights", weights, "WRR weights, comma separated (e.g. 6,3,1)");
  app.add_option("--out", inv.out_dir, "output directory")->capture_default_str();
  app.add_option("--emit", emit, "outputs to write: stats,records,trace,net");

  CLI11_PARSE(app, argc, argv);

  if (*seed_opt) inv.seed = seed;
  if (*steps_opt) inv.stop_steps = stop_steps;
  if (*time_opt) inv.stop_time = stop_time;
  if (*weights_opt) {
    std::vector<int> w;
    std::stringstream ss(weights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        w.push_back(std::stoi(item));
      } catch (const std::exception&) {
        std::cerr << "error: bad --weights value '" << item << "'\n";
        return cpnsw::kExitBuildError;
      }
    }
    inv.weights = w;
  }
  if (!emit.empty()) {
    inv.emit.clear();
    std::stringstream ss(emit);
    std::string item;
    while (std::getline(ss, item, ',')) inv.emit.insert(item);
  }

  return cpnsw::run_command(inv, std::cout, std::cerr);
}

// edspin: scenario-driven front end for the evolution, trajectory and check modules.
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "commands.hpp"
#include "config.hpp"

#include "edspin/common/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace edspin::cli;
  CLI::App app{"Pauli-field evolution, trajectory ensembles and invariant checks"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  int threads = 1;
  const std::map<std::string, Format> formats = {{"csv", Format::kCsv}, {"json", Format::kJson}};

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config, "Scenario JSON file");
    if (config_required) c->required();
    sub->add_option("--out", opt.out, "Output directory (default <name>_<command>)");
    sub->add_option("--seed", seed, "Override the scenario seed");
    sub->add_option("--threads", threads, "Worker threads for particle ensembles")->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format, "Table format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto* evolve = app.add_subcommand("evolve", "Evolve the Pauli field and write the ledger");
  auto* traj = app.add_subcommand("trajectories", "Evolve the field and carry a particle ensemble");
  auto* sg = app.add_subcommand("sg", "Stern-Gerlach ensemble in the impulsive 1-D reduction");
  auto* check = app.add_subcommand("check", "Run invariant suites and print pass/fail JSON");
  add_common(evolve, true);
  add_common(traj, true);
  add_common(sg, true);
  add_common(check, false);
  check->add_option("--suite", opt.suite,
                    "all, algebra, geometry, identity, conservation, timereversal or born");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (auto* sub : {evolve, traj, sg, check}) {
    if (sub->count("--seed")) opt.seed = seed;
    if (sub->count("--threads")) opt.threads = threads;
  }

  try {
    if (evolve->parsed()) return run_evolve(opt, std::cerr);
    if (traj->parsed()) return run_trajectories(opt, std::cerr);
    if (sg->parsed()) return run_sg(opt, std::cerr);
    return run_check(opt, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const edspin::Error& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

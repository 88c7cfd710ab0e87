#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "config.hpp"
#include "hypgrowth/errors.hpp"
#include "hypgrowth/gadgets.hpp"
#include "tasks.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGuardBand = 3;
constexpr int kExitOracleCap = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace hypgrowth;
  CLI::App app{"hypgrowth: percolation experiments on graphs in hyperbolic half-space"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* run = app.add_subcommand("run", "run the configured experiment and write its outputs");
  run->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override percolation.seed");
  run->add_option("--threads", threads, "worker threads (results do not depend on this)")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "override output.dir");

  auto* val = app.add_subcommand("validate", "check a config and print the resolved parameters");
  val->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  val->add_option("--seed", seed, "override percolation.seed");
  val->add_option("--out", out_dir, "override output.dir");

  std::string export_dir;
  auto* list = app.add_subcommand("list-gadgets", "list the bundled gadget corpus");
  list->add_option("--export", export_dir, "also write each gadget as <dir>/<name>.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << "name,parents,vertices,seed,terminal,radii,slab\n";
      for (const auto& g : oracle::gadget_corpus()) {
        std::cout << g.name << ',' << g.graph.parent_count() << ',' << g.graph.vertex_count() << ',' << g.seed << ','
                  << (g.terminal ? std::to_string(*g.terminal) : "-") << ',';
        for (std::size_t i = 0; i < g.radii.size(); ++i) std::cout << (i ? ";" : "") << g.radii[i];
        std::cout << ',' << (g.slab ? "yes" : "no") << '\n';
        if (!export_dir.empty()) {
          std::filesystem::create_directories(export_dir);
          oracle::save_gadget(g, std::filesystem::path(export_dir) / (g.name + ".json"));
        }
      }
      return 0;
    }
    auto config = cli::load_config(config_path);
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (val->parsed()) {
      for (const auto& [k, v] : cli::validate(config)) std::cout << k << " = " << v << '\n';
      return 0;
    }
    const auto result = cli::run_task(config, threads, std::cerr);
    cli::write_outputs(config.out_dir, result);
    std::cerr << "wrote " << result.files.size() << " files to " << config.out_dir.string() << "; "
              << result.checks.size() << " checks, " << result.failed() << " failed\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GuardBandError& e) {
    std::cerr << "guard band violation: " << e.what() << '\n';
    return kExitGuardBand;
  } catch (const OracleCapError& e) {
    std::cerr << "oracle cap exceeded: " << e.what() << '\n';
    return kExitOracleCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

#include "app.hpp"

#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace selfright::cli {
namespace {

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> mode;
  std::optional<double> legs;
  std::optional<double> amplitude;
  std::optional<double> xi;
  std::optional<int> cycles;
  bool half_cycle = false;
  std::optional<int> trials;
  int threads = 0;

  RunConfig resolve() const {
    RunConfig c = config_path ? load_config(*config_path) : RunConfig{};
    if (seed) c.seed = *seed;
    if (out_dir) c.output_dir = *out_dir;
    if (mode) c.simulation.mode = parse_roll_mode(*mode);
    if (legs) c.morphology.leg_length = *legs;
    if (amplitude) {
      c.gait.amplitude_lateral = *amplitude;
      c.gait.amplitude_vertical = *amplitude;
    }
    if (xi) c.gait.spatial_frequency = *xi;
    if (half_cycle) c.simulation.half_cycle = true;
    if (trials) c.sweep.trials_per_cell = *trials;
    return c;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-righting and sidewinding model of a modular limbed snake robot",
               "selfright"};
  app.require_subcommand(1);
  Overrides o;

  app.add_option("--config", o.config_path, "JSON run configuration")
      ->envname("SELFRIGHT_CONFIG");
  app.add_option("--seed", o.seed, "Master RNG seed")->envname("SELFRIGHT_SEED");
  app.add_option("--out", o.out_dir, "Output directory")->envname("SELFRIGHT_OUT");
  app.add_option("--mode", o.mode, "Roll model: lumped or segmented")
      ->envname("SELFRIGHT_MODE")
      ->check(CLI::IsMember({"lumped", "segmented"}));
  app.add_option("--legs", o.legs, "Leg length in metres (0 = limbless)")
      ->envname("SELFRIGHT_LEGS");
  app.add_option("--amplitude", o.amplitude, "Lateral and vertical amplitude, rad");
  app.add_option("--xi", o.xi, "Spatial frequency");

  auto* gait = app.add_subcommand("gait", "Tabulate joint angles over one cycle");
  auto* energy = app.add_subcommand("energy", "Roll energy landscape");
  auto* simulate = app.add_subcommand("simulate", "Roll trajectory under the gait");
  simulate->add_option("--cycles", o.cycles, "Gait cycles to simulate");
  simulate->add_flag("--half-cycle", o.half_cycle, "One-shot: half a cycle only");
  auto* sweep = app.add_subcommand("sweep", "Behaviour diagram over amplitude and xi");
  sweep->add_option("--trials", o.trials, "Trials per cell");
  sweep->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  auto* sidewind = app.add_subcommand("sidewind", "Net lateral displacement per cycle");
  sidewind->add_option("--cycles", o.cycles, "Gait cycles to integrate");

  // Common flags may follow the subcommand name.
  for (auto* sub : {gait, energy, simulate, sweep, sidewind}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    RunConfig config = o.resolve();
    if (o.cycles) {
      if (simulate->parsed()) config.simulation.cycles = *o.cycles;
      if (sidewind->parsed()) config.sidewind.cycles = *o.cycles;
    }
    const std::filesystem::path dir = config.output_dir;
    Paths written;
    if (gait->parsed()) written = run_gait(config, dir);
    if (energy->parsed()) written = run_energy(config, dir);
    if (simulate->parsed()) written = run_simulate(config, dir);
    if (sweep->parsed()) written = run_sweep(config, dir, o.threads);
    if (sidewind->parsed()) written = run_sidewind(config, dir);
    for (const auto& p : written) out << p.string() << '\n';
    out << "config_hash=" << provenance_of(config).config_hash << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "selfright: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace selfright::cli

// confmac: rate regions, sweeps and gap audits for compound MACs with conferencing.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "confmac/commands.hpp"
#include "confmac/errors.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;
  std::string schemes;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "scenario JSON")->required();
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_option("--grid", c.grid, "grid points per axis (powers, or pmf simplex for dm)");
  cmd->add_option("--schemes", c.schemes, "comma separated scheme list");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outer bounds and achievable regions for compound MACs with conferencing decoders"};
  app.require_subcommand(1);
  Common common;
  confmac::Overrides ov;

  auto* region = app.add_subcommand("region", "write one vertex CSV per scheme");
  add_common(region, common);

  auto* sweep = app.add_subcommand("sweep", "sum-rate support versus one parameter");
  add_common(sweep, common);
  sweep->add_option("--var", ov.sweep_var, "c12, c21, cbar12, cbar21 or p");
  sweep->add_option("--min", ov.sweep_min);
  sweep->add_option("--max", ov.sweep_max);
  sweep->add_option("--samples", ov.sweep_samples);

  auto* gap = app.add_subcommand("gap", "constant-gap and multiplexing audits");
  add_common(gap, common);
  gap->add_option("--mode", ov.gap_mode, "broadcast, symmetric or mux");
  gap->add_option("--samples", ov.gap_samples);

  auto* dm = app.add_subcommand("dm", "discrete memoryless regions");
  add_common(dm, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? confmac::kExitOk : confmac::kExitUsage;
  }

  const auto* cmd = app.get_subcommands().front();
  const std::string verb = cmd->get_name();
  ov.seed = common.seed;
  ov.grid = common.grid;
  if (!common.schemes.empty()) ov.schemes = confmac::split_list(common.schemes);

  try {
    const auto cfg = confmac::load_scenario(std::filesystem::path(common.config), ov, verb);
    if (verb == "region") return confmac::cmd_region(cfg, common.out);
    if (verb == "sweep") return confmac::cmd_sweep(cfg, common.out);
    if (verb == "gap") return confmac::cmd_gap(cfg, common.out);
    return confmac::cmd_dm(cfg, common.out);
  } catch (const confmac::IoError& e) {
    std::fprintf(stderr, "confmac: %s\n", e.what());
    return confmac::kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "confmac: %s\n", e.what());
    return confmac::kExitUsage;
  }
}

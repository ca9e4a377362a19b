#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "confmac/gap.hpp"
#include "confmac/scenario.hpp"

namespace confmac {

enum ExitCode : int { kExitOk = 0, kExitAuditFailure = 1, kExitUsage = 2, kExitIo = 3 };

// Command-line overrides; each one is written into the config document before hashing.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;  // power_points, or simplex_points for the dm verb
  std::optional<std::vector<std::string>> schemes;
  std::optional<std::string> sweep_var;
  std::optional<double> sweep_min, sweep_max;
  std::optional<std::size_t> sweep_samples;
  std::optional<std::string> gap_mode;
  std::optional<std::size_t> gap_samples;
};

std::vector<std::string> split_list(const std::string& s);

ScenarioConfig load_scenario(const Json& doc, const Overrides& ov, const std::string& verb);
ScenarioConfig load_scenario(const std::filesystem::path& path, const Overrides& ov, const std::string& verb);

// R1 + R2 support at R0 = 0.
double private_sum_support(const RateRegion& region);

// The channel and encoder links after setting the sweep variable to v.
void apply_sweep_value(ScenarioConfig& cfg, double v);

struct SweepRow {
  double value = 0.0;
  // NaN when the scheme was not selected
  double outer = 0.0, one_round = 0.0, two_round = 0.0, no_coop = 0.0, cme_outer = 0.0;
};

std::vector<double> sweep_values(const SweepSpec& s);
std::vector<SweepRow> sweep_table(const ScenarioConfig& cfg);

Json to_json(const GapReport& r);

// Report document and overall pass flag for the configured gap mode.
struct GapRun {
  Json report;
  bool pass = true;
};
GapRun run_gap(const ScenarioConfig& cfg);

// Each writes its files plus manifest.json into out and returns an ExitCode.
int cmd_region(const ScenarioConfig& cfg, const std::filesystem::path& out);
int cmd_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out);
int cmd_gap(const ScenarioConfig& cfg, const std::filesystem::path& out);
int cmd_dm(const ScenarioConfig& cfg, const std::filesystem::path& out);

}  // namespace confmac

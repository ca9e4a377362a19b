#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confmac/cme.hpp"
#include "confmac/dm.hpp"
#include "confmac/gaussian.hpp"
#include "confmac/geometry.hpp"

namespace confmac {

using Json = nlohmann::json;

inline const std::vector<std::string> kSchemeNames = {"outer", "one-round", "two-round", "no-coop", "cme-outer"};

struct SweepSpec {
  std::string var = "c21";  // c12, c21, cbar12, cbar21 or p
  double min = 0.0, max = 2.0;
  std::size_t samples = 41;
};

struct GapSpec {
  std::string mode = "broadcast";  // broadcast, symmetric or mux
  std::size_t samples = 10000;
  double epsilon = 0.5;
  std::vector<double> p_grid = {1e2, 1e3, 1e4, 1e5, 1e6};
  // also run the law C = const next to the scaling law
  std::optional<double> constant_c;
  // every instance in the report; otherwise failures and the worst instance per audit
  bool all_reports = false;
};

struct DmSpec {
  DmChannel channel;
  std::vector<std::string> schemes = {"no-coop", "outer", "one-round", "two-round"};
  std::array<std::size_t, 2> yhat_sizes{2, 2};
};

// Everything is linear after parsing; `units` only says how the file was written.
struct ScenarioConfig {
  std::string units;
  GaussianCmChannel channel;
  EncoderConferencing encoders;
  bool has_encoders = false;
  std::vector<std::string> schemes;
  GridSpec grid;
  R0Mode r0_mode = R0Mode::zero_common;
  double clip = kDefaultClip;
  std::uint64_t seed = 1;
  SweepSpec sweep;
  GapSpec gap;
  std::optional<DmSpec> dm;

  // effective document (after command-line overrides), source of the hash
  Json doc;
  std::string hash;
};

// 64-bit FNV-1a, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

Json read_json_file(const std::filesystem::path& path);

// Throws ValidationError on bad content, UsageError on unknown scheme names.
ScenarioConfig parse_config(const Json& doc);

double db_to_linear(double db);

}  // namespace confmac

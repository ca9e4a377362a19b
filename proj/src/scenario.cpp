#include "confmac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "confmac/errors.hpp"

namespace confmac {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError("config: " + what); }

const Json& need(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad("missing field \"" + std::string(key) + "\" in " + where);
  return obj.at(key);
}

double number(const Json& v, const std::string& name) {
  if (v.is_number()) return v.get<double>();
  // JSON has no infinity literal
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return kInf;
  bad("\"" + name + "\" must be a number");
}

double number_or(const Json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), key) : fallback;
}

std::size_t count(const Json& v, const std::string& name) {
  if (!v.is_number_integer() || v.get<long long>() < 0) bad("\"" + name + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t count_or(const Json& obj, const char* key, std::size_t fallback) {
  return obj.contains(key) ? count(obj.at(key), key) : fallback;
}

std::vector<double> numbers(const Json& v, const std::string& name) {
  if (!v.is_array()) bad("\"" + name + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, name));
  return out;
}

ConditionalPmf matrix(const Json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) bad("\"" + name + "\" must be a non-empty array of rows");
  const std::size_t rows = v.size();
  const std::size_t cols = v.at(0).is_array() ? v.at(0).size() : 0;
  std::vector<double> p;
  for (const auto& row : v) {
    auto r = numbers(row, name);
    if (r.size() != cols || cols == 0) bad("\"" + name + "\" rows must have equal, non-zero length");
    p.insert(p.end(), r.begin(), r.end());
  }
  return ConditionalPmf(rows, cols, std::move(p));
}

std::array<std::size_t, 4> sizes4(const Json& v) {
  if (!v.is_array() || v.size() != 4) bad("dm \"sizes\" must list |X1|, |X2|, |Y1|, |Y2|");
  return {count(v[0], "sizes"), count(v[1], "sizes"), count(v[2], "sizes"), count(v[3], "sizes")};
}

DmSpec parse_dm(const Json& d, std::uint64_t seed) {
  DmSpec spec;
  const std::size_t cap = count_or(d, "max_alphabet", kDefaultMaxAlphabet);
  const auto& ch = need(d, "channel", "dm");
  if (ch.contains("transition")) {
    spec.channel = DmChannel(sizes4(need(ch, "sizes", "dm.channel")), numbers(ch.at("transition"), "transition"), cap);
  } else if (ch.contains("degraded")) {
    const auto& g = ch.at("degraded");
    const std::size_t x1 = count(need(g, "x1", "dm.channel.degraded"), "x1");
    const std::size_t x2 = count(need(g, "x2", "dm.channel.degraded"), "x2");
    auto y1 = matrix(need(g, "y1_given_x", "dm.channel.degraded"), "y1_given_x");
    auto y2 = matrix(need(g, "y2_given_y1", "dm.channel.degraded"), "y2_given_y1");
    spec.channel = DmChannel::degraded(y1, x1, x2, y2);
    // degraded() does not know the configured cap
    spec.channel = DmChannel({spec.channel.x1(), spec.channel.x2(), spec.channel.y1(), spec.channel.y2()},
                             spec.channel.transition(), cap);
  } else if (ch.contains("random")) {
    spec.channel = random_dm_channel(sizes4(need(ch, "sizes", "dm.channel")), number_or(ch, "seed", seed), cap);
  } else {
    bad("dm.channel needs \"transition\", \"degraded\" or \"random\"");
  }
  if (d.contains("schemes")) {
    spec.schemes = d.at("schemes").get<std::vector<std::string>>();
    static const std::set<std::string> known = {"no-coop", "outer", "one-round", "two-round", "degraded"};
    if (spec.schemes.empty()) throw UsageError("dm scheme list is empty");
    for (const auto& s : spec.schemes) {
      if (!known.count(s)) throw UsageError("unknown dm scheme \"" + s + "\"");
    }
  }
  if (d.contains("yhat_sizes")) {
    const auto& y = d.at("yhat_sizes");
    if (!y.is_array() || y.size() != 2) bad("dm \"yhat_sizes\" must have two entries");
    spec.yhat_sizes = {count(y[0], "yhat_sizes"), count(y[1], "yhat_sizes")};
  }
  return spec;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
}

ScenarioConfig parse_config(const Json& doc) {
  if (!doc.is_object()) bad("top level must be an object");
  ScenarioConfig cfg;
  try {
    const auto& units = need(doc, "units", "config");
    if (!units.is_string()) bad("\"units\" must be \"dB\" or \"linear\"");
    cfg.units = units.get<std::string>();
    if (cfg.units != "dB" && cfg.units != "linear") bad("\"units\" must be \"dB\" or \"linear\"");
    const bool db = cfg.units == "dB";
    auto conv = [&](double v) { return db ? db_to_linear(v) : v; };

    cfg.seed = doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : 1;

    if (doc.contains("channel")) {
      const auto& c = doc.at("channel");
      auto& ch = cfg.channel;
      ch.g11 = conv(number(need(c, "g11", "channel"), "g11"));
      ch.g12 = conv(number(need(c, "g12", "channel"), "g12"));
      ch.g21 = conv(number(need(c, "g21", "channel"), "g21"));
      ch.g22 = conv(number(need(c, "g22", "channel"), "g22"));
      ch.p1 = conv(number(need(c, "p1", "channel"), "p1"));
      ch.p2 = conv(number(need(c, "p2", "channel"), "p2"));
    }
    cfg.channel.c12 = number_or(doc, "c12", 0.0);
    cfg.channel.c21 = number_or(doc, "c21", 0.0);
    try {
      cfg.channel.validate();
    } catch (const DomainError& e) {
      bad(e.what());
    }

    cfg.has_encoders = doc.contains("cbar12") || doc.contains("cbar21");
    cfg.encoders.cbar12 = number_or(doc, "cbar12", 0.0);
    cfg.encoders.cbar21 = number_or(doc, "cbar21", 0.0);
    try {
      cfg.encoders.validate();
    } catch (const DomainError& e) {
      bad(e.what());
    }

    cfg.schemes = doc.contains("schemes") ? doc.at("schemes").get<std::vector<std::string>>()
                                          : std::vector<std::string>{"outer", "one-round", "two-round", "no-coop"};
    if (cfg.schemes.empty()) throw UsageError("scheme list is empty");
    for (const auto& s : cfg.schemes) {
      if (std::find(kSchemeNames.begin(), kSchemeNames.end(), s) == kSchemeNames.end()) {
        throw UsageError("unknown scheme \"" + s + "\"");
      }
    }

    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      cfg.grid.power_points = count_or(g, "power_points", cfg.grid.power_points);
      cfg.grid.simplex_points = count_or(g, "simplex_points", cfg.grid.simplex_points);
      cfg.grid.test_points = count_or(g, "test_points", cfg.grid.test_points);
      cfg.grid.u_size = count_or(g, "u_size", cfg.grid.u_size);
    }
    if (doc.contains("r0_mode")) cfg.r0_mode = parse_r0_mode(doc.at("r0_mode").get<std::string>());
    cfg.clip = number_or(doc, "clip", kDefaultClip);
    if (!(cfg.clip > 0.0) || !std::isfinite(cfg.clip)) bad("\"clip\" must be positive and finite");

    if (doc.contains("sweep")) {
      const auto& s = doc.at("sweep");
      cfg.sweep.var = s.value("var", cfg.sweep.var);
      cfg.sweep.min = number_or(s, "min", cfg.sweep.min);
      cfg.sweep.max = number_or(s, "max", cfg.sweep.max);
      cfg.sweep.samples = count_or(s, "samples", cfg.sweep.samples);
    }
    if (doc.contains("gap")) {
      const auto& g = doc.at("gap");
      cfg.gap.mode = g.value("mode", cfg.gap.mode);
      cfg.gap.samples = count_or(g, "samples", cfg.gap.samples);
      cfg.gap.epsilon = number_or(g, "epsilon", cfg.gap.epsilon);
      if (g.contains("p_grid")) cfg.gap.p_grid = numbers(g.at("p_grid"), "p_grid");
      if (g.contains("constant_c")) cfg.gap.constant_c = number(g.at("constant_c"), "constant_c");
      cfg.gap.all_reports = g.value("all_reports", false);
    }
    if (doc.contains("dm")) cfg.dm = parse_dm(doc.at("dm"), cfg.seed);
  } catch (const Json::exception& e) {
    bad(e.what());
  }
  cfg.doc = doc;
  cfg.hash = fnv1a_hex(doc.dump());
  return cfg;
}

}  // namespace confmac

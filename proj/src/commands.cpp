#include "confmac/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "confmac/errors.hpp"

namespace confmac {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string hash_line(const ScenarioConfig& cfg) { return "# config-hash: " + cfg.hash + "\n"; }

void write_region(const fs::path& path, const ScenarioConfig& cfg, const RateRegion& region) {
  std::ostringstream os;
  os << hash_line(cfg);
  write_csv(os, region);
  write_text(path, os.str());
}

bool selected(const ScenarioConfig& cfg, const std::string& name) {
  return std::find(cfg.schemes.begin(), cfg.schemes.end(), name) != cfg.schemes.end();
}

std::string file_stem(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

Json grid_json(const GridSpec& g) {
  return {{"power_points", g.power_points},
          {"simplex_points", g.simplex_points},
          {"test_points", g.test_points},
          {"u_size", g.u_size}};
}

Json manifest(const ScenarioConfig& cfg, const std::string& command) {
  Json m;
  m["command"] = command;
  m["config_hash"] = cfg.hash;
  m["config"] = cfg.doc;
  m["grid"] = grid_json(cfg.grid);
  m["clip"] = cfg.clip;
  m["files"] = Json::array();
  return m;
}

void write_manifest(const fs::path& out, const Json& m) { write_text(out / "manifest.json", m.dump(2) + "\n"); }

GaussianCmChannel without_links(GaussianCmChannel ch) {
  ch.c12 = ch.c21 = 0.0;
  return ch;
}

Json audit_json(const std::string& name, std::span<const GapReport> reports) {
  const auto s = summarize(reports);
  return {{"name", name},
          {"samples", s.samples},
          {"failures", s.failures},
          {"max_gap", s.max_gap},
          {"worst_margin", s.worst_margin},
          {"pass", s.failures == 0}};
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

ScenarioConfig load_scenario(const Json& doc_in, const Overrides& ov, const std::string& verb) {
  Json doc = doc_in;
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  if (ov.seed) doc["seed"] = *ov.seed;
  if (ov.grid) doc["grid"][verb == "dm" ? "simplex_points" : "power_points"] = *ov.grid;
  if (ov.schemes) doc[verb == "dm" ? "/dm/schemes"_json_pointer : "/schemes"_json_pointer] = *ov.schemes;
  if (ov.sweep_var) doc["sweep"]["var"] = *ov.sweep_var;
  if (ov.sweep_min) doc["sweep"]["min"] = *ov.sweep_min;
  if (ov.sweep_max) doc["sweep"]["max"] = *ov.sweep_max;
  if (ov.sweep_samples) doc["sweep"]["samples"] = *ov.sweep_samples;
  if (ov.gap_mode) doc["gap"]["mode"] = *ov.gap_mode;
  if (ov.gap_samples) doc["gap"]["samples"] = *ov.gap_samples;
  return parse_config(doc);
}

ScenarioConfig load_scenario(const fs::path& path, const Overrides& ov, const std::string& verb) {
  return load_scenario(read_json_file(path), ov, verb);
}

double private_sum_support(const RateRegion& region) {
  return region.dimension() == 3 ? support(region, {0.0, 1.0, 1.0}) : support(region, {1.0, 1.0, 0.0});
}

void apply_sweep_value(ScenarioConfig& cfg, double v) {
  const auto& var = cfg.sweep.var;
  if (var == "c12") {
    cfg.channel.c12 = v;
  } else if (var == "c21") {
    cfg.channel.c21 = v;
  } else if (var == "cbar12") {
    cfg.encoders.cbar12 = v;
  } else if (var == "cbar21") {
    cfg.encoders.cbar21 = v;
  } else if (var == "p") {
    // same units as the channel block
    cfg.channel.p1 = cfg.channel.p2 = cfg.units == "dB" ? db_to_linear(v) : v;
  } else {
    throw UsageError("unknown sweep variable \"" + var + "\" (expected c12, c21, cbar12, cbar21 or p)");
  }
  cfg.channel.validate();
  cfg.encoders.validate();
}

std::vector<double> sweep_values(const SweepSpec& s) {
  if (!(s.min < s.max) || !std::isfinite(s.min) || !std::isfinite(s.max)) {
    throw UsageError("sweep range needs min < max");
  }
  if (s.samples < 2) throw UsageError("sweep needs at least 2 samples");
  std::vector<double> v(s.samples);
  for (std::size_t i = 0; i < s.samples; ++i) {
    v[i] = i + 1 == s.samples ? s.max : s.min + (s.max - s.min) * static_cast<double>(i) / (s.samples - 1);
  }
  return v;
}

std::vector<SweepRow> sweep_table(const ScenarioConfig& cfg) {
  const auto values = sweep_values(cfg.sweep);
  // validate the variable before doing any work
  {
    ScenarioConfig probe = cfg;
    apply_sweep_value(probe, values.front());
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    ScenarioConfig c = cfg;
    apply_sweep_value(c, v);
    auto sum = [&](Scheme s) {
      if (!selected(c, to_string(s))) return kNaN;
      return private_sum_support(gaussian_region(c.channel, s, c.grid, R0Mode::zero_common, c.clip));
    };
    SweepRow r;
    r.value = v;
    r.outer = sum(Scheme::outer);
    r.one_round = sum(Scheme::one_round);
    r.two_round = sum(Scheme::two_round);
    r.no_coop = sum(Scheme::no_coop);
    r.cme_outer =
        selected(c, "cme-outer") ? private_sum_support(cme_outer(c.channel, c.encoders, c.grid, c.clip)) : kNaN;
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const GapReport& r) {
  return {{"bound", r.bound},
          {"values", {{"outer", r.outer}, {"achievable", r.achievable}}},
          {"gap", r.gap},
          {"cap", r.cap},
          {"case", r.case_label},
          {"pass", r.pass}};
}

GapRun run_gap(const ScenarioConfig& cfg) {
  const auto& g = cfg.gap;
  GapRun run;
  Json& rep = run.report;
  rep["mode"] = g.mode;
  rep["seed"] = cfg.seed;
  rep["config_hash"] = cfg.hash;
  rep["audits"] = Json::array();

  if (g.mode == "broadcast") {
    Json instances = Json::array();
    for (bool equal : {false, true}) {
      const std::string name = equal ? "broadcast-equal-powers" : "broadcast";
      std::vector<GapReport> reports;
      std::size_t unclassified = 0;
      Json worst;
      double worst_margin = -kInf;
      for (const auto& in : broadcast_draws(g.samples, cfg.seed, equal)) {
        const auto& r = reports.emplace_back(broadcast_gap(in));
        if (r.case_label == "none") ++unclassified;
        Json j = to_json(r);
        j["inputs"] = {{"pa", in.pa}, {"pb", in.pb}, {"c12", in.c12}, {"c21", in.c21}};
        j["audit"] = name;
        if (r.gap - r.cap > worst_margin) {
          worst_margin = r.gap - r.cap;
          worst = j;
        }
        if (g.all_reports || !r.pass || r.case_label == "none") instances.push_back(std::move(j));
      }
      Json a = audit_json(name, reports);
      a["unclassified"] = unclassified;
      if (unclassified > 0) a["pass"] = false;
      a["worst"] = std::move(worst);
      run.pass = run.pass && a["pass"].get<bool>();
      rep["audits"].push_back(std::move(a));
    }
    rep["reports"] = std::move(instances);
  } else if (g.mode == "symmetric") {
    Json instances = Json::array();
    for (bool equal : {false, true}) {
      const std::string tag = equal ? "equal-gains-" : "";
      std::vector<GapReport> r1, r2, sum, half;
      Json worst;
      double worst_margin = -kInf;
      for (auto in : symmetric_draws(g.samples, cfg.seed)) {
        if (equal) in.b = in.a;
        const auto sg = symmetric_gap(in);
        r1.push_back(sg.r1);
        r2.push_back(sg.r2);
        sum.push_back(sg.sum);
        half.push_back(sg.sum_half);
        Json j;
        j["inputs"] = {{"a", in.a}, {"b", in.b}, {"p", in.p}, {"c", in.c}};
        j["reports"] = {to_json(sg.r1), to_json(sg.r2), to_json(sg.sum), to_json(sg.sum_half)};
        j["pass"] = sg.pass();
        j["audit"] = tag.empty() ? "symmetric" : "symmetric-equal-gains";
        const double m = std::max({sg.r1.gap - sg.r1.cap, sg.r2.gap - sg.r2.cap, sg.sum.gap - sg.sum.cap,
                                   sg.sum_half.gap - sg.sum_half.cap});
        if (m > worst_margin) {
          worst_margin = m;
          worst = j;
        }
        if (g.all_reports || !sg.pass()) instances.push_back(std::move(j));
      }
      for (auto& [name, v] : {std::pair{"r1", &r1}, {"r2", &r2}, {"sum", &sum}, {"sum-half-bit", &half}}) {
        Json a = audit_json(tag + name, *v);
        run.pass = run.pass && a["pass"].get<bool>();
        rep["audits"].push_back(std::move(a));
      }
      rep["worst"][tag.empty() ? "symmetric" : "symmetric-equal-gains"] = std::move(worst);
    }
    rep["reports"] = std::move(instances);
  } else if (g.mode == "mux") {
    std::vector<std::pair<std::string, CapacityLaw>> laws = {{"scaling", CapacityLaw::scaling(g.epsilon)}};
    if (g.constant_c) laws.emplace_back("constant", CapacityLaw::constant(*g.constant_c));
    rep["epsilon"] = g.epsilon;
    Json tables = Json::array();
    for (const auto& [name, law] : laws) {
      const auto rows = multiplexing_sweep(cfg.channel, law, g.p_grid);
      Json t;
      t["law"] = name;
      t["value"] = law.value();
      t["rows"] = Json::array();
      bool monotone = true;
      double prev = -kInf;
      for (const auto& r : rows) {
        t["rows"].push_back({{"p", r.p}, {"c", r.c}, {"sum_rate", r.sum_rate}, {"outer_sum", r.outer_sum},
                             {"gain", std::isnan(r.gain) ? Json(nullptr) : Json(r.gain)}});
        if (std::isnan(r.gain)) continue;
        if (r.gain < prev - 1e-12) monotone = false;
        prev = r.gain;
      }
      t["final_gain"] = rows.empty() || std::isnan(rows.back().gain) ? Json(nullptr) : Json(rows.back().gain);
      if (law.is_scaling()) {
        // the gain is only claimed to grow under the scaling law
        t["monotone"] = monotone;
        run.pass = run.pass && monotone;
      }
      tables.push_back(std::move(t));
    }
    rep["tables"] = std::move(tables);
  } else {
    throw UsageError("unknown gap mode \"" + g.mode + "\" (expected broadcast, symmetric or mux)");
  }
  rep["pass"] = run.pass;
  return run;
}

int cmd_region(const ScenarioConfig& cfg, const fs::path& out) {
  ensure_dir(out);
  Json m = manifest(cfg, "region");
  m["r0_mode"] = to_string(cfg.r0_mode);
  Json sums;
  for (const auto& name : cfg.schemes) {
    if (name == "cme-outer") {
      const EncoderConferencing none{};
      const std::pair<std::string, RateRegion> parts[] = {
          {"cme_encoder_only", cme_outer(without_links(cfg.channel), cfg.encoders, cfg.grid, cfg.clip)},
          {"cme_decoder_only", cme_outer(cfg.channel, none, cfg.grid, cfg.clip)},
          {"cme_both", cme_outer(cfg.channel, cfg.encoders, cfg.grid, cfg.clip)},
      };
      for (const auto& [stem, region] : parts) {
        write_region(out / (stem + ".csv"), cfg, region);
        m["files"].push_back(stem + ".csv");
        sums[stem] = private_sum_support(region);
      }
      continue;
    }
    const auto region = gaussian_region(cfg.channel, parse_scheme(name), cfg.grid, cfg.r0_mode, cfg.clip);
    const std::string file = file_stem(name) + ".csv";
    write_region(out / file, cfg, region);
    m["files"].push_back(file);
    sums[name] = private_sum_support(region);
  }
  m["max_sum_rate"] = sums;
  write_manifest(out, m);
  return kExitOk;
}

int cmd_sweep(const ScenarioConfig& cfg, const fs::path& out) {
  const auto rows = sweep_table(cfg);
  ensure_dir(out);
  std::ostringstream os;
  os << hash_line(cfg) << "sweep_value,outer,one_round,two_round,no_coop,cme_outer\n";
  for (const auto& r : rows) {
    os << fmt(r.value) << ',' << fmt(r.outer) << ',' << fmt(r.one_round) << ',' << fmt(r.two_round) << ','
       << fmt(r.no_coop) << ',' << fmt(r.cme_outer) << '\n';
  }
  const std::string file = "sweep_" + cfg.sweep.var + ".csv";
  write_text(out / file, os.str());
  Json m = manifest(cfg, "sweep");
  m["sweep"] = {{"var", cfg.sweep.var}, {"min", cfg.sweep.min}, {"max", cfg.sweep.max}, {"samples", cfg.sweep.samples}};
  m["files"].push_back(file);
  write_manifest(out, m);
  return kExitOk;
}

int cmd_gap(const ScenarioConfig& cfg, const fs::path& out) {
  const auto run = run_gap(cfg);
  ensure_dir(out);
  const std::string file = "gap_" + cfg.gap.mode + ".json";
  write_text(out / file, run.report.dump(1) + "\n");
  Json m = manifest(cfg, "gap");
  m["files"].push_back(file);
  m["pass"] = run.pass;
  m["audits"] = run.report["audits"];
  write_manifest(out, m);
  return run.pass ? kExitOk : kExitAuditFailure;
}

int cmd_dm(const ScenarioConfig& cfg, const fs::path& out) {
  if (!cfg.dm) throw UsageError("dm verb needs a \"dm\" block in the config");
  const auto& spec = *cfg.dm;
  DmRegionOptions opt;
  opt.grid = cfg.grid;
  opt.yhat_sizes = spec.yhat_sizes;
  opt.mode = cfg.doc.contains("r0_mode") ? cfg.r0_mode : R0Mode::full;
  opt.clip = cfg.clip;
  const double c12 = cfg.channel.c12, c21 = cfg.channel.c21;

  std::vector<std::pair<std::string, Json>> results;
  std::vector<std::pair<std::string, RateRegion>> regions;
  for (const auto& name : spec.schemes) {
    Json diag;
    RateRegion region;
    if (name == "degraded") {
      const auto inputs = input_grid(spec.channel, opt.grid.u_size, opt.grid.simplex_points);
      region = degraded_capacity(spec.channel, inputs, c12, c21, opt.mode, opt.clip);
      diag["evaluated"] = inputs.size();
    } else {
      const DmScheme s = name == "no-coop"     ? DmScheme::no_coop
                         : name == "outer"     ? DmScheme::outer
                         : name == "one-round" ? DmScheme::one_round
                                               : DmScheme::two_round;
      auto res = dm_region(spec.channel, s, c12, c21, opt);
      diag["evaluated"] = res.evaluated;
      diag["feasible"] = res.feasible;
      region = std::move(res.region);
    }
    diag["max_sum_rate"] = private_sum_support(region);
    results.emplace_back(name, std::move(diag));
    regions.emplace_back(name, std::move(region));
  }
  ensure_dir(out);
  Json m = manifest(cfg, "dm");
  m["r0_mode"] = to_string(opt.mode);
  m["degraded"] = is_degraded(spec.channel);
  for (auto& [name, region] : regions) {
    const std::string file = "dm_" + file_stem(name) + ".csv";
    write_region(out / file, cfg, region);
    m["files"].push_back(file);
  }
  for (auto& [name, diag] : results) m["schemes"][name] = std::move(diag);
  write_manifest(out, m);
  return kExitOk;
}

}  // namespace confmac

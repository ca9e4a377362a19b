#include "confmac/gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "confmac/errors.hpp"
#include "confmac/info.hpp"

namespace confmac {

namespace {

constexpr double kTieTol = 1e-12;

double breve(double c) { return std::expm1(2.0 * c * std::log(2.0)); }

// x / (1 + s) with s = num / (den * cb); cb = 0 means nothing is forwarded.
double attenuated(double x, double num, double den, double cb) {
  if (cb <= 0.0) return 0.0;
  return x / (1.0 + num / (den * cb));
}

bool le(double a, double b) { return a <= b + kTieTol * std::max({1.0, std::abs(a), std::abs(b)}); }

bool same(double a, double b) { return std::abs(a - b) <= kTieTol * std::max(std::abs(a), std::abs(b)); }

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable uniform in [0, 1); the std distributions differ between library vendors.
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double log_uniform(std::mt19937_64& g, double lo, double hi) {
  return std::exp(std::log(lo) + unit(g) * (std::log(hi) - std::log(lo)));
}

void check_nonneg(std::initializer_list<double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(what) + " values must be finite and >= 0");
  }
}

}  // namespace

double symmetric_cap() { return (std::log2(3.0) - 1.0) / 2.0; }

void BroadcastInstance::validate() const { check_nonneg({pa, pb, c12, c21}, "broadcast instance"); }

void SymmetricInstance::validate() const {
  check_nonneg({a, b, p, c}, "symmetric instance");
  if (a == 0.0 && b == 0.0) throw DomainError("symmetric instance needs a > 0 or b > 0");
}

GapReport make_report(std::string bound, double outer, double achievable, double cap, std::string case_label) {
  GapReport r;
  r.bound = std::move(bound);
  r.outer = outer;
  r.achievable = achievable;
  r.gap = outer - achievable;
  r.cap = cap;
  r.case_label = std::move(case_label);
  r.pass = r.gap <= cap + kGapTol;
  return r;
}

std::string broadcast_case(const BroadcastInstance& inst) {
  const double pa = inst.pa, pb = inst.pb;
  const double c12 = breve(inst.c12), c21 = breve(inst.c21);
  if (le(pb / (1.0 + pa), c21) && le(pa / (1.0 + pb), c12)) return "case1";
  if (le(c21, pb / (1.0 + pa)) && le((1.0 + pa) * (1.0 + c21), (1.0 + pb) * (1.0 + c12))) return "case2";
  if (le(c12, pa / (1.0 + pb)) && le((1.0 + pb) * (1.0 + c12), (1.0 + pa) * (1.0 + c21))) return "case3";
  return "none";
}

GapReport broadcast_gap(const BroadcastInstance& inst) {
  inst.validate();
  const double pa = inst.pa, pb = inst.pb;
  const double outer = std::min({capacity_fn(pa) + inst.c21, capacity_fn(pb) + inst.c12, capacity_fn(pa + pb)});
  const double num = 1.0 + pa + pb;
  const double or1 = capacity_fn(pa + attenuated(pb, num, 1.0 + pa, breve(inst.c21)));
  const double or2 = capacity_fn(pb + attenuated(pa, num, 1.0 + pb, breve(inst.c12)));
  const double cap = same(pa, pb) ? symmetric_cap() : 0.5;
  return make_report("R1", outer, std::min(or1, or2), cap, broadcast_case(inst));
}

SymmetricGap symmetric_gap(const SymmetricInstance& inst) {
  inst.validate();
  const double a = inst.a, b = inst.b, p = inst.p, c = inst.c;
  const double cb = breve(c);
  const double ap = a * p, bp = b * p;
  const double amat = 1.0 + (a + b) * p;
  const double bmat = 1.0 + 2.0 * (a + b) * p + (b - a) * (b - a) * p * p;
  // 1 / (1 + sigma^2), zero when the links are off
  const double w = cb > 0.0 ? 1.0 / (1.0 + bmat / (amat * cb)) : 0.0;

  const double lo = std::min(a, b), hi = std::max(a, b);
  const bool equal = same(a, b);
  const double region_cap =
      equal ? symmetric_cap() : (lo > 0.0 ? 0.5 * std::log2(1.0 + hi / lo) : std::numeric_limits<double>::infinity());

  const double single_outer = std::min({capacity_fn(ap) + c, capacity_fn(bp) + c, capacity_fn((a + b) * p)});
  const double single_or = std::min(capacity_fn(ap + w * bp), capacity_fn(bp + w * ap));
  const double x = lo * p;
  const std::string single_case = le(hi * p / (1.0 + x), cb) ? "large-link" : "small-link";

  const double sum_outer = std::min(capacity_fn((a + b) * p) + c, capacity_fn(bmat - 1.0));
  const double sum_or = capacity_fn((a + b) * p * (1.0 + w) + w * (b - a) * (b - a) * p * p);
  const std::string sum_case = le((bmat - amat) / amat, cb) ? "large-link" : "small-link";

  SymmetricGap g;
  g.r1 = make_report("R1", single_outer, single_or, region_cap, single_case);
  g.r2 = make_report("R2", single_outer, single_or, region_cap, single_case);
  g.sum = make_report("R1+R2", sum_outer, sum_or, region_cap, sum_case);
  g.sum_half = make_report("R1+R2 half-bit", sum_outer, sum_or, 0.5, sum_case);
  return g;
}

std::vector<BroadcastInstance> broadcast_draws(std::size_t n, std::uint64_t seed, bool equal_powers) {
  std::vector<BroadcastInstance> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 g(splitmix(seed ^ splitmix(i)));
    auto& in = out[i];
    in.pa = log_uniform(g, 1e-2, 1e4);
    in.pb = equal_powers ? in.pa : log_uniform(g, 1e-2, 1e4);
    in.c12 = 8.0 * unit(g);
    in.c21 = 8.0 * unit(g);
  }
  return out;
}

std::vector<SymmetricInstance> symmetric_draws(std::size_t n, std::uint64_t seed) {
  std::vector<SymmetricInstance> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 g(splitmix(seed ^ splitmix(i)));
    auto& in = out[i];
    in.a = log_uniform(g, 1e-2, 1e2);
    in.b = log_uniform(g, 1e-2, 1e2);
    in.p = log_uniform(g, 1e-2, 1e4);
    in.c = 8.0 * unit(g);
  }
  return out;
}

AuditSummary summarize(std::span<const GapReport> reports) {
  AuditSummary s;
  for (const auto& r : reports) {
    ++s.samples;
    if (!r.pass) ++s.failures;
    s.max_gap = std::max(s.max_gap, r.gap);
    s.worst_margin = std::max(s.worst_margin, r.gap - r.cap);
  }
  return s;
}

CapacityLaw CapacityLaw::scaling(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("multiplexing sweep needs epsilon > 0");
  return CapacityLaw(true, eps);
}

CapacityLaw CapacityLaw::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw UsageError("constant conferencing capacity must be >= 0");
  return CapacityLaw(false, c);
}

double CapacityLaw::at(double p) const {
  if (!scaling_) return value_;
  return std::max(0.0, 0.5 * (1.0 + value_) * std::log2(p));
}

double max_private_sum(const BoundSet& bs) {
  return std::max(0.0, std::min({bs.b12, std::max(0.0, bs.b1) + std::max(0.0, bs.b2), bs.b012}));
}

std::vector<MuxRow> multiplexing_sweep(const GaussianCmChannel& tmpl, const CapacityLaw& law,
                                       std::span<const double> p_grid) {
  if (!same(tmpl.g11, tmpl.g22) || !same(tmpl.g12, tmpl.g21)) {
    throw UsageError("multiplexing sweep needs g11 = g22 and g12 = g21");
  }
  std::vector<MuxRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("multiplexing sweep powers must be > 0");
    GaussianCmChannel ch = tmpl;
    ch.p1 = ch.p2 = p;
    ch.c12 = ch.c21 = law.at(p);
    ch.validate();
    const auto split = full_private(ch);
    MuxRow r;
    r.p = p;
    r.c = ch.c12;
    r.sum_rate = max_private_sum(one_round_at(ch, split, sigma_min(ch, split)));
    r.outer_sum = max_private_sum(outer_bound_at(ch, split));
    r.gain = p > 1.0 ? r.sum_rate / (0.5 * std::log2(p)) : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(r);
  }
  return rows;
}

}  // namespace confmac

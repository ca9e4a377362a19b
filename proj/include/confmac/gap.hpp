#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "confmac/gaussian.hpp"

namespace confmac {

inline constexpr double kGapTol = 1e-9;
// (log2 3 - 1) / 2
double symmetric_cap();

// Broadcast specialisation: only user 1 transmits. pa = g11 P1, pb = g12 P1.
struct BroadcastInstance {
  double pa = 1.0, pb = 1.0, c12 = 0.0, c21 = 0.0;

  void validate() const;
};

struct GapReport {
  std::string bound;
  double outer = 0.0;
  double achievable = 0.0;
  double gap = 0.0;
  double cap = 0.0;
  std::string case_label;
  bool pass = false;
};

GapReport make_report(std::string bound, double outer, double achievable, double cap, std::string case_label);

// "case1" / "case2" / "case3", first matching condition set; ties count for the
// lower case number.
std::string broadcast_case(const BroadcastInstance& inst);

GapReport broadcast_gap(const BroadcastInstance& inst);

struct SymmetricInstance {
  double a = 1.0, b = 1.0, p = 1.0, c = 0.0;

  void validate() const;
};

struct SymmetricGap {
  // r1, r2 and sum carry the region cap 1/2 log2(1+beta) ((log2 3 - 1)/2 when a = b);
  // sum_half is the sum bound checked against 1/2 bit.
  GapReport r1, r2, sum, sum_half;

  bool pass() const { return r1.pass && r2.pass && sum.pass && sum_half.pass; }
};

SymmetricGap symmetric_gap(const SymmetricInstance& inst);

// Seeded draws: index i always sees the same numbers regardless of sample count.
std::vector<BroadcastInstance> broadcast_draws(std::size_t n, std::uint64_t seed, bool equal_powers);
std::vector<SymmetricInstance> symmetric_draws(std::size_t n, std::uint64_t seed);

struct AuditSummary {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_gap = 0.0;
  // largest gap - cap over all reports; <= 1e-9 when everything passes
  double worst_margin = -kInf;
};

AuditSummary summarize(std::span<const GapReport> reports);

class CapacityLaw {
 public:
  // C = 1/2 (1 + eps) log2 P, clamped at 0
  static CapacityLaw scaling(double eps);
  static CapacityLaw constant(double c);

  double at(double p) const;
  bool is_scaling() const { return scaling_; }
  double value() const { return value_; }

 private:
  CapacityLaw(bool scaling, double value) : scaling_(scaling), value_(value) {}
  bool scaling_;
  double value_;
};

struct MuxRow {
  double p = 0.0;
  double c = 0.0;
  double sum_rate = 0.0;
  double outer_sum = 0.0;
  // sum_rate / (1/2 log2 P); NaN for P <= 1
  double gain = 0.0;
};

// Template must be symmetric in gains; powers are overwritten with each grid value.
std::vector<MuxRow> multiplexing_sweep(const GaussianCmChannel& tmpl, const CapacityLaw& law,
                                       std::span<const double> p_grid);

// Largest R1 + R2 at R0 = 0 for a bound set.
double max_private_sum(const BoundSet& bs);

}  // namespace confmac

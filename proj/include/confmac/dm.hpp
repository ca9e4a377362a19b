#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "confmac/gaussian.hpp"
#include "confmac/geometry.hpp"
#include "confmac/info.hpp"

namespace confmac {

inline constexpr std::size_t kDefaultMaxAlphabet = 4;
inline constexpr double kFeasibilityTol = 1e-9;

// Row-stochastic matrix p(col | row).
struct ConditionalPmf {
  std::size_t rows = 0, cols = 0;
  std::vector<double> p;

  ConditionalPmf() = default;
  ConditionalPmf(std::size_t rows, std::size_t cols, std::vector<double> p);
  double operator()(std::size_t r, std::size_t c) const { return p[r * cols + c]; }

  static ConditionalPmf identity(std::size_t n);
  // every row maps to output 0
  static ConditionalPmf constant(std::size_t rows, std::size_t cols = 1);
};

class DmChannel {
 public:
  DmChannel() = default;
  // transition[((x1 * X2 + x2) * Y1 + y1) * Y2 + y2] = p(y1, y2 | x1, x2)
  DmChannel(std::array<std::size_t, 4> sizes, std::vector<double> transition,
            std::size_t max_alphabet = kDefaultMaxAlphabet);

  std::size_t x1() const { return n_[0]; }
  std::size_t x2() const { return n_[1]; }
  std::size_t y1() const { return n_[2]; }
  std::size_t y2() const { return n_[3]; }
  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return t_[((a * n_[1] + b) * n_[2] + c) * n_[3] + d];
  }
  const std::vector<double>& transition() const { return t_; }

  // Y2 a noisy copy of Y1: p(y1,y2|x) = p(y1|x) p(y2|y1), optionally with p(y2|y1) given.
  static DmChannel degraded(const ConditionalPmf& y1_given_x, std::size_t x1, std::size_t x2,
                            const ConditionalPmf& y2_given_y1);

 private:
  std::array<std::size_t, 4> n_{};
  std::vector<double> t_;
};

struct DmInputDistribution {
  Pmf pu;
  ConditionalPmf px1_given_u, px2_given_u;

  void validate() const;
};

struct DmTestChannels {
  ConditionalPmf q1, q2;  // p(yhat1 | y1), p(yhat2 | y2)
};

// Axis order of joint_distribution.
enum DmAxis : std::size_t { kU = 0, kX1, kX2, kY1, kY2, kYhat1, kYhat2 };

JointPmf joint_distribution(const DmChannel& ch, const DmInputDistribution& in,
                            const std::optional<DmTestChannels>& test = std::nullopt);

enum class Receiver { rx1, rx2, fc };

BoundSet mac_region_at(const DmChannel& ch, const DmInputDistribution& in, Receiver rx);
BoundSet cm_outer_at(const DmChannel& ch, const DmInputDistribution& in, double c12, double c21);

// Compression rates I(Y1;Yhat1|Y2) and I(Y2;Yhat2|Y1).
struct WynerZivRates {
  double r12 = 0.0, r21 = 0.0;
};

WynerZivRates wyner_ziv_rates(const DmChannel& ch, const DmInputDistribution& in, const DmTestChannels& test);

// nullopt when a compression rate exceeds its link capacity.
std::optional<BoundSet> one_round_dm_at(const DmChannel& ch, const DmInputDistribution& in,
                                        const DmTestChannels& test, double c12, double c21);
std::optional<TwoRoundBounds> two_round_dm_at(const DmChannel& ch, const DmInputDistribution& in,
                                              const DmTestChannels& test, double c12, double c21);

bool is_degraded(const DmChannel& ch, double tol = 1e-9);

// Transition rows drawn uniformly from the simplex, reproducible from the seed.
DmChannel random_dm_channel(std::array<std::size_t, 4> sizes, std::uint64_t seed,
                            std::size_t max_alphabet = kDefaultMaxAlphabet);

// Compositions of (points-1) into k parts, scaled to sum to 1.
std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t points);

std::vector<DmInputDistribution> input_grid(const DmChannel& ch, std::size_t u_size, std::size_t points);
std::vector<DmTestChannels> test_channel_grid(const DmChannel& ch, std::array<std::size_t, 2> yhat_sizes,
                                              std::size_t points);

enum class DmScheme { no_coop, outer, one_round, two_round };

struct DmRegionOptions {
  GridSpec grid;
  std::array<std::size_t, 2> yhat_sizes{2, 2};
  R0Mode mode = R0Mode::full;
  double clip = kDefaultClip;
  // refuse unions over more distribution/test-channel pairs than this
  std::size_t max_evaluations = 5'000'000;
};

struct DmRegionResult {
  RateRegion region;
  std::size_t evaluated = 0;
  std::size_t feasible = 0;
};

DmRegionResult dm_region(const DmChannel& ch, DmScheme scheme, double c12, double c21, const DmRegionOptions& opt);

// Union of cm_outer_at over the given inputs.
RateRegion cm_outer_region(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12,
                           double c21, R0Mode mode = R0Mode::full, double clip = kDefaultClip);

// Outer bound with c21 forced to 0; throws PreconditionError unless the channel is degraded.
RateRegion degraded_capacity(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12,
                             double c21, R0Mode mode = R0Mode::full, double clip = kDefaultClip);

}  // namespace confmac

#pragma once

#include <string>
#include <vector>

#include "confmac/geometry.hpp"

namespace confmac {

// Y1 = g11^.5 X1 + g21^.5 X2 + Z1, Y2 = g22^.5 X2 + g12^.5 X1 + Z2, unit noise.
// Gains are squared amplitudes; c12 is the link from decoder 1 to decoder 2.
struct GaussianCmChannel {
  double g11 = 1.0, g12 = 1.0, g21 = 1.0, g22 = 1.0;
  double p1 = 1.0, p2 = 1.0;
  double c12 = 0.0, c21 = 0.0;

  void validate() const;
};

// Private powers; the remaining P_i - P_i' carries the common message coherently.
struct PowerSplit {
  double p1p = 0.0, p2p = 0.0;
};

PowerSplit full_private(const GaussianCmChannel& ch);

struct CoherenceTerms {
  double rho1 = 0.0, rho2 = 0.0, kterm = 0.0;
};

// Compression noise variances at the two decoders; +inf means nothing is forwarded.
struct QuantizationNoise {
  double sigma1sq = kInf, sigma2sq = kInf;
};

CoherenceTerms coherence_terms(const GaussianCmChannel& ch, const PowerSplit& split);

// Smallest noise variances with independent full-power inputs.
QuantizationNoise sigma_min(const GaussianCmChannel& ch);

// Smallest noise variances meeting the Wyner-Ziv rate constraints under the input
// covariance of the given split. Equals sigma_min(ch) at the full private split.
QuantizationNoise sigma_min(const GaussianCmChannel& ch, const PowerSplit& split);

BoundSet outer_bound_at(const GaussianCmChannel& ch, const PowerSplit& split);
BoundSet no_coop_at(const GaussianCmChannel& ch, const PowerSplit& split);
BoundSet one_round_at(const GaussianCmChannel& ch, const PowerSplit& split, const QuantizationNoise& qn);

struct TwoRoundBounds {
  // decoder 1 compresses over C12, decoder 2 decodes and bins back over C21
  BoundSet rx1_compresses;
  // decoder 2 compresses over C21, decoder 1 decodes and bins back over C12
  BoundSet rx2_compresses;
};

TwoRoundBounds two_round_at(const GaussianCmChannel& ch, const PowerSplit& split, const QuantizationNoise& qn);

// Full-cooperation terms (both outputs at one decoder).
BoundSet full_cooperation_at(const GaussianCmChannel& ch, const PowerSplit& split);

enum class Scheme { outer, one_round, two_round, no_coop };

Scheme parse_scheme(const std::string& s);
std::string to_string(Scheme s);

// Uniform grid of n points per power axis, from 0 to P_i.
std::vector<PowerSplit> split_grid(const GaussianCmChannel& ch, std::size_t n);

RateRegion gaussian_region(const GaussianCmChannel& ch, Scheme scheme, const GridSpec& grid, R0Mode mode,
                           double clip = kDefaultClip);

}  // namespace confmac

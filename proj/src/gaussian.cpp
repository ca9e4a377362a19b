#include "confmac/gaussian.hpp"

#include <cmath>
#include <string>

#include "confmac/errors.hpp"
#include "confmac/info.hpp"

namespace confmac {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw DomainError("GaussianCmChannel: " + what);
}

bool nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// 1/(1+sigma^2), with +inf giving 0
double weight(double sigmasq) { return std::isinf(sigmasq) ? 0.0 : 1.0 / (1.0 + sigmasq); }

void check_split(const GaussianCmChannel& ch, const PowerSplit& s) {
  if (!(nonneg(s.p1p) && s.p1p <= ch.p1 && nonneg(s.p2p) && s.p2p <= ch.p2)) {
    throw DomainError("PowerSplit out of range: (" + std::to_string(s.p1p) + ", " + std::to_string(s.p2p) + ")");
  }
}

struct Rx {
  double own1, own2;      // squared gains from X1, X2 to this decoder
  double other1, other2;  // squared gains to the other decoder
  double rho_own, rho_other;
};

Rx rx(const GaussianCmChannel& ch, const CoherenceTerms& ct, int which) {
  if (which == 1) return {ch.g11, ch.g21, ch.g12, ch.g22, ct.rho1, ct.rho2};
  return {ch.g12, ch.g22, ch.g11, ch.g21, ct.rho2, ct.rho1};
}

// Bounds at one decoder that sees its own output and the other output through
// a Gaussian quantizer with weight f = 1/(1+sigma^2).
BoundSet view(const GaussianCmChannel& ch, const PowerSplit& sp, const CoherenceTerms& ct, int which, double f) {
  const Rx r = rx(ch, ct, which);
  const double s1 = sp.p1p * (r.own1 + f * r.other1);
  const double s2 = sp.p2p * (r.own2 + f * r.other2);
  const double s12 = s1 + s2 + f * ct.kterm;
  const double cross = sp.p1p * std::sqrt(r.own1 * r.other1) + sp.p2p * std::sqrt(r.own2 * r.other2);
  const double total = s12 + r.rho_own * (1.0 + f * (sp.p1p * r.other1 + sp.p2p * r.other2)) +
                       f * r.rho_other * (1.0 + sp.p1p * r.own1 + sp.p2p * r.own2) -
                       2.0 * f * std::sqrt(r.rho_own * r.rho_other) * cross;
  return {capacity_fn(s1), capacity_fn(s2), capacity_fn(s12), capacity_fn(std::max(0.0, total))};
}

}  // namespace

void GaussianCmChannel::validate() const {
  need(nonneg(g11) && nonneg(g12) && nonneg(g21) && nonneg(g22), "gains must be finite and >= 0");
  need(nonneg(p1) && nonneg(p2), "powers must be finite and >= 0");
  need(nonneg(c12) && nonneg(c21), "conferencing capacities must be finite and >= 0");
}

PowerSplit full_private(const GaussianCmChannel& ch) { return {ch.p1, ch.p2}; }

CoherenceTerms coherence_terms(const GaussianCmChannel& ch, const PowerSplit& split) {
  ch.validate();
  check_split(ch, split);
  const double a = std::sqrt(ch.p1 - split.p1p);
  const double b = std::sqrt(ch.p2 - split.p2p);
  const double r1 = std::sqrt(ch.g11) * a + std::sqrt(ch.g21) * b;
  const double r2 = std::sqrt(ch.g22) * b + std::sqrt(ch.g12) * a;
  const double det = std::sqrt(ch.g12 * ch.g21) - std::sqrt(ch.g11 * ch.g22);
  return {r1 * r1, r2 * r2, split.p1p * split.p2p * det * det};
}

namespace {

// (2^{2C} - 1), the per-bit SNR budget of a link; 0 for C = 0.
double link_snr(double c) { return std::expm1(2.0 * c * std::log(2.0)); }

QuantizationNoise noise_from(double det, double var1, double var2, const GaussianCmChannel& ch) {
  QuantizationNoise q;
  if (ch.c12 > 0.0) q.sigma1sq = det / (link_snr(ch.c12) * var2);
  if (ch.c21 > 0.0) q.sigma2sq = det / (link_snr(ch.c21) * var1);
  return q;
}

}  // namespace

QuantizationNoise sigma_min(const GaussianCmChannel& ch) {
  ch.validate();
  const double d = std::sqrt(ch.g12 * ch.g21) - std::sqrt(ch.g11 * ch.g22);
  const double n = 1.0 + (ch.g11 + ch.g12) * ch.p1 + (ch.g21 + ch.g22) * ch.p2 + d * d * ch.p1 * ch.p2;
  return noise_from(n, 1.0 + ch.g11 * ch.p1 + ch.g21 * ch.p2, 1.0 + ch.g12 * ch.p1 + ch.g22 * ch.p2, ch);
}

QuantizationNoise sigma_min(const GaussianCmChannel& ch, const PowerSplit& split) {
  const auto ct = coherence_terms(ch, split);
  const double var1 = 1.0 + ch.g11 * split.p1p + ch.g21 * split.p2p + ct.rho1;
  const double var2 = 1.0 + ch.g12 * split.p1p + ch.g22 * split.p2p + ct.rho2;
  const double d = std::sqrt(ch.g12 * ch.g21) - std::sqrt(ch.g11 * ch.g22);
  const double c = std::sqrt((ch.p1 - split.p1p) * (ch.p2 - split.p2p));
  const double det_sigma = std::max(0.0, ch.p1 * ch.p2 - c * c);
  const double det = var1 + var2 - 1.0 + d * d * det_sigma;
  return noise_from(det, var1, var2, ch);
}

BoundSet no_coop_at(const GaussianCmChannel& ch, const PowerSplit& split) {
  const auto ct = coherence_terms(ch, split);
  return min(view(ch, split, ct, 1, 0.0), view(ch, split, ct, 2, 0.0));
}

BoundSet full_cooperation_at(const GaussianCmChannel& ch, const PowerSplit& split) {
  return view(ch, split, coherence_terms(ch, split), 1, 1.0);
}

BoundSet outer_bound_at(const GaussianCmChannel& ch, const PowerSplit& split) {
  const auto ct = coherence_terms(ch, split);
  return min(min(view(ch, split, ct, 1, 0.0).shifted(ch.c21), view(ch, split, ct, 2, 0.0).shifted(ch.c12)),
             view(ch, split, ct, 1, 1.0));
}

namespace {

void check_noise(const GaussianCmChannel& ch, const PowerSplit& split, const QuantizationNoise& qn) {
  const auto floor = sigma_min(ch, split);
  auto ok = [](double s, double lo) {
    if (std::isnan(s) || s < 0.0) return false;
    if (std::isinf(lo)) return std::isinf(s);
    return s >= lo * (1.0 - 1e-9);
  };
  if (!ok(qn.sigma1sq, floor.sigma1sq) || !ok(qn.sigma2sq, floor.sigma2sq)) {
    throw DomainError("quantization noise below the Wyner-Ziv floor (floor " + std::to_string(floor.sigma1sq) + ", " +
                      std::to_string(floor.sigma2sq) + ")");
  }
}

}  // namespace

BoundSet one_round_at(const GaussianCmChannel& ch, const PowerSplit& split, const QuantizationNoise& qn) {
  check_noise(ch, split, qn);
  const auto ct = coherence_terms(ch, split);
  return min(view(ch, split, ct, 1, weight(qn.sigma2sq)), view(ch, split, ct, 2, weight(qn.sigma1sq)));
}

TwoRoundBounds two_round_at(const GaussianCmChannel& ch, const PowerSplit& split, const QuantizationNoise& qn) {
  check_noise(ch, split, qn);
  const auto ct = coherence_terms(ch, split);
  TwoRoundBounds t;
  t.rx1_compresses = min(view(ch, split, ct, 1, 0.0).shifted(ch.c21), view(ch, split, ct, 2, weight(qn.sigma1sq)));
  t.rx2_compresses = min(view(ch, split, ct, 1, weight(qn.sigma2sq)), view(ch, split, ct, 2, 0.0).shifted(ch.c12));
  return t;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "outer") return Scheme::outer;
  if (s == "one-round") return Scheme::one_round;
  if (s == "two-round") return Scheme::two_round;
  if (s == "no-coop") return Scheme::no_coop;
  throw UsageError("unknown scheme \"" + s + "\"");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::outer: return "outer";
    case Scheme::one_round: return "one-round";
    case Scheme::two_round: return "two-round";
    case Scheme::no_coop: return "no-coop";
  }
  return "?";
}

std::vector<PowerSplit> split_grid(const GaussianCmChannel& ch, std::size_t n) {
  if (n < 2) throw UsageError("power grid needs at least 2 points per axis");
  std::vector<PowerSplit> g;
  g.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // endpoints exact so the full private split is on the grid
      double a = i + 1 == n ? ch.p1 : ch.p1 * static_cast<double>(i) / static_cast<double>(n - 1);
      double b = j + 1 == n ? ch.p2 : ch.p2 * static_cast<double>(j) / static_cast<double>(n - 1);
      g.push_back({a, b});
    }
  }
  return g;
}

RateRegion gaussian_region(const GaussianCmChannel& ch, Scheme scheme, const GridSpec& grid, R0Mode mode,
                           double clip) {
  ch.validate();
  std::vector<PowerSplit> splits;
  if (mode == R0Mode::zero_common) {
    if (grid.power_points < 2) throw UsageError("power grid needs at least 2 points per axis");
    splits = {full_private(ch)};
  } else {
    splits = split_grid(ch, grid.power_points);
  }
  std::vector<Point> pts;
  for (const auto& sp : splits) {
    switch (scheme) {
      case Scheme::outer: append_bound_points(outer_bound_at(ch, sp), mode, clip, pts); break;
      case Scheme::no_coop: append_bound_points(no_coop_at(ch, sp), mode, clip, pts); break;
      case Scheme::one_round: append_bound_points(one_round_at(ch, sp, sigma_min(ch, sp)), mode, clip, pts); break;
      case Scheme::two_round: {
        auto t = two_round_at(ch, sp, sigma_min(ch, sp));
        append_bound_points(t.rx1_compresses, mode, clip, pts);
        append_bound_points(t.rx2_compresses, mode, clip, pts);
        break;
      }
    }
  }
  auto r = RateRegion::hull(mode == R0Mode::full ? 3 : 2, std::move(pts));
  r.set_clip(clip);
  return r;
}

}  // namespace confmac

#include "confmac/cme.hpp"

#include <algorithm>
#include <cmath>

#include "confmac/errors.hpp"

namespace confmac {

void EncoderConferencing::validate() const {
  if (std::isnan(cbar12) || std::isnan(cbar21) || cbar12 < 0.0 || cbar21 < 0.0) {
    throw DomainError("encoder conferencing capacities must be >= 0");
  }
}

namespace {

using Poly = std::vector<std::array<double, 2>>;

// Keep the part of poly with a . x <= b.
Poly clip(const Poly& poly, double a0, double a1, double b) {
  Poly out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const double fp = a0 * p[0] + a1 * p[1] - b;
    const double fq = a0 * q[0] + a1 * q[1] - b;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

void check_3d(const RateRegion& r) {
  if (r.dimension() != 3) throw UsageError("cme_transform: region must be three-dimensional (R0,R1,R2)");
}

double box_size(const RateRegion& r) { return std::max(0.0, support(r, {1.0, 1.0, 1.0})); }

}  // namespace

RateRegion cme_transform(const RateRegion& region3d, const EncoderConferencing& enc) {
  check_3d(region3d);
  enc.validate();
  const double top = box_size(region3d);
  const double c1 = std::min(enc.cbar12, top);
  const double c2 = std::min(enc.cbar21, top);

  struct Piece {
    double lo1, hi1, lo2, hi2;
    // x3 = (m0 . R, m1 . R, m2 . R) + t
    std::array<std::array<double, 2>, 3> m;
    std::array<double, 3> t;
  };
  const std::array<Piece, 4> pieces{{
      {0, c1, 0, c2, {{{1, 1}, {0, 0}, {0, 0}}}, {0, 0, 0}},
      {c1, top, 0, c2, {{{0, 1}, {1, 0}, {0, 0}}}, {c1, -c1, 0}},
      {0, c1, c2, top, {{{1, 0}, {0, 0}, {0, 1}}}, {c2, 0, -c2}},
      {c1, top, c2, top, {{{0, 0}, {1, 0}, {0, 1}}}, {c1 + c2, -c1, -c2}},
  }};

  std::vector<Point> pts{{0.0, 0.0, 0.0}};
  for (const auto& pc : pieces) {
    if (pc.lo1 > pc.hi1 || pc.lo2 > pc.hi2) continue;
    Poly poly{{pc.lo1, pc.lo2}, {pc.hi1, pc.lo2}, {pc.hi1, pc.hi2}, {pc.lo1, pc.hi2}};
    for (const auto& h : region3d.facets()) {
      const double a0 = h.normal[0] * pc.m[0][0] + h.normal[1] * pc.m[1][0] + h.normal[2] * pc.m[2][0];
      const double a1 = h.normal[0] * pc.m[0][1] + h.normal[1] * pc.m[1][1] + h.normal[2] * pc.m[2][1];
      const double b = h.offset - (h.normal[0] * pc.t[0] + h.normal[1] * pc.t[1] + h.normal[2] * pc.t[2]);
      poly = clip(poly, a0, a1, b);
      if (poly.empty()) break;
    }
    for (const auto& v : poly) pts.push_back({std::max(0.0, v[0]), std::max(0.0, v[1]), 0.0});
  }
  auto r = RateRegion::hull(2, std::move(pts));
  r.set_clip(region3d.clip());
  return r;
}

RateRegion cme_transform_scan(const RateRegion& region3d, const EncoderConferencing& enc, std::size_t points) {
  check_3d(region3d);
  enc.validate();
  if (points < 2) throw UsageError("cme_transform_scan: need at least 2 points per axis");
  const double top = box_size(region3d);
  std::vector<Point> pts{{0.0, 0.0, 0.0}};
  for (std::size_t i = 0; i < points; ++i) {
    const double r1 = top * static_cast<double>(i) / static_cast<double>(points - 1);
    for (std::size_t j = 0; j < points; ++j) {
      const double r2 = top * static_cast<double>(j) / static_cast<double>(points - 1);
      const double r12 = std::min(r1, enc.cbar12), r21 = std::min(r2, enc.cbar21);
      if (contains(region3d, {r12 + r21, r1 - r12, r2 - r21}, 1e-12)) pts.push_back({r1, r2, 0.0});
    }
  }
  auto r = RateRegion::hull(2, std::move(pts));
  r.set_clip(region3d.clip());
  return r;
}

RateRegion cme_outer(const GaussianCmChannel& ch, const EncoderConferencing& enc, const GridSpec& grid, double clip) {
  return cme_transform(gaussian_region(ch, Scheme::outer, grid, R0Mode::full, clip), enc);
}

RateRegion cme_outer(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12, double c21,
                     const EncoderConferencing& enc, bool degraded, double clip) {
  auto region = degraded ? degraded_capacity(ch, inputs, c12, c21, R0Mode::full, clip)
                         : cm_outer_region(ch, inputs, c12, c21, R0Mode::full, clip);
  return cme_transform(region, enc);
}

}  // namespace confmac

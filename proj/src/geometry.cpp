#include "confmac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "confmac/errors.hpp"

namespace confmac {

BoundSet min(const BoundSet& a, const BoundSet& b) {
  return {std::min(a.b1, b.b1), std::min(a.b2, b.b2), std::min(a.b12, b.b12), std::min(a.b012, b.b012)};
}

R0Mode parse_r0_mode(const std::string& s) {
  if (s == "zero-common") return R0Mode::zero_common;
  if (s == "full") return R0Mode::full;
  throw UsageError("r0_mode must be \"zero-common\" or \"full\", got \"" + s + "\"");
}

std::string to_string(R0Mode m) { return m == R0Mode::full ? "full" : "zero-common"; }

RateRegion RateRegion::hull(int dimension, std::vector<Point> points) {
  if (dimension != 2 && dimension != 3) throw UsageError("RateRegion: dimension must be 2 or 3");
  if (points.empty()) throw UsageError("RateRegion: no points");
  for (const auto& p : points)
    for (double c : p)
      if (!std::isfinite(c)) throw ValidationError("RateRegion: non-finite coordinate");
  auto h = dimension == 2 ? detail::hull2d(std::move(points)) : detail::hull3d(std::move(points));
  RateRegion r;
  r.dim_ = dimension;
  r.vertices_ = std::move(h.vertices);
  r.facets_ = std::move(h.facets);
  return r;
}

namespace {

double clean_bound(double b, double clip) {
  if (std::isnan(b)) throw ValidationError("BoundSet: NaN bound");
  if (b < 0.0) {
    if (b < -1e-12) throw ValidationError("BoundSet: negative bound " + std::to_string(b));
    b = 0.0;
  }
  return std::min(b, clip);
}

}  // namespace

void append_bound_points(const BoundSet& bs, R0Mode mode, double clip, std::vector<Point>& out) {
  if (!(clip > 0.0) || !std::isfinite(clip)) throw UsageError("clip must be positive and finite");
  const double b012 = clean_bound(bs.b012, clip);
  const double b1 = std::min({clean_bound(bs.b1, clip), clean_bound(bs.b12, clip), b012});
  const double b2 = std::min({clean_bound(bs.b2, clip), clean_bound(bs.b12, clip), b012});
  const double s = std::min({clean_bound(bs.b12, clip), b1 + b2, b012});
  const std::array<std::array<double, 2>, 5> pent{{{0, 0}, {b1, 0}, {b1, s - b1}, {s - b2, b2}, {0, b2}}};
  if (mode == R0Mode::zero_common) {
    for (const auto& v : pent) out.push_back({v[0], v[1], 0.0});
  } else {
    for (const auto& v : pent) {
      out.push_back({0.0, v[0], v[1]});
      out.push_back({std::max(0.0, b012 - v[0] - v[1]), v[0], v[1]});
    }
  }
}

RateRegion polytope_from_bounds(const BoundSet& bs, R0Mode mode, double clip) {
  std::vector<Point> pts;
  append_bound_points(bs, mode, clip, pts);
  auto r = RateRegion::hull(mode == R0Mode::full ? 3 : 2, std::move(pts));
  r.set_clip(clip);
  return r;
}

RateRegion hull_union(std::span<const RateRegion> regions) {
  if (regions.empty()) throw UsageError("hull_union: no regions");
  const int dim = regions.front().dimension();
  std::vector<Point> pts;
  double clip = 0.0;
  for (const auto& r : regions) {
    if (r.dimension() != dim) throw UsageError("hull_union: dimension mismatch");
    pts.insert(pts.end(), r.vertices().begin(), r.vertices().end());
    clip = std::max(clip, r.clip());
  }
  auto out = RateRegion::hull(dim, std::move(pts));
  out.set_clip(clip);
  return out;
}

namespace {

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void need_region(const RateRegion& r, const char* what) {
  if (r.empty()) throw UsageError(std::string(what) + ": empty region");
}

}  // namespace

double violation(const RateRegion& region, const Point& x) {
  need_region(region, "violation");
  double worst = -kInf;
  Point p = x;
  if (region.dimension() == 2) p[2] = 0.0;
  for (const auto& h : region.facets()) worst = std::max(worst, dot(h.normal, p) - h.offset);
  return worst;
}

bool contains(const RateRegion& region, const Point& x, double tol) { return violation(region, x) <= tol; }

double support(const RateRegion& region, const Point& direction) {
  need_region(region, "support");
  Point d = direction;
  if (region.dimension() == 2) d[2] = 0.0;
  if (d[0] == 0.0 && d[1] == 0.0 && d[2] == 0.0) throw UsageError("support: zero direction");
  double best = -kInf;
  for (const auto& v : region.vertices()) best = std::max(best, dot(d, v));
  return best;
}

Containment region_containment(const RateRegion& inner, const RateRegion& outer, double tol) {
  if (inner.dimension() != outer.dimension()) throw UsageError("region_containment: dimension mismatch");
  Containment c;
  c.worst_violation = 0.0;
  for (const auto& v : inner.vertices()) c.worst_violation = std::max(c.worst_violation, violation(outer, v));
  c.contained = c.worst_violation <= tol;
  return c;
}

namespace {

bool covered(const std::vector<Point>& from, const std::vector<Point>& to, double tol) {
  for (const auto& a : from) {
    bool hit = false;
    for (const auto& b : to) {
      if (std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol && std::abs(a[2] - b[2]) <= tol) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace

bool same_vertices(const RateRegion& a, const RateRegion& b, double tol) {
  if (a.dimension() != b.dimension()) return false;
  return covered(a.vertices(), b.vertices(), tol) && covered(b.vertices(), a.vertices(), tol);
}

void write_csv(std::ostream& os, const RateRegion& region) {
  const bool full = region.dimension() == 3;
  os << (full ? "R0,R1,R2\n" : "R1,R2\n");
  char buf[96];
  for (const auto& v : region.vertices()) {
    if (full) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", v[0], v[1], v[2]);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v[0], v[1]);
    }
    os << buf;
  }
}

}  // namespace confmac

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace confmac {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultClip = 64.0;
inline constexpr double kContainTol = 1e-9;

// Upper bounds on R1, R2, R1+R2 and R0+R1+R2; any entry may be +inf.
struct BoundSet {
  double b1 = kInf;
  double b2 = kInf;
  double b12 = kInf;
  double b012 = kInf;

  BoundSet shifted(double c) const { return {b1 + c, b2 + c, b12 + c, b012 + c}; }
  bool operator==(const BoundSet&) const = default;
};

BoundSet min(const BoundSet& a, const BoundSet& b);

// zero_common: 2D slice at R0 = 0, points are (R1, R2).
// full: points are (R0, R1, R2).
enum class R0Mode { zero_common, full };

R0Mode parse_r0_mode(const std::string& s);
std::string to_string(R0Mode m);

// 2D points use the first two coordinates; the third is kept at zero.
using Point = std::array<double, 3>;

// normal . x <= offset, normal scaled so that its largest component magnitude is 1
struct Halfspace {
  Point normal{};
  double offset = 0.0;
};

struct GridSpec {
  std::size_t power_points = 33;
  std::size_t simplex_points = 9;
  std::size_t test_points = 3;
  std::size_t u_size = 2;
};

class RateRegion {
 public:
  RateRegion() = default;

  // Convex hull of the given points. Throws UsageError for an empty list or dimension not 2 or 3.
  static RateRegion hull(int dimension, std::vector<Point> points);

  int dimension() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  bool empty() const { return vertices_.empty(); }

  double clip() const { return clip_; }
  void set_clip(double c) { clip_ = c; }

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Halfspace> facets_;
  double clip_ = kDefaultClip;
};

// Vertex set of {R >= 0 : R1<=b1, R2<=b2, R1+R2<=b12, R0+R1+R2<=b012}.
RateRegion polytope_from_bounds(const BoundSet& bs, R0Mode mode, double clip = kDefaultClip);

// The candidate vertices used by polytope_from_bounds, before hulling; appended to out.
void append_bound_points(const BoundSet& bs, R0Mode mode, double clip, std::vector<Point>& out);

RateRegion hull_union(std::span<const RateRegion> regions);

bool contains(const RateRegion& region, const Point& x, double tol = kContainTol);

// Largest facet slack violated by x (<= 0 when inside).
double violation(const RateRegion& region, const Point& x);

double support(const RateRegion& region, const Point& direction);

struct Containment {
  bool contained = false;
  double worst_violation = 0.0;
};

Containment region_containment(const RateRegion& inner, const RateRegion& outer, double tol = kContainTol);

// Every vertex of a has a vertex of b within tol and vice versa.
bool same_vertices(const RateRegion& a, const RateRegion& b, double tol);

// Header `R0,R1,R2` or `R1,R2`, one vertex per row, fixed 17-digit precision.
void write_csv(std::ostream& os, const RateRegion& region);

namespace detail {
struct HullResult {
  std::vector<Point> vertices;
  std::vector<Halfspace> facets;
};
HullResult hull2d(std::vector<Point> pts);
HullResult hull3d(std::vector<Point> pts);
}  // namespace detail

}  // namespace confmac

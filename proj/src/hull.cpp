#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "confmac/errors.hpp"
#include "confmac/geometry.hpp"

namespace confmac::detail {

namespace {

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Point& a) { return std::sqrt(dot(a, a)); }
Point scale(const Point& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

Halfspace make_halfspace(Point n, double d) {
  double m = std::max({std::abs(n[0]), std::abs(n[1]), std::abs(n[2])});
  return {scale(n, 1.0 / m), d / m};
}

double extent(const std::vector<Point>& pts) {
  double s = 1.0;
  for (const auto& p : pts)
    for (double c : p) s = std::max(s, std::abs(c));
  return s;
}

void sort_unique(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain on (x, y) of points sorted lexicographically; returns CCW indices.
std::vector<std::size_t> chain(const std::vector<Point>& p, double tol) {
  const std::size_t n = p.size();
  if (n < 3) {
    std::vector<std::size_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = i;
    return r;
  }
  std::vector<std::size_t> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(p[h[k - 2]], p[h[k - 1]], p[i]) <= tol) --k;
    h[k++] = i;
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(p[h[k - 2]], p[h[k - 1]], p[i]) <= tol) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

HullResult hull2d(std::vector<Point> pts) {
  for (auto& p : pts) p[2] = 0.0;
  sort_unique(pts);
  const double s = extent(pts);
  const double tol = 1e-12 * s * s;
  auto idx = chain(pts, tol);
  HullResult r;
  for (auto i : idx) r.vertices.push_back(pts[i]);
  const auto& v = r.vertices;
  if (v.size() == 1) {
    const Point& a = v[0];
    r.facets = {make_halfspace({1, 0, 0}, a[0]), make_halfspace({-1, 0, 0}, -a[0]),
                make_halfspace({0, 1, 0}, a[1]), make_halfspace({0, -1, 0}, -a[1])};
  } else if (v.size() == 2 || (v.size() > 2 && std::abs(cross2(v[0], v[1], v[2])) <= tol)) {
    // collinear set: the chain returns the two endpoints
    const Point a = v.front(), b = v.back();
    Point t = sub(b, a);
    Point n{-t[1], t[0], 0.0};
    r.vertices = {a, b};
    r.facets = {make_halfspace(t, dot(t, b)), make_halfspace(scale(t, -1), -dot(t, a)),
                make_halfspace(n, dot(n, a)), make_halfspace(scale(n, -1), -dot(n, a))};
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % v.size()];
      Point n{b[1] - a[1], a[0] - b[0], 0.0};
      r.facets.push_back(make_halfspace(n, dot(n, a)));
    }
  }
  return r;
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer images of doubles, all scaled by the same power of two.
template <std::size_t N>
std::array<BigInt, N> exact_scaled(const std::array<double, N>& x) {
  int emin = std::numeric_limits<int>::max();
  for (double v : x) {
    if (v == 0.0) continue;
    int e;
    std::frexp(v, &e);
    emin = std::min(emin, e - 53);
  }
  std::array<BigInt, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    if (x[i] == 0.0) continue;
    int e;
    double m = std::frexp(x[i], &e);
    BigInt mi = static_cast<long long>(std::ldexp(m, 53));
    out[i] = mi << (e - 53 - emin);
  }
  return out;
}

// Sign of (b-a)x(c-a).(p-a): positive when p lies above the plane of a, b, c.
// Floating evaluation with a forward error bound, exact integer fallback.
int orient(const Point& a, const Point& b, const Point& c, const Point& p) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double wx = p[0] - a[0], wy = p[1] - a[1], wz = p[2] - a[2];
  const double det = wx * (uy * vz - uz * vy) + wy * (uz * vx - ux * vz) + wz * (ux * vy - uy * vx);
  const double perm = std::abs(wx) * (std::abs(uy * vz) + std::abs(uz * vy)) +
                      std::abs(wy) * (std::abs(uz * vx) + std::abs(ux * vz)) +
                      std::abs(wz) * (std::abs(ux * vy) + std::abs(uy * vx));
  const double bound = 7.7715611723761027e-16 * perm;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  // all four in one axis-aligned plane: exactly degenerate
  for (int k = 0; k < 3; ++k)
    if (a[k] == b[k] && a[k] == c[k] && a[k] == p[k]) return 0;
  auto z = exact_scaled<12>({a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2], p[0], p[1], p[2]});
  BigInt u[3], v[3], w[3];
  for (int k = 0; k < 3; ++k) {
    u[k] = z[3 + k] - z[k];
    v[k] = z[6 + k] - z[k];
    w[k] = z[9 + k] - z[k];
  }
  BigInt e = w[0] * (u[1] * v[2] - u[2] * v[1]) + w[1] * (u[2] * v[0] - u[0] * v[2]) +
             w[2] * (u[0] * v[1] - u[1] * v[0]);
  return e.sign();
}

// Unit normal of (b-a)x(c-a); exact before the final rounding when the triangle is thin.
Point unit_normal(const Point& a, const Point& b, const Point& c) {
  using L = long double;
  L u[3], v[3];
  for (int k = 0; k < 3; ++k) {
    u[k] = L(b[k]) - L(a[k]);
    v[k] = L(c[k]) - L(a[k]);
  }
  L n[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  L len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  L uu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  L vv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (len > 1e-3L * uu * vv) {
    return {static_cast<double>(n[0] / len), static_cast<double>(n[1] / len), static_cast<double>(n[2] / len)};
  }
  auto z = exact_scaled<9>({a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]});
  BigInt p[3], q[3];
  for (int k = 0; k < 3; ++k) {
    p[k] = z[3 + k] - z[k];
    q[k] = z[6 + k] - z[k];
  }
  BigInt x[3] = {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  BigInt m = std::max({abs(x[0]), abs(x[1]), abs(x[2])});
  if (m == 0) return {0.0, 0.0, 0.0};
  // keep 64 significant bits before converting
  std::size_t bits = msb(m);
  std::size_t shift = bits > 64 ? bits - 64 : 0;
  Point e;
  for (int k = 0; k < 3; ++k) {
    BigInt t = x[k] >> shift;
    if (x[k] < 0) t = -(abs(x[k]) >> shift);
    e[k] = static_cast<double>(t);
  }
  return scale(e, 1.0 / norm(e));
}

struct Face {
  std::array<int, 3> v{};
  Point n{};
  double d = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class QuickHull {
 public:
  explicit QuickHull(const std::vector<Point>& pts) : p_(pts) {}

  void run(const std::array<int, 4>& simplex) {
    Point c{};
    for (int i : simplex) c = {c[0] + p_[i][0] / 4, c[1] + p_[i][1] / 4, c[2] + p_[i][2] / 4};
    const int s0 = simplex[0], s1 = simplex[1], s2 = simplex[2], s3 = simplex[3];
    for (auto f : {std::array<int, 3>{s0, s1, s2}, std::array<int, 3>{s0, s1, s3},
                   std::array<int, 3>{s0, s2, s3}, std::array<int, 3>{s1, s2, s3}}) {
      Face face = make_face(f[0], f[1], f[2]);
      if (orient(p_[f[0]], p_[f[1]], p_[f[2]], c) > 0) face = make_face(f[0], f[2], f[1]);
      add_face(std::move(face));
    }
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(p_.size()); ++i) {
      if (std::find(simplex.begin(), simplex.end(), i) == simplex.end()) all.push_back(i);
    }
    std::vector<int> fresh{0, 1, 2, 3};
    assign(all, fresh);

    std::vector<int> work{0, 1, 2, 3};
    while (!work.empty()) {
      int f = work.back();
      work.pop_back();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      auto created = add_point(f);
      for (int g : created)
        if (!faces_[g].outside.empty()) work.push_back(g);
    }
  }

  const std::vector<Face>& faces() const { return faces_; }

 private:
  Face make_face(int a, int b, int c) const {
    Face f;
    f.v = {a, b, c};
    f.n = unit_normal(p_[a], p_[b], p_[c]);
    f.d = dot(f.n, p_[a]);
    return f;
  }

  double dist(const Face& f, int i) const { return dot(f.n, p_[i]) - f.d; }
  bool above(const Face& f, int i) const { return orient(p_[f.v[0]], p_[f.v[1]], p_[f.v[2]], p_[i]) > 0; }

  void add_face(Face f) {
    int id = static_cast<int>(faces_.size());
    for (int k = 0; k < 3; ++k) edges_[edge_key(f.v[k], f.v[(k + 1) % 3])] = id;
    faces_.push_back(std::move(f));
  }

  void assign(const std::vector<int>& points, const std::vector<int>& targets) {
    for (int i : points) {
      int best = -1;
      double best_d = -kInf;
      for (int f : targets) {
        double d = dist(faces_[f], i);
        if (d > best_d && above(faces_[f], i)) {
          best_d = d;
          best = f;
        }
      }
      if (best >= 0) faces_[best].outside.push_back(i);
    }
  }

  std::vector<int> add_point(int start) {
    const auto& out = faces_[start].outside;
    int eye = out.front();
    double far = dist(faces_[start], eye);
    for (int i : out) {
      double d = dist(faces_[start], i);
      if (d > far) {
        far = d;
        eye = i;
      }
    }

    std::vector<int> visible{start};
    std::vector<std::pair<int, int>> horizon;
    std::unordered_map<int, bool> seen{{start, true}};
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const Face& f = faces_[visible[q]];
      for (int k = 0; k < 3; ++k) {
        int a = f.v[k], b = f.v[(k + 1) % 3];
        int g = edges_.at(edge_key(b, a));
        auto it = seen.find(g);
        if (it == seen.end()) {
          bool vis = above(faces_[g], eye);
          seen.emplace(g, vis);
          if (vis) {
            visible.push_back(g);
          } else {
            horizon.emplace_back(a, b);
          }
        } else if (!it->second) {
          horizon.emplace_back(a, b);
        }
      }
    }

    std::vector<int> orphans;
    for (int f : visible) {
      Face& face = faces_[f];
      face.alive = false;
      for (int i : face.outside)
        if (i != eye) orphans.push_back(i);
      face.outside.clear();
      face.outside.shrink_to_fit();
      for (int k = 0; k < 3; ++k) {
        auto it = edges_.find(edge_key(face.v[k], face.v[(k + 1) % 3]));
        if (it != edges_.end() && it->second == f) edges_.erase(it);
      }
    }

    std::vector<int> created;
    for (auto [a, b] : horizon) {
      created.push_back(static_cast<int>(faces_.size()));
      add_face(make_face(a, b, eye));
    }
    assign(orphans, created);
    return created;
  }

  const std::vector<Point>& p_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
};

// true when the normals span three dimensions
bool full_rank(const std::vector<Point>& normals) {
  if (normals.size() < 3) return false;
  const Point& a = normals[0];
  Point best{};
  double best_len = 0.0;
  for (const auto& n : normals) {
    Point c = cross(a, n);
    double l = norm(c);
    if (l > best_len) {
      best_len = l;
      best = c;
    }
  }
  if (best_len < 1e-12) return false;
  best = scale(best, 1.0 / best_len);
  for (const auto& n : normals)
    if (std::abs(dot(best, n)) > 1e-12) return true;
  return false;
}

HullResult planar(const std::vector<Point>& pts, const Point& origin, const Point& e1, const Point& e2,
                  const Point& normal) {
  std::vector<Point> local(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point d = sub(pts[i], origin);
    local[i] = {dot(d, e1), dot(d, e2), static_cast<double>(i)};
  }
  std::sort(local.begin(), local.end());
  std::vector<Point> xy = local;
  for (auto& p : xy) p[2] = 0.0;
  const double s = extent(pts);
  auto idx = chain(xy, 1e-12 * s * s);
  HullResult r;
  for (auto i : idx) r.vertices.push_back(pts[static_cast<std::size_t>(local[i][2])]);
  double hi = -kInf, lo = kInf;
  for (const auto& p : pts) {
    hi = std::max(hi, dot(normal, p));
    lo = std::min(lo, dot(normal, p));
  }
  r.facets = {make_halfspace(normal, hi), make_halfspace(scale(normal, -1), -lo)};
  if (idx.size() == 2) {
    Point t = sub(r.vertices[1], r.vertices[0]);
    r.facets.push_back(make_halfspace(t, dot(t, r.vertices[1])));
    r.facets.push_back(make_halfspace(scale(t, -1), -dot(t, r.vertices[0])));
    Point w = cross(normal, t);
    r.facets.push_back(make_halfspace(w, dot(w, r.vertices[0])));
    r.facets.push_back(make_halfspace(scale(w, -1), -dot(w, r.vertices[0])));
    return r;
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Point& a = xy[idx[k]];
    const Point& b = xy[idx[(k + 1) % idx.size()]];
    Point w = sub(scale(e1, b[1] - a[1]), scale(e2, b[0] - a[0]));
    r.facets.push_back(make_halfspace(w, dot(w, r.vertices[k])));
  }
  return r;
}

}  // namespace

HullResult hull3d(std::vector<Point> pts) {
  sort_unique(pts);
  const double s = extent(pts);
  const double eps = 1e-10 * s;
  HullResult r;
  const Point& p0 = pts[0];

  std::size_t i1 = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = norm(sub(pts[i], p0));
    if (d > best) best = d, i1 = i;
  }
  if (best <= eps) {
    r.vertices = {p0};
    for (int k = 0; k < 3; ++k) {
      Point e{};
      e[k] = 1.0;
      r.facets.push_back(make_halfspace(e, p0[k]));
      r.facets.push_back(make_halfspace(scale(e, -1), -p0[k]));
    }
    return r;
  }
  const Point t = scale(sub(pts[i1], p0), 1.0 / best);

  std::size_t i2 = 0;
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = norm(cross(t, sub(pts[i], p0)));
    if (d > best) best = d, i2 = i;
  }
  if (best <= eps) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double x = dot(t, pts[i]);
      if (x < dot(t, pts[lo])) lo = i;
      if (x > dot(t, pts[hi])) hi = i;
    }
    r.vertices = {pts[lo], pts[hi]};
    std::sort(r.vertices.begin(), r.vertices.end());
    r.facets.push_back(make_halfspace(t, dot(t, pts[hi])));
    r.facets.push_back(make_halfspace(scale(t, -1), -dot(t, pts[lo])));
    // two unit normals orthogonal to t
    Point seed = std::abs(t[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
    Point u = cross(t, seed);
    u = scale(u, 1.0 / norm(u));
    Point w = cross(t, u);
    for (const Point& n : {u, w}) {
      r.facets.push_back(make_halfspace(n, dot(n, p0)));
      r.facets.push_back(make_halfspace(scale(n, -1), -dot(n, p0)));
    }
    return r;
  }
  Point n = cross(t, sub(pts[i2], p0));
  n = scale(n, 1.0 / norm(n));

  std::size_t i3 = 0;
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double d = std::abs(dot(n, sub(pts[i], p0)));
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps) {
    r = planar(pts, p0, t, cross(n, t), n);
    std::sort(r.vertices.begin(), r.vertices.end());
    return r;
  }

  QuickHull qh(pts);
  qh.run({0, static_cast<int>(i1), static_cast<int>(i2), static_cast<int>(i3)});

  std::vector<std::vector<Point>> incident(pts.size());
  for (const auto& f : qh.faces()) {
    if (!f.alive) continue;
    for (int v : f.v) incident[v].push_back(f.n);
  }
  std::vector<Halfspace> planes;
  for (const auto& f : qh.faces()) {
    if (!f.alive) continue;
    double d = -kInf;
    for (int v : f.v) d = std::max(d, dot(f.n, pts[v]));
    planes.push_back({f.n, d});
  }
  std::sort(planes.begin(), planes.end(), [](const Halfspace& a, const Halfspace& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });
  for (const auto& h : planes) {
    if (!r.facets.empty()) {
      auto& last = r.facets.back();
      // unit normals until the final rescale below
      if (norm(sub(last.normal, h.normal)) < 1e-12 && std::abs(last.offset - h.offset) < 1e-12 * s) {
        last.offset = std::max(last.offset, h.offset);
        continue;
      }
    }
    r.facets.push_back(h);
  }
  for (auto& h : r.facets) h = make_halfspace(h.normal, h.offset);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (full_rank(incident[i])) r.vertices.push_back(pts[i]);
  }
  return r;
}

}  // namespace confmac::detail

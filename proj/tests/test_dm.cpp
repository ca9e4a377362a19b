#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "confmac/dm.hpp"
#include "confmac/errors.hpp"
#include "oracles.hpp"

using namespace confmac;

namespace {

double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

ConditionalPmf random_cond(std::mt19937_64& g, std::size_t rows, std::size_t cols) {
  std::vector<double> p(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double t = 0;
    for (std::size_t c = 0; c < cols; ++c) t += (p[r * cols + c] = oracle::unit(g) + 1e-3);
    for (std::size_t c = 0; c < cols; ++c) p[r * cols + c] /= t;
  }
  return {rows, cols, p};
}

DmInputDistribution random_input(std::mt19937_64& g, const DmChannel& ch, std::size_t nu) {
  auto pu = random_cond(g, 1, nu);
  return {Pmf(pu.p), random_cond(g, nu, ch.x1()), random_cond(g, nu, ch.x2())};
}

DmInputDistribution uniform_input(const DmChannel& ch) {
  return {Pmf({1.0}), ConditionalPmf(1, ch.x1(), std::vector<double>(ch.x1(), 1.0 / ch.x1())),
          ConditionalPmf(1, ch.x2(), std::vector<double>(ch.x2(), 1.0 / ch.x2()))};
}

// Coordinates: 0 U, 1 X1, 2 X2, 3 Y1, 4 Y2, 5 Yhat1, 6 Yhat2.
oracle::Table table(const DmChannel& ch, const DmInputDistribution& in, const DmTestChannels* t = nullptr) {
  oracle::Table out;
  const std::size_t h1 = t ? t->q1.cols : 1, h2 = t ? t->q2.cols : 1;
  for (std::size_t u = 0; u < in.pu.size(); ++u)
    for (std::size_t a = 0; a < ch.x1(); ++a)
      for (std::size_t b = 0; b < ch.x2(); ++b)
        for (std::size_t c = 0; c < ch.y1(); ++c)
          for (std::size_t d = 0; d < ch.y2(); ++d)
            for (std::size_t e = 0; e < h1; ++e)
              for (std::size_t f = 0; f < h2; ++f) {
                double p = in.pu[u] * in.px1_given_u(u, a) * in.px2_given_u(u, b) * ch(a, b, c, d);
                if (t) p *= t->q1(c, e) * t->q2(d, f);
                out.outcomes.push_back({int(u), int(a), int(b), int(c), int(d), int(e), int(f)});
                out.prob.push_back(p);
              }
  return out;
}

std::array<double, 4> seen(const oracle::Table& t, const std::vector<int>& obs) {
  return {oracle::I(t, {1}, obs, {2, 0}), oracle::I(t, {2}, obs, {1, 0}), oracle::I(t, {1, 2}, obs, {0}),
          oracle::I(t, {1, 2}, obs)};
}

std::array<double, 4> arr(const BoundSet& b) { return {b.b1, b.b2, b.b12, b.b012}; }

bool close(const std::array<double, 4>& a, const std::array<double, 4>& b, double tol) {
  for (int i = 0; i < 4; ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Y1 = X1 ^ X2 ^ Z1, Y2 = X1 ^ X2 ^ Z2 with independent BSC(p) noise.
DmChannel xor_pair(double p) {
  std::vector<double> t(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const int s = a ^ b;
          t[((a * 2 + b) * 2 + c) * 2 + d] = (c == s ? 1 - p : p) * (d == s ? 1 - p : p);
        }
  return DmChannel({2, 2, 2, 2}, t);
}

double equal_rate(const RateRegion& r) {
  double lo = 0, hi = 8;
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (lo + hi);
    (contains(r, {m, m, 0}, 1e-12) ? lo : hi) = m;
  }
  return lo;
}

}  // namespace

TEST_CASE("joint distribution") {
  std::mt19937_64 g(41);
  auto ch = random_dm_channel({2, 3, 2, 2}, 5);
  auto in = random_input(g, ch, 2);
  auto j = joint_distribution(ch, in);
  double s = 0;
  for (double v : j.values()) s += v;
  CHECK(std::abs(s - 1.0) < 1e-12);
  const std::size_t keep_u[] = {kU}, keep_x2[] = {kX2};
  auto mu = j.marginal(keep_u);
  CHECK(mu[0] == doctest::Approx(in.pu[0]));
  auto mx2 = j.marginal(keep_x2);
  for (std::size_t b = 0; b < 3; ++b) {
    double e = 0;
    for (std::size_t u = 0; u < 2; ++u) e += in.pu[u] * in.px2_given_u(u, b);
    CHECK(mx2[b] == doctest::Approx(e).epsilon(1e-13));
  }
  // |U| = 1 makes X1 and X2 independent
  auto one = random_input(g, ch, 1);
  CHECK(mutual_information(joint_distribution(ch, one), {kX1}, {kX2}) < 1e-12);
  DmTestChannels t{random_cond(g, 2, 3), random_cond(g, 2, 2)};
  auto jt = joint_distribution(ch, in, t);
  CHECK(jt.shape().size() == 7);
  CHECK_THROWS_AS(joint_distribution(ch, in, DmTestChannels{random_cond(g, 3, 2), random_cond(g, 2, 2)}),
                  UsageError);
  CHECK_THROWS_AS(joint_distribution(ch, in, DmTestChannels{random_cond(g, 2, 4), random_cond(g, 2, 2)}),
                  UsageError);
}

TEST_CASE("deterministic inputs through an identity channel give a point mass") {
  std::vector<double> t(16, 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) t[((a * 2 + b) * 2 + a) * 2 + b] = 1.0;
  DmChannel ch({2, 2, 2, 2}, t);
  DmInputDistribution in{Pmf({1.0}), ConditionalPmf(1, 2, {0, 1}), ConditionalPmf(1, 2, {1, 0})};
  auto j = joint_distribution(ch, in);
  int mass = 0;
  for (double v : j.values()) mass += v == 1.0;
  CHECK(mass == 1);
}

TEST_CASE("receiver bounds match explicit sums") {
  std::mt19937_64 g(42);
  for (int it = 0; it < 30; ++it) {
    auto ch = random_dm_channel({2, 2, 2 + it % 2, 2}, 100 + it);
    auto in = random_input(g, ch, 1 + it % 3);
    auto t = table(ch, in);
    CHECK(close(arr(mac_region_at(ch, in, Receiver::rx1)), seen(t, {3}), 1e-12));
    CHECK(close(arr(mac_region_at(ch, in, Receiver::rx2)), seen(t, {4}), 1e-12));
    CHECK(close(arr(mac_region_at(ch, in, Receiver::fc)), seen(t, {3, 4}), 1e-12));
    const double c12 = oracle::unit(g), c21 = oracle::unit(g);
    auto expect =
        oracle::lo(oracle::lo(oracle::shift(seen(t, {3}), c21), oracle::shift(seen(t, {4}), c12)), seen(t, {3, 4}));
    CHECK(close(arr(cm_outer_at(ch, in, c12, c21)), expect, 1e-12));
    auto fc = arr(mac_region_at(ch, in, Receiver::fc)), r1 = arr(mac_region_at(ch, in, Receiver::rx1));
    for (int i = 0; i < 4; ++i) CHECK(fc[i] >= r1[i] - 1e-12);
  }
}

TEST_CASE("receiver bound examples") {
  // Y1 = X1 noiselessly, Y2 independent of everything
  std::vector<double> t(16);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) t[((a * 2 + b) * 2 + c) * 2 + d] = c == a ? 0.5 : 0.0;
  DmChannel ch({2, 2, 2, 2}, t);
  auto in = uniform_input(ch);
  CHECK(mac_region_at(ch, in, Receiver::rx1).b1 == doctest::Approx(1.0));
  CHECK(arr(mac_region_at(ch, in, Receiver::rx2)) == std::array<double, 4>{0, 0, 0, 0});
  // zero links: the full-cooperation term never binds
  auto r1 = mac_region_at(ch, in, Receiver::rx1), r2 = mac_region_at(ch, in, Receiver::rx2);
  CHECK(close(arr(cm_outer_at(ch, in, 0, 0)), arr(min(r1, r2)), 1e-12));
  CHECK(cm_outer_at(ch, in, 50, 50) == mac_region_at(ch, in, Receiver::fc));
  CHECK_THROWS_AS(cm_outer_at(ch, in, -1, 0), DomainError);
}

TEST_CASE("compression schemes match explicit sums") {
  std::mt19937_64 g(43);
  for (int it = 0; it < 30; ++it) {
    auto ch = random_dm_channel({2, 2, 2, 2}, 200 + it);
    auto in = random_input(g, ch, 1 + it % 2);
    DmTestChannels tc{random_cond(g, 2, 2 + it % 2), random_cond(g, 2, 2)};
    auto t = table(ch, in, &tc);
    const double wz12 = oracle::I(t, {3}, {5}, {4}), wz21 = oracle::I(t, {4}, {6}, {3});
    auto wz = wyner_ziv_rates(ch, in, tc);
    CHECK(wz.r12 == doctest::Approx(wz12).epsilon(1e-12));
    CHECK(wz.r21 == doctest::Approx(wz21).epsilon(1e-12));

    const double c12 = wz12 + 0.1, c21 = wz21 + 0.2;
    auto one = one_round_dm_at(ch, in, tc, c12, c21);
    REQUIRE(one);
    CHECK(close(arr(*one), oracle::lo(seen(t, {3, 6}), seen(t, {4, 5})), 1e-12));
    auto two = two_round_dm_at(ch, in, tc, c12, c21);
    REQUIRE(two);
    CHECK(close(arr(two->rx1_compresses), oracle::lo(oracle::shift(seen(t, {3}), c21), seen(t, {4, 5})), 1e-12));
    CHECK(close(arr(two->rx2_compresses), oracle::lo(seen(t, {3, 6}), oracle::shift(seen(t, {4}), c12)), 1e-12));

    // below the compression rate
    if (wz12 > 1e-6) {
      CHECK_FALSE(one_round_dm_at(ch, in, tc, wz12 - 1e-6, c21));
      CHECK_FALSE(two_round_dm_at(ch, in, tc, wz12 - 1e-6, c21));
    }
    if (wz21 > 1e-6) CHECK_FALSE(one_round_dm_at(ch, in, tc, c12, wz21 - 1e-6));
  }
}

TEST_CASE("constant and identity test channels") {
  std::mt19937_64 g(44);
  auto ch = random_dm_channel({2, 2, 2, 2}, 9);
  auto in = random_input(g, ch, 2);
  DmTestChannels none{ConditionalPmf::constant(2), ConditionalPmf::constant(2)};
  auto one = one_round_dm_at(ch, in, none, 0, 0);
  REQUIRE(one);
  auto nc = min(mac_region_at(ch, in, Receiver::rx1), mac_region_at(ch, in, Receiver::rx2));
  CHECK(close(arr(*one), arr(nc), 1e-12));
  auto two = two_round_dm_at(ch, in, none, 0, 0);
  REQUIRE(two);
  CHECK(close(arr(two->rx1_compresses), arr(nc), 1e-12));
  CHECK(close(arr(two->rx2_compresses), arr(nc), 1e-12));

  // lossless exchange once the links carry the conditional entropies
  DmTestChannels full{ConditionalPmf::identity(2), ConditionalPmf::identity(2)};
  auto j = joint_distribution(ch, in);
  const double h12 = j.entropy(axis_mask({kY1, kY2})) - j.entropy(axis_mask({kY2}));
  const double h21 = j.entropy(axis_mask({kY1, kY2})) - j.entropy(axis_mask({kY1}));
  auto lossless = one_round_dm_at(ch, in, full, h12, h21);
  REQUIRE(lossless);
  CHECK(close(arr(*lossless), arr(mac_region_at(ch, in, Receiver::fc)), 1e-12));
  CHECK_FALSE(one_round_dm_at(ch, in, full, h12 - 1e-6, h21));
}

TEST_CASE("two rounds reach the full-cooperation equal rate where one round cannot") {
  const double p = 0.1;
  auto ch = xor_pair(p);
  auto in = uniform_input(ch);
  auto t = table(ch, in);
  const double h = h2(2 * p * (1 - p));
  CHECK(oracle::H(t, {3, 4}) - oracle::H(t, {4}) == doctest::Approx(h));
  CHECK(std::abs(h - 0.680) < 5e-4);
  const double r_out = 0.5 * oracle::I(t, {1, 2}, {3, 4});
  const double half_i = 0.5 * oracle::I(t, {1, 2}, {4}, {3});
  const double c12 = h + 1e-12, c21 = 0.25;
  REQUIRE(c21 >= half_i);
  REQUIRE(c21 < h);

  auto eq = [](const BoundSet& b) { return std::min({b.b1, b.b2, b.b12 / 2, b.b012 / 2}); };
  CHECK(eq(cm_outer_at(ch, in, c12, c21)) == doctest::Approx(r_out).epsilon(1e-12));
  DmTestChannels tc{ConditionalPmf::identity(2), ConditionalPmf::constant(2)};
  auto two = two_round_dm_at(ch, in, tc, c12, c21);
  REQUIRE(two);
  CHECK(eq(two->rx1_compresses) == doctest::Approx(r_out).epsilon(1e-12));

  DmRegionOptions opt;
  opt.mode = R0Mode::zero_common;
  opt.grid.u_size = 1;
  opt.grid.simplex_points = 3;
  opt.grid.test_points = 5;
  auto one_region = dm_region(ch, DmScheme::one_round, c12, c21, opt).region;
  auto two_region = dm_region(ch, DmScheme::two_round, c12, c21, opt).region;
  CHECK(equal_rate(two_region) == doctest::Approx(r_out).epsilon(1e-9));
  CHECK(equal_rate(one_region) < r_out - 0.01);
  CHECK(region_containment(one_region, two_region).contained);
}

TEST_CASE("degraded channels") {
  std::mt19937_64 g(45);
  for (int it = 0; it < 20; ++it) {
    auto ch = DmChannel::degraded(random_cond(g, 4, 2), 2, 2, random_cond(g, 2, 2 + it % 2));
    CHECK(is_degraded(ch));
    for (int k = 0; k < 5; ++k) {
      auto in = random_input(g, ch, 1 + k % 2);
      auto r1 = arr(mac_region_at(ch, in, Receiver::rx1)), r2 = arr(mac_region_at(ch, in, Receiver::rx2));
      for (int i = 0; i < 4; ++i) CHECK(r2[i] <= r1[i] + 1e-9);
    }
  }
  auto bsc = [](double e) { return ConditionalPmf(2, 2, {1 - e, e, e, 1 - e}); };
  // Y1 = X1 ^ X2 through BSC(0.1), Y2 = Y1 through BSC(0.2)
  ConditionalPmf y1x(4, 2, {0.9, 0.1, 0.1, 0.9, 0.1, 0.9, 0.9, 0.1});
  auto ch = DmChannel::degraded(y1x, 2, 2, bsc(0.2));
  auto in = uniform_input(ch);
  CHECK(mac_region_at(ch, in, Receiver::rx2).b12 < mac_region_at(ch, in, Receiver::rx1).b12);
  auto grid = input_grid(ch, 1, 3);
  auto cap = degraded_capacity(ch, grid, 0.3, 0.7);
  CHECK(same_vertices(cap, cm_outer_region(ch, grid, 0.3, 0.0), 1e-12));
  // receiver 2 adds nothing to receiver 1, so the back link never binds
  CHECK(same_vertices(cm_outer_region(ch, grid, 0.3, 0.7), cm_outer_region(ch, grid, 0.3, 0.0), 1e-12));
  // a large c12 leaves only receiver 1
  std::vector<Point> pts;
  for (const auto& i : grid) append_bound_points(mac_region_at(ch, i, Receiver::rx1), R0Mode::full, kDefaultClip, pts);
  CHECK(same_vertices(degraded_capacity(ch, grid, 20.0, 0.0), RateRegion::hull(3, pts), 1e-12));

  // identity degradation with no link is the plain compound MAC
  auto same = DmChannel::degraded(y1x, 2, 2, ConditionalPmf::identity(2));
  pts.clear();
  for (const auto& i : grid) {
    append_bound_points(min(mac_region_at(same, i, Receiver::rx1), mac_region_at(same, i, Receiver::rx2)),
                        R0Mode::full, kDefaultClip, pts);
  }
  CHECK(same_vertices(degraded_capacity(same, grid, 0.0, 0.0), RateRegion::hull(3, pts), 1e-12));

  CHECK_FALSE(is_degraded(xor_pair(0.1)));
  CHECK_THROWS_AS(degraded_capacity(xor_pair(0.1), grid, 0.3, 0.0), PreconditionError);
}

TEST_CASE("grid union equals an explicit enumeration") {
  auto ch = random_dm_channel({2, 2, 2, 2}, 77);
  DmRegionOptions opt;
  opt.grid.simplex_points = 5;
  opt.grid.u_size = 2;
  auto region = dm_region(ch, DmScheme::no_coop, 0, 0, opt).region;
  std::vector<Point> pts;
  for (int u = 0; u <= 4; ++u)
    for (int a0 = 0; a0 <= 4; ++a0)
      for (int a1 = 0; a1 <= 4; ++a1)
        for (int b0 = 0; b0 <= 4; ++b0)
          for (int b1 = 0; b1 <= 4; ++b1) {
            DmInputDistribution in{Pmf({u / 4.0, 1 - u / 4.0}),
                                   ConditionalPmf(2, 2, {a0 / 4.0, 1 - a0 / 4.0, a1 / 4.0, 1 - a1 / 4.0}),
                                   ConditionalPmf(2, 2, {b0 / 4.0, 1 - b0 / 4.0, b1 / 4.0, 1 - b1 / 4.0})};
            auto t = table(ch, in);
            auto b = oracle::lo(seen(t, {3}), seen(t, {4}));
            append_bound_points({b[0], b[1], b[2], b[3]}, R0Mode::full, kDefaultClip, pts);
          }
  CHECK(same_vertices(region, RateRegion::hull(3, pts), 1e-12));
}

TEST_CASE("scheme regions are nested") {
  auto ch = random_dm_channel({2, 2, 2, 2}, 78);
  DmRegionOptions opt;
  opt.grid.simplex_points = 3;
  opt.grid.test_points = 3;
  opt.grid.u_size = 1;
  for (auto [c12, c21] : {std::pair{0.0, 0.0}, {0.2, 0.05}, {0.5, 0.5}}) {
    auto nc = dm_region(ch, DmScheme::no_coop, c12, c21, opt).region;
    auto one = dm_region(ch, DmScheme::one_round, c12, c21, opt);
    auto two = dm_region(ch, DmScheme::two_round, c12, c21, opt);
    auto out = dm_region(ch, DmScheme::outer, c12, c21, opt).region;
    CHECK(one.evaluated == 9 * 81);
    CHECK(one.feasible >= 9);
    CHECK(region_containment(nc, one.region).contained);
    CHECK(region_containment(one.region, two.region).contained);
    CHECK(region_containment(two.region, out).contained);
  }
  opt.max_evaluations = 10;
  CHECK_THROWS_AS(dm_region(ch, DmScheme::one_round, 0.1, 0.1, opt), UsageError);
}

TEST_CASE("alphabets and grids") {
  CHECK_THROWS_AS(random_dm_channel({2, 2, 5, 2}, 1), UsageError);
  CHECK_NOTHROW(random_dm_channel({2, 2, 5, 2}, 1, 5));
  CHECK_THROWS_AS(DmChannel({2, 2, 2, 2}, std::vector<double>(15, 0.25)), UsageError);
  CHECK_THROWS_AS(DmChannel({2, 2, 2, 2}, std::vector<double>(16, 0.3)), ValidationError);
  auto a = random_dm_channel({2, 3, 2, 4}, 12), b = random_dm_channel({2, 3, 2, 4}, 12);
  CHECK(a.transition() == b.transition());
  CHECK(a.transition() != random_dm_channel({2, 3, 2, 4}, 13).transition());
  for (std::size_t x = 0; x < 6; ++x) {
    double s = 0;
    for (std::size_t y = 0; y < 8; ++y) s += a.transition()[x * 8 + y];
    CHECK(s == doctest::Approx(1.0));
  }
  CHECK(simplex_grid(3, 4).size() == 10);
  CHECK(simplex_grid(2, 5).size() == 5);
  CHECK(simplex_grid(1, 9).size() == 1);
  for (const auto& v : simplex_grid(4, 3)) {
    double s = 0;
    for (double x : v) s += x;
    CHECK(s == doctest::Approx(1.0));
  }
  auto ch = random_dm_channel({2, 2, 2, 2}, 3);
  CHECK(input_grid(ch, 2, 3).size() == 3 * 9 * 9);
  CHECK_THROWS_AS(input_grid(ch, 0, 3), UsageError);
  CHECK_THROWS_AS(test_channel_grid(ch, {4, 2}, 3), UsageError);
  CHECK(test_channel_grid(ch, {3, 1}, 2).size() == 9);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "confmac/errors.hpp"
#include "confmac/gap.hpp"
#include "oracles.hpp"

using namespace confmac;

namespace {

// The broadcast instance as a two-user channel with a silent second user.
GaussianCmChannel as_channel(const BroadcastInstance& in) { return {in.pa, in.pb, 0.0, 0.0, 1.0, 0.0, in.c12, in.c21}; }

GaussianCmChannel as_channel(const SymmetricInstance& in) { return {in.a, in.b, in.b, in.a, in.p, in.p, in.c, in.c}; }

struct Pair {
  std::array<double, 4> outer, one_round;
};

// outer and one-round bounds from the log-det oracle at the full private split
Pair views(const GaussianCmChannel& ch) {
  const auto q1 = oracle::wz_noise(ch, ch.p1, ch.p2, 1, ch.c12);
  const auto q2 = oracle::wz_noise(ch, ch.p1, ch.p2, 2, ch.c21);
  const auto v1 = oracle::as_array(oracle::view_rates(ch, ch.p1, ch.p2, 1, INFINITY));
  const auto v2 = oracle::as_array(oracle::view_rates(ch, ch.p1, ch.p2, 2, INFINITY));
  const auto fc = oracle::as_array(oracle::view_rates(ch, ch.p1, ch.p2, 1, 0.0));
  const auto w1 = oracle::as_array(oracle::view_rates(ch, ch.p1, ch.p2, 1, q2));
  const auto w2 = oracle::as_array(oracle::view_rates(ch, ch.p1, ch.p2, 2, q1));
  return {oracle::lo(oracle::lo(oracle::shift(v1, ch.c21), oracle::shift(v2, ch.c12)), fc), oracle::lo(w1, w2)};
}

}  // namespace

TEST_CASE("broadcast example") {
  BroadcastInstance in{10, 10, 0.5, 0.5};
  auto r = broadcast_gap(in);
  CHECK(r.outer == doctest::Approx(oracle::cap(20)));
  CHECK(std::abs(r.outer - 2.1962) < 5e-5);
  CHECK(r.achievable == doctest::Approx(oracle::cap(10 + 10 / (1 + 21.0 / 11.0))));
  CHECK(std::abs(r.gap - 0.2703) < 5e-4);
  CHECK(r.case_label == "case1");
  CHECK(r.cap == doctest::Approx(0.2925).epsilon(1e-3));
  CHECK(r.pass);
}

TEST_CASE("broadcast bounds match the two-user oracle") {
  std::mt19937_64 g(61);
  for (const auto& in : broadcast_draws(500, 61, false)) {
    auto r = broadcast_gap(in);
    auto v = views(as_channel(in));
    CHECK(r.outer == doctest::Approx(v.outer[0]).epsilon(1e-10));
    CHECK(r.achievable == doctest::Approx(v.one_round[0]).epsilon(1e-10));
    CHECK(r.gap == doctest::Approx(r.outer - r.achievable));
  }
  // the library's own Gaussian evaluator agrees too
  auto in = BroadcastInstance{3.0, 0.7, 0.4, 1.1};
  auto ch = as_channel(in);
  auto or1 = one_round_at(ch, full_private(ch), sigma_min(ch)).b1;
  CHECK(broadcast_gap(in).achievable == doctest::Approx(or1).epsilon(1e-12));
}

TEST_CASE("symmetric bounds match the two-user oracle") {
  for (const auto& in : symmetric_draws(500, 62)) {
    auto s = symmetric_gap(in);
    auto v = views(as_channel(in));
    CHECK(s.r1.outer == doctest::Approx(v.outer[0]).epsilon(1e-10));
    CHECK(s.r2.outer == doctest::Approx(v.outer[1]).epsilon(1e-10));
    CHECK(s.r1.achievable == doctest::Approx(v.one_round[0]).epsilon(1e-10));
    CHECK(s.r2.achievable == doctest::Approx(v.one_round[1]).epsilon(1e-10));
    CHECK(s.sum.outer == doctest::Approx(v.outer[2]).epsilon(1e-10));
    CHECK(s.sum.achievable == doctest::Approx(v.one_round[2]).epsilon(1e-10));
    CHECK(s.sum_half.gap == s.sum.gap);
    CHECK(s.sum_half.cap == 0.5);
  }
}

TEST_CASE("broadcast audit") {
  auto draws = broadcast_draws(10000, 2024, false);
  std::vector<GapReport> reports;
  std::set<std::string> labels;
  for (const auto& in : draws) {
    reports.push_back(broadcast_gap(in));
    labels.insert(reports.back().case_label);
  }
  auto s = summarize(reports);
  CHECK(s.samples == 10000);
  CHECK(s.failures == 0);
  CHECK(s.max_gap <= 0.5 + kGapTol);
  CHECK(labels.count("none") == 0);
  CHECK(labels.size() == 3);

  std::vector<GapReport> equal;
  for (const auto& in : broadcast_draws(10000, 2024, true)) equal.push_back(broadcast_gap(in));
  auto e = summarize(equal);
  CHECK(e.failures == 0);
  CHECK(e.max_gap <= 0.2925 + kGapTol);
  CHECK(e.max_gap > 0.25);
}

TEST_CASE("symmetric audit") {
  std::vector<GapReport> per, sum, half;
  for (const auto& in : symmetric_draws(10000, 2024)) {
    auto s = symmetric_gap(in);
    const double beta_cap = 0.5 * std::log2(1.0 + std::max(in.a, in.b) / std::min(in.a, in.b));
    CHECK(s.r1.cap == doctest::Approx(beta_cap));
    per.push_back(s.r1);
    per.push_back(s.r2);
    sum.push_back(s.sum);
    half.push_back(s.sum_half);
  }
  CHECK(summarize(per).failures == 0);
  CHECK(summarize(sum).failures == 0);
  CHECK(summarize(half).failures == 0);
  CHECK(summarize(half).max_gap <= 0.5 + kGapTol);

  // equal gains carry the reduced cap
  std::mt19937_64 g(63);
  for (int i = 0; i < 2000; ++i) {
    const double a = oracle::log_uniform(g, 1e-2, 1e2);
    SymmetricInstance in{a, a, oracle::log_uniform(g, 1e-2, 1e4), 8 * oracle::unit(g)};
    auto s = symmetric_gap(in);
    CHECK(s.r1.cap == doctest::Approx(symmetric_cap()));
    CHECK(s.pass());
  }
}

TEST_CASE("draws are reproducible per index") {
  auto a = broadcast_draws(100, 7, false), b = broadcast_draws(10, 7, false);
  for (int i = 0; i < 10; ++i) {
    CHECK(a[i].pa == b[i].pa);
    CHECK(a[i].c21 == b[i].c21);
  }
  CHECK(broadcast_draws(5, 8, false)[0].pa != a[0].pa);
  for (const auto& in : a) {
    CHECK(in.pa >= 1e-2);
    CHECK(in.pa <= 1e4);
    CHECK(in.c12 <= 8.0);
  }
  for (const auto& in : symmetric_draws(100, 9)) {
    CHECK(in.a >= 1e-2);
    CHECK(in.a <= 1e2);
    CHECK(in.p <= 1e4);
  }
}

TEST_CASE("no links means no gap") {
  std::mt19937_64 g(64);
  for (int i = 0; i < 200; ++i) {
    BroadcastInstance in{oracle::log_uniform(g, 1e-2, 1e4), oracle::log_uniform(g, 1e-2, 1e4), 0, 0};
    CHECK(std::abs(broadcast_gap(in).gap) < 1e-12);
  }
}

TEST_CASE("invalid instances") {
  CHECK_THROWS_AS(broadcast_gap({-1, 1, 0, 0}), DomainError);
  CHECK_THROWS_AS(broadcast_gap({1, 1, std::nan(""), 0}), DomainError);
  CHECK_THROWS_AS(symmetric_gap({0, 0, 1, 0}), DomainError);
  CHECK_NOTHROW(symmetric_gap({0, 1, 1, 0}));
}

TEST_CASE("report and summary") {
  auto r = make_report("R1", 2.0, 1.4, 0.5, "x");
  CHECK(r.gap == doctest::Approx(0.6));
  CHECK_FALSE(r.pass);
  CHECK(make_report("R1", 2.0, 1.5 - 5e-10, 0.5, "x").pass);
  std::vector<GapReport> v{r, make_report("R1", 1.0, 0.9, 0.5, "x")};
  auto s = summarize(v);
  CHECK(s.failures == 1);
  CHECK(s.max_gap == doctest::Approx(0.6));
  CHECK(s.worst_margin == doctest::Approx(0.1));
  CHECK(summarize({}).samples == 0);
}

TEST_CASE("multiplexing gain") {
  GaussianCmChannel tmpl{0.8, 0.1, 0.1, 0.8, 1, 1, 0, 0};
  const std::vector<double> ps = {1e2, 1e3, 1e4, 1e5, 1e6};
  auto rows = multiplexing_sweep(tmpl, CapacityLaw::scaling(0.5), ps);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gain >= rows[i - 1].gain);
  CHECK(rows.back().gain >= 1.9);
  CHECK(rows.back().c == doctest::Approx(0.75 * std::log2(1e6)));
  for (const auto& row : rows) CHECK(row.sum_rate <= row.outer_sum + 1e-9);
  auto flat = multiplexing_sweep(tmpl, CapacityLaw::constant(1.0), ps);
  CHECK(flat.back().gain <= 1.1);
  CHECK(flat.back().c == 1.0);

  // the sum rate is the one-round bound set at full power
  auto ch = tmpl;
  ch.p1 = ch.p2 = 1e3;
  ch.c12 = ch.c21 = 0.75 * std::log2(1e3);
  CHECK(rows[1].sum_rate == doctest::Approx(max_private_sum(one_round_at(ch, full_private(ch), sigma_min(ch)))));

  auto one = multiplexing_sweep(tmpl, CapacityLaw::scaling(0.5), std::vector<double>{1.0});
  CHECK(std::isnan(one[0].gain));
  GaussianCmChannel skew{1.0, 0.5, 0.2, 1.0, 1, 1, 0, 0};
  CHECK_THROWS_AS(multiplexing_sweep(skew, CapacityLaw::constant(1.0), ps), UsageError);
  CHECK_THROWS_AS(CapacityLaw::scaling(0.0), UsageError);
  CHECK(CapacityLaw::scaling(0.5).at(0.5) == 0.0);
}

TEST_CASE("private sum of a bound set") {
  CHECK(max_private_sum({1, 1, 1.5, 1.7}) == 1.5);
  CHECK(max_private_sum({1, 0.2, 1.5, 1.7}) == doctest::Approx(1.2));
  CHECK(max_private_sum({1, 1, 1.5, 1.1}) == 1.1);
}

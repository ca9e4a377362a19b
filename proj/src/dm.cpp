#include "confmac/dm.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "confmac/errors.hpp"

namespace confmac {

namespace {

void check_rows(std::size_t rows, std::size_t cols, const std::vector<double>& p, const char* what) {
  if (rows == 0 || cols == 0 || p.size() != rows * cols) {
    throw UsageError(std::string(what) + ": shape does not match data size");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double v = p[r * cols + c];
      if (!std::isfinite(v) || v < 0.0) throw ValidationError(std::string(what) + ": negative or non-finite entry");
      s += v;
    }
    if (std::abs(s - 1.0) > kPmfTol * static_cast<double>(std::max<std::size_t>(cols, 1))) {
      throw ValidationError(std::string(what) + ": row " + std::to_string(r) + " sums to " + std::to_string(s));
    }
  }
}

}  // namespace

ConditionalPmf::ConditionalPmf(std::size_t r, std::size_t c, std::vector<double> v) : rows(r), cols(c), p(std::move(v)) {
  check_rows(rows, cols, p, "ConditionalPmf");
}

ConditionalPmf ConditionalPmf::identity(std::size_t n) {
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
  return {n, n, std::move(p)};
}

ConditionalPmf ConditionalPmf::constant(std::size_t rows, std::size_t cols) {
  std::vector<double> p(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) p[i * cols] = 1.0;
  return {rows, cols, std::move(p)};
}

DmChannel::DmChannel(std::array<std::size_t, 4> sizes, std::vector<double> transition, std::size_t max_alphabet)
    : n_(sizes), t_(std::move(transition)) {
  for (auto s : n_) {
    if (s == 0) throw UsageError("DmChannel: empty alphabet");
    if (s > max_alphabet) {
      throw UsageError("DmChannel: alphabet size " + std::to_string(s) + " exceeds the cap of " +
                       std::to_string(max_alphabet));
    }
  }
  check_rows(n_[0] * n_[1], n_[2] * n_[3], t_, "DmChannel transition");
}

DmChannel DmChannel::degraded(const ConditionalPmf& y1_given_x, std::size_t x1, std::size_t x2,
                              const ConditionalPmf& y2_given_y1) {
  if (y1_given_x.rows != x1 * x2 || y2_given_y1.rows != y1_given_x.cols) {
    throw UsageError("DmChannel::degraded: incompatible shapes");
  }
  const std::size_t ny1 = y1_given_x.cols, ny2 = y2_given_y1.cols;
  std::vector<double> t(x1 * x2 * ny1 * ny2);
  for (std::size_t x = 0; x < x1 * x2; ++x)
    for (std::size_t a = 0; a < ny1; ++a)
      for (std::size_t b = 0; b < ny2; ++b) t[(x * ny1 + a) * ny2 + b] = y1_given_x(x, a) * y2_given_y1(a, b);
  return DmChannel({x1, x2, ny1, ny2}, std::move(t), std::max({x1, x2, ny1, ny2, kDefaultMaxAlphabet}));
}

void DmInputDistribution::validate() const {
  if (px1_given_u.rows != pu.size() || px2_given_u.rows != pu.size()) {
    throw UsageError("DmInputDistribution: conditional rows must match |U|");
  }
}

JointPmf joint_distribution(const DmChannel& ch, const DmInputDistribution& in,
                            const std::optional<DmTestChannels>& test) {
  in.validate();
  if (in.px1_given_u.cols != ch.x1() || in.px2_given_u.cols != ch.x2()) {
    throw UsageError("joint_distribution: input alphabets do not match the channel");
  }
  const std::size_t nu = in.pu.size();
  std::size_t h1 = 1, h2 = 1;
  if (test) {
    if (test->q1.rows != ch.y1() || test->q2.rows != ch.y2()) {
      throw UsageError("joint_distribution: test channel rows must match output alphabets");
    }
    if (test->q1.cols > ch.y1() + 1 || test->q2.cols > ch.y2() + 1) {
      throw UsageError("joint_distribution: |Yhat_i| must not exceed |Y_i| + 1");
    }
    h1 = test->q1.cols;
    h2 = test->q2.cols;
  }
  std::vector<std::size_t> shape{nu, ch.x1(), ch.x2(), ch.y1(), ch.y2()};
  if (test) {
    shape.push_back(h1);
    shape.push_back(h2);
  }
  std::vector<double> p;
  p.reserve(nu * ch.x1() * ch.x2() * ch.y1() * ch.y2() * h1 * h2);
  for (std::size_t u = 0; u < nu; ++u)
    for (std::size_t a = 0; a < ch.x1(); ++a)
      for (std::size_t b = 0; b < ch.x2(); ++b) {
        const double px = in.pu[u] * in.px1_given_u(u, a) * in.px2_given_u(u, b);
        for (std::size_t c = 0; c < ch.y1(); ++c)
          for (std::size_t d = 0; d < ch.y2(); ++d) {
            const double py = px * ch(a, b, c, d);
            if (!test) {
              p.push_back(py);
              continue;
            }
            for (std::size_t e = 0; e < h1; ++e)
              for (std::size_t f = 0; f < h2; ++f) p.push_back(py * test->q1(c, e) * test->q2(d, f));
          }
      }
  return JointPmf(std::move(shape), std::move(p));
}

namespace {

constexpr std::uint32_t bit(std::size_t a) { return 1u << a; }
constexpr std::uint32_t kMU = bit(kU), kMX1 = bit(kX1), kMX2 = bit(kX2);

// Bounds seen by a decoder that observes the outputs in obs.
BoundSet observe(InfoCache& ic, std::uint32_t obs) {
  return {ic.mi(kMX1, obs, kMX2 | kMU), ic.mi(kMX2, obs, kMX1 | kMU), ic.mi(kMX1 | kMX2, obs, kMU),
          ic.mi(kMX1 | kMX2, obs)};
}

std::uint32_t obs_mask(Receiver rx) {
  switch (rx) {
    case Receiver::rx1: return bit(kY1);
    case Receiver::rx2: return bit(kY2);
    case Receiver::fc: return bit(kY1) | bit(kY2);
  }
  return 0;
}

void check_capacity(double c12, double c21) {
  if (!(std::isfinite(c12) && c12 >= 0 && std::isfinite(c21) && c21 >= 0)) {
    throw DomainError("conferencing capacities must be finite and >= 0");
  }
}

}  // namespace

BoundSet mac_region_at(const DmChannel& ch, const DmInputDistribution& in, Receiver rx) {
  auto j = joint_distribution(ch, in);
  InfoCache ic(j);
  return observe(ic, obs_mask(rx));
}

BoundSet cm_outer_at(const DmChannel& ch, const DmInputDistribution& in, double c12, double c21) {
  check_capacity(c12, c21);
  auto j = joint_distribution(ch, in);
  InfoCache ic(j);
  return min(min(observe(ic, bit(kY1)).shifted(c21), observe(ic, bit(kY2)).shifted(c12)),
             observe(ic, bit(kY1) | bit(kY2)));
}

WynerZivRates wyner_ziv_rates(const DmChannel& ch, const DmInputDistribution& in, const DmTestChannels& test) {
  auto j = joint_distribution(ch, in, test);
  InfoCache ic(j);
  return {ic.mi(bit(kY1), bit(kYhat1), bit(kY2)), ic.mi(bit(kY2), bit(kYhat2), bit(kY1))};
}

std::optional<BoundSet> one_round_dm_at(const DmChannel& ch, const DmInputDistribution& in,
                                        const DmTestChannels& test, double c12, double c21) {
  check_capacity(c12, c21);
  auto j = joint_distribution(ch, in, test);
  InfoCache ic(j);
  if (ic.mi(bit(kY1), bit(kYhat1), bit(kY2)) > c12 + kFeasibilityTol) return std::nullopt;
  if (ic.mi(bit(kY2), bit(kYhat2), bit(kY1)) > c21 + kFeasibilityTol) return std::nullopt;
  return min(observe(ic, bit(kY1) | bit(kYhat2)), observe(ic, bit(kY2) | bit(kYhat1)));
}

std::optional<TwoRoundBounds> two_round_dm_at(const DmChannel& ch, const DmInputDistribution& in,
                                              const DmTestChannels& test, double c12, double c21) {
  check_capacity(c12, c21);
  auto j = joint_distribution(ch, in, test);
  InfoCache ic(j);
  if (ic.mi(bit(kY1), bit(kYhat1), bit(kY2)) > c12 + kFeasibilityTol) return std::nullopt;
  if (ic.mi(bit(kY2), bit(kYhat2), bit(kY1)) > c21 + kFeasibilityTol) return std::nullopt;
  TwoRoundBounds t;
  t.rx1_compresses = min(observe(ic, bit(kY1)).shifted(c21), observe(ic, bit(kY2) | bit(kYhat1)));
  t.rx2_compresses = min(observe(ic, bit(kY1) | bit(kYhat2)), observe(ic, bit(kY2)).shifted(c12));
  return t;
}

bool is_degraded(const DmChannel& ch, double tol) {
  const std::size_t nx = ch.x1() * ch.x2();
  for (std::size_t c = 0; c < ch.y1(); ++c) {
    std::vector<double> ref;
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t a = x / ch.x2(), b = x % ch.x2();
      double py1 = 0.0;
      for (std::size_t d = 0; d < ch.y2(); ++d) py1 += ch(a, b, c, d);
      if (py1 <= 0.0) continue;
      std::vector<double> cond(ch.y2());
      for (std::size_t d = 0; d < ch.y2(); ++d) cond[d] = ch(a, b, c, d) / py1;
      if (ref.empty()) {
        ref = cond;
        continue;
      }
      for (std::size_t d = 0; d < ch.y2(); ++d)
        if (std::abs(cond[d] - ref[d]) > tol) return false;
    }
  }
  return true;
}

std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t points) {
  if (k == 0) throw UsageError("simplex_grid: empty alphabet");
  if (points == 0) throw UsageError("simplex_grid: need at least one point");
  if (k == 1) return {{1.0}};
  if (points == 1) return {std::vector<double>(k, 1.0 / static_cast<double>(k))};
  const std::size_t n = points - 1;
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> c(k, 0);
  // enumerate compositions of n into k parts in lexicographic order
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      c[i] = left;
      std::vector<double> v(k);
      for (std::size_t j = 0; j < k; ++j) v[j] = static_cast<double>(c[j]) / static_cast<double>(n);
      out.push_back(std::move(v));
      return;
    }
    for (std::size_t t = 0; t <= left; ++t) {
      c[i] = t;
      rec(i + 1, left - t);
    }
  };
  rec(0, n);
  return out;
}

namespace {

// All row-stochastic matrices whose rows are drawn independently from the grid.
std::vector<ConditionalPmf> matrix_grid(std::size_t rows, std::size_t cols, std::size_t points) {
  auto g = simplex_grid(cols, points);
  std::vector<ConditionalPmf> out;
  std::vector<std::size_t> idx(rows, 0);
  while (true) {
    std::vector<double> p;
    p.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) p.insert(p.end(), g[idx[r]].begin(), g[idx[r]].end());
    out.emplace_back(rows, cols, std::move(p));
    std::size_t r = rows;
    while (r > 0) {
      --r;
      if (++idx[r] < g.size()) break;
      idx[r] = 0;
      if (r == 0) return out;
    }
    if (rows == 0) return out;
  }
}

}  // namespace

std::vector<DmInputDistribution> input_grid(const DmChannel& ch, std::size_t u_size, std::size_t points) {
  if (u_size == 0) throw UsageError("input_grid: |U| must be >= 1");
  auto pus = simplex_grid(u_size, points);
  auto m1 = matrix_grid(u_size, ch.x1(), points);
  auto m2 = matrix_grid(u_size, ch.x2(), points);
  const double total = static_cast<double>(pus.size()) * static_cast<double>(m1.size()) * static_cast<double>(m2.size());
  if (total > 5e6) throw UsageError("input_grid: " + std::to_string(total) + " distributions, reduce simplex_points");
  std::vector<DmInputDistribution> out;
  out.reserve(static_cast<std::size_t>(total));
  for (const auto& pu : pus) {
    Pmf p(pu);
    for (const auto& a : m1)
      for (const auto& b : m2) out.push_back({p, a, b});
  }
  return out;
}

std::vector<DmTestChannels> test_channel_grid(const DmChannel& ch, std::array<std::size_t, 2> yhat_sizes,
                                              std::size_t points) {
  if (yhat_sizes[0] == 0 || yhat_sizes[1] == 0) throw UsageError("test_channel_grid: empty Yhat alphabet");
  if (yhat_sizes[0] > ch.y1() + 1 || yhat_sizes[1] > ch.y2() + 1) {
    throw UsageError("test_channel_grid: |Yhat_i| must not exceed |Y_i| + 1");
  }
  auto q1 = matrix_grid(ch.y1(), yhat_sizes[0], points);
  auto q2 = matrix_grid(ch.y2(), yhat_sizes[1], points);
  std::vector<DmTestChannels> out;
  out.reserve(q1.size() * q2.size());
  for (const auto& a : q1)
    for (const auto& b : q2) out.push_back({a, b});
  return out;
}

RateRegion cm_outer_region(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12,
                           double c21, R0Mode mode, double clip) {
  if (inputs.empty()) throw UsageError("cm_outer_region: empty input grid");
  std::vector<Point> pts;
  for (const auto& in : inputs) append_bound_points(cm_outer_at(ch, in, c12, c21), mode, clip, pts);
  auto r = RateRegion::hull(mode == R0Mode::full ? 3 : 2, std::move(pts));
  r.set_clip(clip);
  return r;
}

RateRegion degraded_capacity(const DmChannel& ch, const std::vector<DmInputDistribution>& inputs, double c12,
                             double c21, R0Mode mode, double clip) {
  if (!is_degraded(ch)) throw PreconditionError("degraded_capacity: channel is not physically degraded");
  check_capacity(c12, c21);
  return cm_outer_region(ch, inputs, c12, 0.0, mode, clip);
}

DmRegionResult dm_region(const DmChannel& ch, DmScheme scheme, double c12, double c21, const DmRegionOptions& opt) {
  check_capacity(c12, c21);
  const auto inputs = input_grid(ch, opt.grid.u_size, opt.grid.simplex_points);
  std::vector<DmTestChannels> tests;
  if (scheme == DmScheme::one_round || scheme == DmScheme::two_round) {
    tests = test_channel_grid(ch, opt.yhat_sizes, opt.grid.test_points);
    const double n = static_cast<double>(inputs.size()) * static_cast<double>(tests.size());
    if (n > static_cast<double>(opt.max_evaluations)) {
      throw UsageError("dm_region: " + std::to_string(static_cast<long long>(n)) +
                       " evaluations exceed the limit of " + std::to_string(opt.max_evaluations));
    }
  }
  DmRegionResult res;
  std::vector<Point> pts;
  for (const auto& in : inputs) {
    switch (scheme) {
      case DmScheme::no_coop: {
        auto j = joint_distribution(ch, in);
        InfoCache ic(j);
        append_bound_points(min(observe(ic, bit(kY1)), observe(ic, bit(kY2))), opt.mode, opt.clip, pts);
        ++res.evaluated;
        ++res.feasible;
        break;
      }
      case DmScheme::outer:
        append_bound_points(cm_outer_at(ch, in, c12, c21), opt.mode, opt.clip, pts);
        ++res.evaluated;
        ++res.feasible;
        break;
      case DmScheme::one_round:
        for (const auto& t : tests) {
          ++res.evaluated;
          if (auto b = one_round_dm_at(ch, in, t, c12, c21)) {
            ++res.feasible;
            append_bound_points(*b, opt.mode, opt.clip, pts);
          }
        }
        break;
      case DmScheme::two_round:
        for (const auto& t : tests) {
          ++res.evaluated;
          if (auto b = two_round_dm_at(ch, in, t, c12, c21)) {
            ++res.feasible;
            append_bound_points(b->rx1_compresses, opt.mode, opt.clip, pts);
            append_bound_points(b->rx2_compresses, opt.mode, opt.clip, pts);
          }
        }
        break;
    }
  }
  // constant test channels are always feasible, so pts is never empty for a nonempty grid
  res.region = RateRegion::hull(opt.mode == R0Mode::full ? 3 : 2, std::move(pts));
  res.region.set_clip(opt.clip);
  return res;
}

DmChannel random_dm_channel(std::array<std::size_t, 4> sizes, std::uint64_t seed, std::size_t max_alphabet) {
  for (auto n : sizes) {
    if (n == 0 || n > max_alphabet) {
      throw UsageError("random_dm_channel: alphabet sizes must lie in 1.." + std::to_string(max_alphabet));
    }
  }
  std::mt19937_64 g(seed);
  const std::size_t rows = sizes[0] * sizes[1], cols = sizes[2] * sizes[3];
  std::vector<double> t(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    // exponential spacings give a uniform point on the simplex
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double u = (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
      t[r * cols + c] = -std::log(u);
      total += t[r * cols + c];
    }
    for (std::size_t c = 0; c < cols; ++c) t[r * cols + c] /= total;
  }
  return DmChannel(sizes, std::move(t), max_alphabet);
}

}  // namespace confmac

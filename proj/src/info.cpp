#include "confmac/info.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "confmac/errors.hpp"

namespace confmac {

double capacity_fn(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("capacity_fn: argument must be finite and >= 0, got " + std::to_string(x));
  }
  return 0.5 * std::log2(1.0 + x);
}

namespace {

void check_pmf(std::span<const double> p, const char* what) {
  if (p.empty()) throw ValidationError(std::string(what) + ": empty pmf");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(std::string(what) + ": entries must be finite and >= 0");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kPmfTol * std::max<double>(1.0, static_cast<double>(p.size()))) {
    throw ValidationError(std::string(what) + ": entries sum to " + std::to_string(total));
  }
}

double plogp_sum(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace

Pmf::Pmf(std::vector<double> p) : p_(std::move(p)) { check_pmf(p_, "Pmf"); }

double entropy(const Pmf& p) { return std::max(0.0, plogp_sum(p.values())); }

JointPmf::JointPmf(std::vector<std::size_t> shape, std::vector<double> p)
    : shape_(std::move(shape)), p_(std::move(p)) {
  if (shape_.empty() || shape_.size() > kMaxAxes) {
    throw UsageError("JointPmf: axis count must be in [1, " + std::to_string(kMaxAxes) + "]");
  }
  std::size_t n = 1;
  for (auto s : shape_) {
    if (s == 0) throw UsageError("JointPmf: zero-sized axis");
    n *= s;
  }
  if (n != p_.size()) throw UsageError("JointPmf: shape does not match data size");
  check_pmf(p_, "JointPmf");
}

double JointPmf::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw UsageError("JointPmf::at: wrong index rank");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (index[k] >= shape_[k]) throw UsageError("JointPmf::at: index out of range");
    flat = flat * shape_[k] + index[k];
  }
  return p_[flat];
}

namespace {

// Sums p over the axes not in mask; result is row-major over kept axes in ascending order.
std::vector<double> marginalize(std::span<const std::size_t> shape, std::span<const double> p,
                                std::uint32_t mask) {
  const std::size_t n = shape.size();
  std::vector<std::size_t> out_stride(n, 0);
  std::size_t out_size = 1;
  for (std::size_t k = n; k-- > 0;) {
    if (mask & (1u << k)) {
      out_stride[k] = out_size;
      out_size *= shape[k];
    }
  }
  std::vector<double> out(out_size, 0.0);
  std::vector<std::size_t> idx(n, 0);
  std::size_t o = 0;
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    out[o] += p[flat];
    for (std::size_t k = n; k-- > 0;) {
      ++idx[k];
      o += out_stride[k];
      if (idx[k] < shape[k]) break;
      o -= out_stride[k] * idx[k];
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace

Pmf JointPmf::marginal(std::span<const std::size_t> keep) const {
  std::uint32_t mask = 0;
  for (auto k : keep) {
    if (k >= shape_.size()) throw UsageError("JointPmf::marginal: axis out of range");
    mask |= 1u << k;
  }
  auto m = marginalize(shape_, p_, mask);
  double total = std::accumulate(m.begin(), m.end(), 0.0);
  for (auto& v : m) v /= total;
  return Pmf(std::move(m));
}

double JointPmf::entropy(std::uint32_t mask) const {
  if (mask == 0) return 0.0;
  return std::max(0.0, plogp_sum(marginalize(shape_, p_, mask)));
}

std::uint32_t axis_mask(const Axes& axes) {
  std::uint32_t mask = 0;
  for (auto a : axes) {
    if (a >= JointPmf::kMaxAxes) throw UsageError("axis index out of range");
    if (mask & (1u << a)) throw UsageError("duplicate axis in group");
    mask |= 1u << a;
  }
  return mask;
}

namespace {

double mi_from(auto&& h, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  if ((a & b) || (a & c) || (b & c)) throw UsageError("mutual_information: axis groups overlap");
  double v = h(a | c) + h(b | c) - h(a | b | c) - h(c);
  if (v < 0.0) {
    // numerical noise only; a real negative value would indicate a bug upstream
    v = v > -kMiSlack ? 0.0 : v;
  }
  return v;
}

}  // namespace

double mutual_information(const JointPmf& joint, const Axes& a, const Axes& b, const Axes& cond) {
  std::uint32_t ma = axis_mask(a), mb = axis_mask(b), mc = axis_mask(cond);
  std::uint32_t all = (1u << joint.axes()) - 1u;
  if ((ma | mb | mc) & ~all) throw UsageError("mutual_information: axis beyond joint rank");
  return mi_from([&](std::uint32_t m) { return joint.entropy(m); }, ma, mb, mc);
}

InfoCache::InfoCache(const JointPmf& joint)
    : joint_(joint), h_(std::size_t{1} << joint.axes(), 0.0), known_(h_.size(), false) {}

double InfoCache::entropy(std::uint32_t mask) {
  if (mask >= h_.size()) throw UsageError("InfoCache: axis beyond joint rank");
  if (!known_[mask]) {
    h_[mask] = joint_.entropy(mask);
    known_[mask] = true;
  }
  return h_[mask];
}

double InfoCache::mi(std::uint32_t a, std::uint32_t b, std::uint32_t cond) {
  return mi_from([&](std::uint32_t m) { return entropy(m); }, a, b, cond);
}

}  // namespace confmac

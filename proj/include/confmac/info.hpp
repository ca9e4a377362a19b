#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace confmac {

inline constexpr double kPmfTol = 1e-12;
inline constexpr double kMiSlack = 1e-10;

// 1/2 log2(1 + x)
double capacity_fn(double x);

class Pmf {
 public:
  Pmf() = default;
  explicit Pmf(std::vector<double> p);
  Pmf(std::initializer_list<double> p) : Pmf(std::vector<double>(p)) {}

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

double entropy(const Pmf& p);

// Dense pmf over a product of finite alphabets, row-major (last axis fastest).
class JointPmf {
 public:
  static constexpr std::size_t kMaxAxes = 8;

  JointPmf() = default;
  JointPmf(std::vector<std::size_t> shape, std::vector<double> p);

  std::size_t axes() const { return shape_.size(); }
  std::span<const std::size_t> shape() const { return shape_; }
  std::span<const double> values() const { return p_; }
  double at(std::span<const std::size_t> index) const;

  Pmf marginal(std::span<const std::size_t> keep) const;
  // Entropy of the marginal on the axes whose bits are set in mask.
  double entropy(std::uint32_t mask) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> p_;
};

using Axes = std::vector<std::size_t>;

double mutual_information(const JointPmf& joint, const Axes& a, const Axes& b, const Axes& cond = {});

// Memoized entropies of a fixed joint, keyed by axis mask.
class InfoCache {
 public:
  explicit InfoCache(const JointPmf& joint);

  double entropy(std::uint32_t mask);
  // I(A;B|C) with axis groups given as bit masks.
  double mi(std::uint32_t a, std::uint32_t b, std::uint32_t cond = 0);

 private:
  const JointPmf& joint_;
  std::vector<double> h_;
  std::vector<bool> known_;
};

std::uint32_t axis_mask(const Axes& axes);

}  // namespace confmac

#pragma once

// A scalar product space: R^n with a diagonal metric of signs +-1 on the
// standard basis, plus a choice of orientation. The induced metric on each
// exterior power is again diagonal with signs eps_I = prod_{i in I} eps_i.

#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "curvcert/errors.hpp"
#include "curvcert/subsets.hpp"

namespace curvcert {

class ScalarSpace {
 public:
  ScalarSpace(int n, std::vector<int> signs, int orientation = +1) {
    if (n < 1 || n > kMaxDimension)
      throw DimensionError("ScalarSpace: dimension must be between 1 and 16");
    if (static_cast<int>(signs.size()) != n)
      throw DimensionError("ScalarSpace: need one sign per basis vector");
    for (int s : signs)
      if (s != 1 && s != -1) throw PreconditionFailed("ScalarSpace: signs must be +1 or -1");
    if (orientation != 1 && orientation != -1)
      throw PreconditionFailed("ScalarSpace: orientation must be +1 or -1");
    auto d = std::make_shared<Data>(n, std::move(signs), orientation);
    d_ = std::move(d);
  }

  static ScalarSpace euclidean(int n) { return ScalarSpace(n, std::vector<int>(n, 1)); }

  static ScalarSpace minkowski(int n) {
    std::vector<int> s(n, 1);
    s[0] = -1;
    return ScalarSpace(n, std::move(s));
  }

  int dim() const { return d_->n; }
  int sign(int i) const { return d_->signs[i]; }
  const std::vector<int>& signs() const { return d_->signs; }
  int orientation() const { return d_->orientation; }
  const SubsetTable& table() const { return d_->table; }

  int timelike_count() const {
    int c = 0;
    for (int s : d_->signs) c += (s < 0);
    return c;
  }

  // eps_I for the subset given as a bitmask.
  int subset_sign(std::uint32_t mask) const {
    int s = 1;
    std::uint32_t rest = mask;
    while (rest) {
      s *= d_->signs[std::countr_zero(rest)];
      rest &= rest - 1;
    }
    return s;
  }

  friend bool operator==(const ScalarSpace& a, const ScalarSpace& b) {
    return a.d_ == b.d_ ||
           (a.d_->n == b.d_->n && a.d_->signs == b.d_->signs &&
            a.d_->orientation == b.d_->orientation);
  }
  friend bool operator!=(const ScalarSpace& a, const ScalarSpace& b) { return !(a == b); }

 private:
  struct Data {
    Data(int n_, std::vector<int> signs_, int orientation_)
        : n(n_), signs(std::move(signs_)), orientation(orientation_), table(n_) {}
    int n;
    std::vector<int> signs;
    int orientation;
    SubsetTable table;
  };
  std::shared_ptr<const Data> d_;
};

// <e_{i_1} ... e_{i_k}, same> for an arbitrary multi-index: 0 when an index
// repeats, otherwise the product of the metric signs.
inline int causal_sign(const ScalarSpace& space, const std::vector<int>& indices) {
  std::uint32_t seen = 0;
  int s = 1;
  for (int i : indices) {
    if (i < 0 || i >= space.dim()) throw PreconditionFailed("causal_sign: index out of range");
    std::uint32_t bit = std::uint32_t{1} << i;
    if (seen & bit) return 0;
    seen |= bit;
    s *= space.sign(i);
  }
  return s;
}

}  // namespace curvcert

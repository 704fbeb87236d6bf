#pragma once

// Dense matrices over an arbitrary field scalar. Sizes in this project are
// small (at most C(n,2) x C(n,2) with n <= 16), so plain Gaussian elimination
// with exact division is the right tool; no sparsity, no blocking.

#include <cstddef>
#include <utility>
#include <vector>

#include "curvcert/errors.hpp"
#include "curvcert/scalar.hpp"

namespace curvcert {

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, T{}) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    a.require_same_shape(b);
    Mat c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    a.require_same_shape(b);
    Mat c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
  }
  friend Mat operator-(const Mat& a) {
    Mat c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = -a.a_[i];
    return c;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionError("Mat: inner dimensions differ");
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (scalar_traits<T>::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Mat operator*(const T& s, const Mat& a) {
    Mat c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = s * a.a_[i];
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero() const {
    for (const T& x : a_)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  bool is_symmetric() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return rows_ == cols_;
  }

 private:
  void require_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Mat: shape mismatch");
  }

  int rows_, cols_;
  std::vector<T> a_;
};

namespace detail {

// Pivot preference: exact fields take any nonzero entry, floating types take
// the entry of largest magnitude for stability.
inline double pivot_size(double x) { return x < 0 ? -x : x; }
inline double pivot_size(const Complex<double>& z) { return norm_sq(z); }
template <class T>
double pivot_size(const T&) {
  return 1.0;
}

}  // namespace detail

// Row echelon reduction used by det / inverse / rank. Works in place on an
// augmented block [A | B]; returns the permutation sign and the echelon rank.
template <class T>
std::pair<int, int> row_reduce(Mat<T>& a, Mat<T>* aug) {
  const int m = a.rows(), n = a.cols();
  int sign = 1, rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = -1;
    double best = 0;
    for (int r = rank; r < m; ++r) {
      if (scalar_traits<T>::is_zero(a(r, col))) continue;
      double sz = detail::pivot_size(a(r, col));
      if (pivot < 0 || sz > best) {
        pivot = r;
        best = sz;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(rank, j));
      if (aug)
        for (int j = 0; j < aug->cols(); ++j) std::swap((*aug)(pivot, j), (*aug)(rank, j));
      sign = -sign;
    }
    const T inv_p = T(1) / a(rank, col);
    for (int r = 0; r < m; ++r) {
      if (r == rank || scalar_traits<T>::is_zero(a(r, col))) continue;
      T f = a(r, col) * inv_p;
      for (int j = col; j < n; ++j) a(r, j) = a(r, j) - f * a(rank, j);
      a(r, col) = T{};
      if (aug)
        for (int j = 0; j < aug->cols(); ++j)
          (*aug)(r, j) = (*aug)(r, j) - f * (*aug)(rank, j);
    }
    ++rank;
  }
  return {sign, rank};
}

template <class T>
T det(Mat<T> a) {
  if (a.rows() != a.cols()) throw DimensionError("det: matrix must be square");
  auto [sign, rank] = row_reduce(a, static_cast<Mat<T>*>(nullptr));
  if (rank < a.rows()) return T{};
  T d(sign);
  for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

template <class T>
Mat<T> inverse(Mat<T> a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse: matrix must be square");
  const int n = a.rows();
  Mat<T> inv = Mat<T>::identity(n);
  auto [sign, rank] = row_reduce(a, &inv);
  (void)sign;
  if (rank < n) throw PreconditionFailed("inverse: matrix is singular");
  for (int i = 0; i < n; ++i) {
    T ip = T(1) / a(i, i);
    for (int j = 0; j < n; ++j) inv(i, j) *= ip;
  }
  return inv;
}

// Rank over an exact field (float callers should prefer a tolerance-aware
// decomposition; see the classification code).
template <class T>
int rank(Mat<T> a) {
  return row_reduce(a, static_cast<Mat<T>*>(nullptr)).second;
}

template <class T>
T trace(const Mat<T>& a) {
  if (a.rows() != a.cols()) throw DimensionError("trace: matrix must be square");
  T t{};
  for (int i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

}  // namespace curvcert

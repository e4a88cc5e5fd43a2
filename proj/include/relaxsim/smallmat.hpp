#pragma once

// Small dense vectors and matrices (dimension <= kMaxDim) with value
// semantics, plus the dense and null-space-constrained solvers used by the
// asymptotic machinery.

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <ostream>

namespace relaxsim {

inline constexpr int kMaxDim = 8;

class Vec {
 public:
  Vec() = default;
  explicit Vec(int size) : size_(size) { assert(size >= 0 && size <= kMaxDim); }
  Vec(std::initializer_list<double> values);

  static Vec zeros(int size) { return Vec(size); }
  static Vec unit(int size, int k);

  int size() const { return size_; }
  double& operator[](int i) { return data_[i]; }
  double operator[](int i) const { return data_[i]; }
  const double* begin() const { return data_.data(); }
  const double* end() const { return data_.data() + size_; }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  double norm() const;
  double norm_inf() const;
  bool all_finite() const;

  friend bool operator==(const Vec& a, const Vec& b);

 private:
  int size_ = 0;
  std::array<double, kMaxDim> data_{};
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);
double dot(const Vec& a, const Vec& b);
std::ostream& operator<<(std::ostream& os, const Vec& v);

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols) {
    assert(rows >= 0 && rows <= kMaxDim && cols >= 0 && cols <= kMaxDim);
  }
  //! Row-major nested initializer: Mat{{1, 2}, {3, 4}}.
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat zeros(int rows, int cols) { return Mat(rows, cols); }
  static Mat identity(int n);
  static Mat diagonal(const Vec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[i * kMaxDim + j]; }
  double operator()(int i, int j) const { return data_[i * kMaxDim + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_col(int j, const Vec& v);

  Mat transpose() const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

  double norm_inf() const;  // max row sum
  double norm_one() const;  // max column sum
  double norm_frobenius() const;
  bool all_finite() const;

  friend bool operator==(const Mat& a, const Mat& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::array<double, kMaxDim * kMaxDim> data_{};
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);
std::ostream& operator<<(std::ostream& os, const Mat& m);

//! Gaussian elimination with partial pivoting. Throws SingularityError when a
//! pivot falls below 1e-14 times the largest row magnitude of A.
Vec solve_dense(const Mat& a, const Vec& b);

//! Inverse by column-wise solve_dense; same error contract.
Mat inverse(const Mat& a);

//! Upper bound on the spectral radius: the smaller of the row- and
//! column-sum norms after diagonal balancing (a similarity transform).
double spectral_radius_bound(const Mat& a);

//! Unique x with A x = b and Q x = 0, where ker(A) has dimension n = rows(Q),
//! ker(A) and im(A) intersect trivially and Q A = 0. Solved as the stacked
//! (N+n) x N least-squares system [A; Q] x = [b; 0] via Householder QR.
//! Throws CompatibilityError if |Qb| > 1e-9 (1 + |b|) or the stacked system is
//! inconsistent, SingularityError if [A; Q] is rank deficient.
Vec constrained_solve(const Mat& a, const Mat& q, const Vec& b);

//! Rank of a matrix by Householder QR with a relative tolerance.
int numerical_rank(const Mat& a, double rel_tol = 1e-12);

}  // namespace relaxsim

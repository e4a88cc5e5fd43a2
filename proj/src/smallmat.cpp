#include "relaxsim/smallmat.hpp"

#include <algorithm>
#include <sstream>

#include "relaxsim/errors.hpp"

namespace relaxsim {

// ---------------------------------------------------------------------------
// Vec

Vec::Vec(std::initializer_list<double> values) : size_(static_cast<int>(values.size())) {
  assert(size_ <= kMaxDim);
  std::copy(values.begin(), values.end(), data_.begin());
}

Vec Vec::unit(int size, int k) {
  Vec v(size);
  v[k] = 1.0;
  return v;
}

Vec& Vec::operator+=(const Vec& o) {
  assert(size_ == o.size_);
  for (int i = 0; i < size_; ++i) data_[i] += o.data_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  assert(size_ == o.size_);
  for (int i = 0; i < size_; ++i) data_[i] -= o.data_[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int i = 0; i < size_; ++i) data_[i] *= s;
  return *this;
}

double Vec::norm() const {
  double s = 0.0;
  for (int i = 0; i < size_; ++i) s += data_[i] * data_[i];
  return std::sqrt(s);
}

double Vec::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < size_; ++i) m = std::max(m, std::abs(data_[i]));
  return m;
}

bool Vec::all_finite() const {
  for (int i = 0; i < size_; ++i)
    if (!std::isfinite(data_[i])) return false;
  return true;
}

bool operator==(const Vec& a, const Vec& b) {
  if (a.size_ != b.size_) return false;
  for (int i = 0; i < a.size_; ++i)
    if (a.data_[i] != b.data_[i]) return false;
  return true;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }

double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(static_cast<int>(rows.size())),
      cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  assert(rows_ <= kMaxDim && cols_ <= kMaxDim);
  int i = 0;
  for (const auto& r : rows) {
    assert(static_cast<int>(r.size()) == cols_);
    int j = 0;
    for (double x : r) (*this)(i, j++) = x;
    ++i;
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(const Vec& d) {
  Mat m(d.size(), d.size());
  for (int i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vec Mat::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

Vec Mat::col(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  assert(v.size() == rows_);
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat& Mat::operator+=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) (*this)(i, j) += o(i, j);
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) (*this)(i, j) -= o(i, j);
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) (*this)(i, j) *= s;
  return *this;
}

double Mat::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

double Mat::norm_one() const {
  double m = 0.0;
  for (int j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

double Mat::norm_frobenius() const {
  double s = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

bool Mat::all_finite() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!std::isfinite((*this)(i, j))) return false;
  return true;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
  assert(a.cols() == b.rows());
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Mat& a, const Vec& x) {
  assert(a.cols() == x.size());
  Vec y(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
  }
  return os << ']';
}

// ---------------------------------------------------------------------------
// Solvers

Vec solve_dense(const Mat& a, const Vec& b) {
  const int n = a.rows();
  assert(a.cols() == n && b.size() == n);
  Mat m = a;
  Vec x = b;
  std::array<double, kMaxDim> row_scale{};
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s = std::max(s, std::abs(m(i, j)));
    row_scale[i] = s;
  }
  const double largest = *std::max_element(row_scale.begin(), row_scale.begin() + n);
  const double tiny = 1e-14 * largest;

  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (!(std::abs(m(p, k)) > tiny)) {
      std::ostringstream os;
      os << "pivot " << m(p, k) << " at column " << k << " below tolerance " << tiny;
      throw SingularityError(os.str());
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(x[k], x[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      x[i] -= f * x[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

Mat inverse(const Mat& a) {
  const int n = a.rows();
  Mat inv(n, n);
  for (int j = 0; j < n; ++j) inv.set_col(j, solve_dense(a, Vec::unit(n, j)));
  return inv;
}

double spectral_radius_bound(const Mat& a) {
  const int n = a.rows();
  assert(a.cols() == n);
  Mat m = a;
  // Parlett-Reinsch balancing with power-of-two scalings (exact in floating
  // point). Rows/columns with a vanishing off-diagonal part are left alone.
  constexpr double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        for (int j = 0; j < n; ++j) m(i, j) /= f;
        for (int j = 0; j < n; ++j) m(j, i) *= f;
      }
    }
  }
  return std::min(m.norm_inf(), m.norm_one());
}

namespace {

// Column-pivoted Householder QR of a rows x cols matrix (rows <= 2 kMaxDim).
struct PivotedQR {
  static constexpr int kRows = 2 * kMaxDim;
  int rows = 0;
  int cols = 0;
  std::array<double, kRows * kMaxDim> r{};  // row-major, stride kMaxDim
  std::array<int, kMaxDim> perm{};
  std::array<double, kRows * kMaxDim> v{};  // Householder vectors by column
  std::array<double, kMaxDim> beta{};

  double& at(int i, int j) { return r[i * kMaxDim + j]; }
  double at(int i, int j) const { return r[i * kMaxDim + j]; }

  void factor() {
    for (int j = 0; j < cols; ++j) perm[j] = j;
    const int steps = std::min(rows, cols);
    for (int k = 0; k < steps; ++k) {
      int best = k;
      double best_norm = -1.0;
      for (int j = k; j < cols; ++j) {
        double s = 0.0;
        for (int i = k; i < rows; ++i) s += at(i, j) * at(i, j);
        if (s > best_norm) {
          best_norm = s;
          best = j;
        }
      }
      if (best != k) {
        for (int i = 0; i < rows; ++i) std::swap(at(i, k), at(i, best));
        std::swap(perm[k], perm[best]);
      }
      const double alpha = std::sqrt(best_norm);
      beta[k] = 0.0;
      for (int i = 0; i < rows; ++i) v[i * kMaxDim + k] = 0.0;
      if (alpha == 0.0) continue;
      const double x0 = at(k, k);
      const double sign_alpha = x0 >= 0.0 ? -alpha : alpha;
      double vnorm2 = 0.0;
      for (int i = k; i < rows; ++i) {
        double vi = at(i, k) - (i == k ? sign_alpha : 0.0);
        v[i * kMaxDim + k] = vi;
        vnorm2 += vi * vi;
      }
      if (vnorm2 == 0.0) continue;
      beta[k] = 2.0 / vnorm2;
      for (int j = k; j < cols; ++j) {
        double s = 0.0;
        for (int i = k; i < rows; ++i) s += v[i * kMaxDim + k] * at(i, j);
        s *= beta[k];
        for (int i = k; i < rows; ++i) at(i, j) -= s * v[i * kMaxDim + k];
      }
    }
  }

  // y <- Q^T y
  void apply_qt(std::array<double, kRows>& y) const {
    const int steps = std::min(rows, cols);
    for (int k = 0; k < steps; ++k) {
      if (beta[k] == 0.0) continue;
      double s = 0.0;
      for (int i = k; i < rows; ++i) s += v[i * kMaxDim + k] * y[i];
      s *= beta[k];
      for (int i = k; i < rows; ++i) y[i] -= s * v[i * kMaxDim + k];
    }
  }

  int rank(double rel_tol) const {
    const int steps = std::min(rows, cols);
    if (steps == 0) return 0;
    const double lead = std::abs(at(0, 0));
    if (lead == 0.0) return 0;
    int rk = 0;
    for (int k = 0; k < steps; ++k)
      if (std::abs(at(k, k)) > rel_tol * lead) ++rk;
    return rk;
  }
};

}  // namespace

int numerical_rank(const Mat& a, double rel_tol) {
  PivotedQR qr;
  qr.rows = a.rows();
  qr.cols = a.cols();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) qr.at(i, j) = a(i, j);
  qr.factor();
  return qr.rank(rel_tol);
}

Vec constrained_solve(const Mat& a, const Mat& q, const Vec& b) {
  const int n_state = a.rows();
  const int n_eq = q.rows();
  assert(a.cols() == n_state && q.cols() == n_state && b.size() == n_state);

  const double qb = (q * b).norm();
  if (qb > 1e-9 * (1.0 + b.norm())) {
    std::ostringstream os;
    os << "right-hand side violates Q b = 0 (|Qb| = " << qb << ")";
    throw CompatibilityError(os.str());
  }

  PivotedQR qr;
  qr.rows = n_state + n_eq;
  qr.cols = n_state;
  for (int i = 0; i < n_state; ++i)
    for (int j = 0; j < n_state; ++j) qr.at(i, j) = a(i, j);
  for (int i = 0; i < n_eq; ++i)
    for (int j = 0; j < n_state; ++j) qr.at(n_state + i, j) = q(i, j);
  qr.factor();
  if (qr.rank(1e-12) < n_state) {
    throw SingularityError("stacked system [A; Q] is rank deficient beyond the equilibrium null space");
  }

  std::array<double, PivotedQR::kRows> y{};
  for (int i = 0; i < n_state; ++i) y[i] = b[i];
  qr.apply_qt(y);

  Vec z(n_state);
  for (int i = n_state - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < n_state; ++j) s -= qr.at(i, j) * z[j];
    z[i] = s / qr.at(i, i);
  }
  Vec x(n_state);
  for (int j = 0; j < n_state; ++j) x[qr.perm[j]] = z[j];

  // The least-squares residual of the stacked system must vanish.
  const double scale = 1.0 + b.norm() + a.norm_frobenius() * x.norm();
  const double res = (a * x - b).norm() + (q * x).norm();
  if (res > 1e-8 * scale) {
    std::ostringstream os;
    os << "stacked system is inconsistent (residual " << res << ")";
    throw CompatibilityError(os.str());
  }
  return x;
}

}  // namespace relaxsim

#include "sph/linalg.hpp"

#include <cstdlib>
#include <ostream>

namespace sph {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVec IntMatrix::apply(const IntVec& v) const {
  IntVec out(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    int s = 0;
    for (int c = 0; c < cols_; ++c) s += (*this)(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVec IntMatrix::row(int r) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

IntVec IntMatrix::col(int c) const {
  IntVec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("IntMatrix: shape mismatch in product");
  IntMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& x : out.data_) x = -x;
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (int r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (int c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = gcd64(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational operator+(Rational a, Rational b) {
  std::int64_t g = gcd64(a.den_, b.den_);
  return Rational(a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g), a.den_ / g * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
  std::int64_t g1 = gcd64(a.num_, b.den_);
  std::int64_t g2 = gcd64(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
}
Rational operator/(Rational a, Rational b) {
  if (b.num_ == 0) throw Error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

namespace {

using RMat = std::vector<std::vector<Rational>>;

RMat to_rational(const IntMatrix& m) {
  RMat r(m.rows(), std::vector<Rational>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i][j] = Rational(m(i, j));
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMat& a, int ncols) {
  std::vector<int> pivots;
  int rows = static_cast<int>(a.size());
  int r = 0;
  for (int c = 0; c < ncols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c].num() != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x = x * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].num() == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank_rational(const IntMatrix& m) {
  RMat a = to_rational(m);
  return static_cast<int>(rref(a, m.cols()).size());
}

std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m, const IntVec& b) {
  RMat a = to_rational(m);
  for (int i = 0; i < m.rows(); ++i) a[i].push_back(Rational(b[i]));
  auto pivots = rref(a, m.cols());
  for (int i = static_cast<int>(pivots.size()); i < m.rows(); ++i)
    if (a[i][m.cols()].num() != 0) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][m.cols()];
  return x;
}

std::vector<std::vector<Rational>> inverse_rational(const IntMatrix& m) {
  int n = m.rows();
  if (m.cols() != n) throw Error("inverse_rational: matrix not square");
  RMat a = to_rational(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i].push_back(Rational(i == j ? 1 : 0));
  auto pivots = rref(a, n);
  if (static_cast<int>(pivots.size()) != n) throw Error("inverse_rational: singular matrix");
  RMat inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; the divisions by k are exact for integer input.
  int n = m.rows();
  std::vector<std::int64_t> c(n + 1, 0);
  c[n] = 1;
  std::vector<std::int64_t> mk(static_cast<std::size_t>(n) * n, 0);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::int64_t> next(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        std::int64_t x = m(i, l);
        if (!x) continue;
        for (int j = 0; j < n; ++j) next[i * n + j] += x * mk[l * n + j];
      }
    for (int i = 0; i < n; ++i) next[i * n + i] += c[n - k + 1];
    mk = std::move(next);
    std::int64_t tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += static_cast<std::int64_t>(m(i, l)) * mk[l * n + i];
    c[n - k] = -tr / k;
  }
  return c;
}

}  // namespace sph

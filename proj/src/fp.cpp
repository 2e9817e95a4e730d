#include "sph/fp.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace sph {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error("PrimeField: " + std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw Error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

std::uint32_t PrimeField::order(std::uint32_t a) const {
  if (a % p_ == 0) throw Error("PrimeField: order of zero");
  std::uint32_t k = 1;
  std::uint64_t x = a % p_;
  while (x != 1) {
    x = x * a % p_;
    ++k;
  }
  return k;
}

std::uint32_t PrimeField::element_of_order(std::uint32_t n) const {
  if (n == 0 || (p_ - 1) % n != 0) return 0;
  for (std::uint32_t a = 1; a < p_; ++a)
    if (order(a) == n) return a;
  return 0;
}

FqMatrix FqMatrix::identity(std::uint32_t p, int n) {
  FqMatrix m(p, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_ints(std::uint32_t p, const IntMatrix& src) {
  if (src.rows() != src.cols()) throw Error("FqMatrix: square input required");
  PrimeField f(p);
  FqMatrix m(p, src.rows());
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j) m(i, j) = f.reduce(src(i, j));
  return m;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix t(p_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
  int n = a.n_;
  std::uint64_t p = a.p_;
  FqMatrix out(a.p_, n);
  std::vector<std::uint64_t> acc(n);
  for (int i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (int k = 0; k < n; ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      const std::uint32_t* brow = &b.a_[static_cast<std::size_t>(k) * n];
      for (int j = 0; j < n; ++j) acc[j] += x * brow[j];
    }
    for (int j = 0; j < n; ++j) out(i, j) = static_cast<std::uint32_t>(acc[j] % p);
  }
  return out;
}

FqMatrix operator+(const FqMatrix& a, const FqMatrix& b) {
  FqMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = (a.a_[i] + b.a_[i]) % a.p_;
  return out;
}

FqMatrix operator-(const FqMatrix& a, const FqMatrix& b) {
  FqMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] = (a.a_[i] + a.p_ - b.a_[i]) % a.p_;
  return out;
}

FqMatrix FqMatrix::scaled(std::uint32_t s) const {
  PrimeField f(p_);
  FqMatrix out = *this;
  for (auto& x : out.a_) x = f.mul(x, s);
  return out;
}

bool FqMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

FqMatrix FqMatrix::pow(std::uint64_t e) const {
  FqMatrix r = identity(p_, n_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

FqMatrix FqMatrix::inverse() const {
  PrimeField f(p_);
  int n = n_;
  std::vector<std::vector<std::uint32_t>> a(n, std::vector<std::uint32_t>(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("FqMatrix: singular matrix");
    std::swap(a[c], a[piv]);
    std::uint32_t iv = f.inv(a[c][c]);
    for (auto& x : a[c]) x = f.mul(x, iv);
    for (int r = 0; r < n; ++r) {
      if (r == c || !a[r][c]) continue;
      std::uint32_t m = a[r][c];
      for (int j = 0; j < 2 * n; ++j) a[r][j] = f.sub(a[r][j], f.mul(m, a[c][j]));
    }
  }
  FqMatrix out(p_, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a[i][n + j];
  return out;
}

std::uint32_t FqMatrix::det() const {
  PrimeField f(p_);
  int n = n_;
  std::vector<std::vector<std::uint32_t>> a(n, std::vector<std::uint32_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
  std::uint32_t d = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = f.neg(d);
    }
    d = f.mul(d, a[c][c]);
    std::uint32_t iv = f.inv(a[c][c]);
    for (int r = c + 1; r < n; ++r) {
      if (!a[r][c]) continue;
      std::uint32_t m = f.mul(a[r][c], iv);
      for (int j = c; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(m, a[c][j]));
    }
  }
  return d;
}

int rank_mod_p(std::vector<std::vector<std::uint32_t>> a, std::uint32_t p) {
  if (a.empty()) return 0;
  PrimeField f(p);
  int rows = static_cast<int>(a.size());
  int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    std::uint32_t iv = f.inv(a[r][c]);
    for (int i = r + 1; i < rows; ++i) {
      if (!a[i][c]) continue;
      std::uint32_t m = f.mul(a[i][c], iv);
      for (int j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = f.sub(a[i][j], f.mul(m, a[r][j]));
    }
    ++r;
  }
  return r;
}

int FqMatrix::rank() const {
  std::vector<std::vector<std::uint32_t>> rows(n_, std::vector<std::uint32_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rank_mod_p(std::move(rows), p_);
}

std::vector<std::vector<int>> FqMatrix::to_rows_signed() const {
  std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::uint32_t x = (*this)(i, j);
      out[i][j] = x > p_ / 2 ? static_cast<int>(x) - static_cast<int>(p_) : static_cast<int>(x);
    }
  return out;
}

std::ostream& operator<<(std::ostream& os, const FqMatrix& m) {
  auto rows = m.to_rows_signed();
  os << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < rows[i].size(); ++j) os << (j ? ", " : "") << rows[i][j];
    os << ']';
  }
  return os << ']';
}

namespace {

void factor_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  if (n > 1) ++out[n];
}

}  // namespace

std::uint64_t element_order(const FqMatrix& g) {
  // The exponent of GL_n(F_p) divides p^c * lcm(p^i - 1, i <= n) with p^c >= n.
  std::uint64_t p = g.prime();
  int n = g.size();
  std::map<std::uint64_t, int> expo;
  for (int i = 1; i <= n; ++i) {
    std::uint64_t pi = 1;
    for (int k = 0; k < i; ++k) pi *= p;
    std::map<std::uint64_t, int> f;
    factor_into(pi - 1, f);
    for (auto [q, e] : f) expo[q] = std::max(expo[q], e);
  }
  int c = 0;
  for (std::uint64_t pc = 1; pc < static_cast<std::uint64_t>(n); pc *= p) ++c;
  if (c > 0) expo[p] = std::max(expo[p], c);

  std::uint64_t order = 1;
  for (auto [q, e] : expo) {
    // Raise g to every other prime's full power, then find the q-part.
    FqMatrix h = g;
    for (auto [q2, e2] : expo) {
      if (q2 == q) continue;
      std::uint64_t qe = 1;
      for (int k = 0; k < e2; ++k) qe *= q2;
      h = h.pow(qe);
    }
    int k = 0;
    while (!h.is_identity()) {
      h = h.pow(q);
      ++k;
      if (k > e) throw Error("element_order: matrix is not invertible");
    }
    for (int i = 0; i < k; ++i) order *= q;
  }
  return order;
}

std::vector<int> unipotent_partition(const FqMatrix& g) {
  int n = g.size();
  FqMatrix x = g - FqMatrix::identity(g.prime(), n);
  std::vector<int> ranks{n};
  FqMatrix pw = FqMatrix::identity(g.prime(), n);
  while (true) {
    pw = pw * x;
    int r = pw.rank();
    if (r == ranks.back()) break;
    ranks.push_back(r);
  }
  // ranks[k] = rank((g-1)^k); blocks of size >= k number ranks[k-1]-ranks[k].
  std::vector<int> parts;
  int kmax = static_cast<int>(ranks.size()) - 1;
  for (int k = kmax; k >= 1; --k) {
    int ge_k = ranks[k - 1] - ranks[k];
    int ge_k1 = k + 1 <= kmax ? ranks[k] - ranks[k + 1] : 0;
    for (int i = 0; i < ge_k - ge_k1; ++i) parts.push_back(k);
  }
  return parts;
}

}  // namespace sph

#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sph {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using IntVec = std::vector<int>;

/// Dense row-major integer matrix. Sizes here never exceed a few hundred.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<int>& data() const { return data_; }

  IntVec apply(const IntVec& v) const;
  IntMatrix transpose() const;
  IntVec row(int r) const;
  IntVec col(int c) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Exact rational with 64-bit parts, always normalized (den > 0, gcd 1).
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Rank over Q.
int rank_rational(const IntMatrix& m);

/// Solves m * x = b over Q. Returns nullopt when inconsistent; free
/// variables are set to zero.
std::optional<std::vector<Rational>> solve_rational(const IntMatrix& m, const IntVec& b);

/// Inverse over Q; throws when singular.
std::vector<std::vector<Rational>> inverse_rational(const IntMatrix& m);

/// Coefficients c_0..c_n of det(xI - m), c_n = 1.
std::vector<std::int64_t> characteristic_polynomial(const IntMatrix& m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace sph

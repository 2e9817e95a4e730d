#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sph/linalg.hpp"

namespace sph {

/// Arithmetic in the prime field F_p, p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a ? p_ - a : 0; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;

  /// Multiplicative order of a nonzero element.
  std::uint32_t order(std::uint32_t a) const;
  /// An element of exact order n, or nullopt-like 0 when n does not divide p-1.
  std::uint32_t element_of_order(std::uint32_t n) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

/// Square matrix over F_p.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(std::uint32_t p, int n) : p_(p), n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

  static FqMatrix identity(std::uint32_t p, int n);
  static FqMatrix from_ints(std::uint32_t p, const IntMatrix& m);

  std::uint32_t prime() const { return p_; }
  int size() const { return n_; }

  std::uint32_t& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  std::uint32_t operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  const std::vector<std::uint32_t>& data() const { return a_; }

  FqMatrix transpose() const;
  FqMatrix inverse() const;
  std::uint32_t det() const;
  int rank() const;
  bool is_identity() const;
  FqMatrix pow(std::uint64_t e) const;
  FqMatrix scaled(std::uint32_t s) const;

  friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
  friend FqMatrix operator+(const FqMatrix& a, const FqMatrix& b);
  friend FqMatrix operator-(const FqMatrix& a, const FqMatrix& b);
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) = default;

  /// Entries as signed integers in (-p/2, p/2], row-major.
  std::vector<std::vector<int>> to_rows_signed() const;

 private:
  std::uint32_t p_ = 2;
  int n_ = 0;
  std::vector<std::uint32_t> a_;
};

std::ostream& operator<<(std::ostream& os, const FqMatrix& m);

/// Rank over F_p of a rectangular matrix given as rows of residues.
int rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

/// Multiplicative order of an invertible matrix.
std::uint64_t element_order(const FqMatrix& g);

/// Jordan-type of a unipotent-or-not matrix at eigenvalue 1: partition of
/// the generalized 1-eigenspace read off the rank sequence of (g-1)^k.
std::vector<int> unipotent_partition(const FqMatrix& g);

}  // namespace sph

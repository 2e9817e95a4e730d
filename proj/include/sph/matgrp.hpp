#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sph/catalog.hpp"
#include "sph/fp.hpp"
#include "sph/rootsys.hpp"
#include "sph/weyl.hpp"

namespace sph {

/// SL_{n+1}, SO_{2n+1}, Sp_{2n} or SO_{2n} over F_p. Matrices are stored in
/// an internal basis where the Borel subgroup is upper triangular:
///   A: e_1..e_{n+1};  C, D: e_1..e_n, f_n..f_1;  B: e_1..e_n, w, f_n..f_1.
/// The external (I/O) order is e_1..e_n, f_1..f_n for C and D and
/// w, e_1..e_n, f_1..f_n for B, with forms ((0,I),(-I,0)), ((0,I),(I,0))
/// and 1 + ((0,I),(I,0)).
class ClassicalGroup {
 public:
  static ClassicalGroup make(Family family, int n, std::uint32_t p);

  Family family() const { return rs_->family(); }
  int rank() const { return rs_->rank(); }
  std::uint32_t prime() const { return p_; }
  /// Size of the matrices.
  int degree() const { return m_; }
  const RootSystem& root_system() const { return *rs_; }
  std::string name() const;

  /// Internal positions of e_i, f_i (0-based i) and of w.
  int pos_e(int i) const;
  int pos_f(int i) const;
  int pos_w() const;

  /// Gram matrix of the form in the internal basis (identity for A).
  const FqMatrix& form() const { return form_; }
  FqMatrix to_external(const FqMatrix& g) const;
  FqMatrix from_external(const FqMatrix& g) const;

  /// Empty when g lies in G, otherwise a description of the failed check.
  std::string membership_error(const FqMatrix& g) const;
  bool contains(const FqMatrix& g) const { return membership_error(g).empty(); }

  /// x_alpha(t) for the root with the given index in root_system().
  FqMatrix root_element(int root_index, std::uint32_t t) const;
  FqMatrix root_element(const IntVec& root, std::uint32_t t) const;
  /// Monomial representative of s_i, i.e. x_a(1) x_{-a}(c) x_a(1).
  const FqMatrix& simple_rep(int i) const { return simple_reps_[i]; }
  /// Monomial representative of s_alpha for any root index.
  FqMatrix reflection_rep(int root_index) const;
  /// g <- x_alpha(t) g and g <- g x_alpha(t), by row and column operations.
  void left_multiply_root(FqMatrix& g, int root_index, std::uint32_t t) const;
  void right_multiply_root(FqMatrix& g, int root_index, std::uint32_t t) const;
  FqMatrix weyl_rep(const WeylElement& w) const;
  /// Diagonal element with eigenvalues d on e_1..e_k (k = n+1 for A, n
  /// otherwise), inverses on the f_i and 1 on w.
  FqMatrix torus_element(const std::vector<std::uint32_t>& d) const;

  /// The unique w with g in BwB.
  WeylElement bruhat_cell(const FqMatrix& g) const;

  /// |G| as a decimal string and as a double.
  std::string order_string() const;
  double order() const;
  /// Number of cosets of B, sum over W of p^l(w).
  unsigned __int128 flag_count() const;

  /// Epsilon coordinates of a root index.
  const std::vector<int>& epsilon(int root_index) const { return eps_[root_index]; }

 private:
  std::shared_ptr<const RootSystem> rs_;
  std::uint32_t p_ = 0;
  int m_ = 0;
  int coords_ = 0;
  FqMatrix form_;
  std::vector<int> external_;  // external index -> internal position
  std::vector<std::vector<int>> eps_;
  std::map<std::vector<int>, int> eps_index_;
  std::vector<FqMatrix> simple_reps_;

  // x_alpha(t) = 1 + t X + (t^2/2) X^2 with X and X^2 stored sparsely.
  struct Entry {
    int r, c, v;
  };
  struct Pattern {
    std::vector<Entry> x, x2;
  };
  std::vector<Pattern> patterns_;
  std::uint32_t half_ = 0;

  void build_patterns();
};

inline ClassicalGroup make_group(Family family, int n, std::uint32_t p) {
  return ClassicalGroup::make(family, n, p);
}

std::string to_decimal(unsigned __int128 v);

/// Matrix for the descriptor's representative: parameters take the first
/// values in F_p^* for which the centralizer root set is the generic one;
/// unipotent parts are products of x_{-gamma}(c_gamma) with c_gamma = 1
/// unless scales are given. Throws Error with "needs larger prime" when no
/// admissible values exist.
FqMatrix realize(const ClassicalGroup& G, const ClassDescriptor& d, const std::vector<std::uint32_t>& scales = {});

/// Unipotent scale vectors in {1, nu}^k for the smallest non-square nu: the
/// rational forms of the geometric class that the search ranges over.
std::vector<std::vector<std::uint32_t>> rational_form_scales(const ClassicalGroup& G, const ClassDescriptor& d);

struct JordanParts {
  FqMatrix s;
  FqMatrix u;
};

JordanParts jordan_decompose(const ClassicalGroup& G, const FqMatrix& g);

struct SamplingOptions {
  /// Number of random conjugates; ignored for exhaustive runs.
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Conjugate by every coset of B when |G| does not exceed this.
  double exhaustive_threshold = 1e7;
  bool force_exhaustive = false;
};

struct BruhatReport {
  ClassDescriptor descriptor;
  std::uint32_t p = 0;
  bool exhaustive = false;
  std::uint64_t conjugates = 0;
  std::map<WeylElement, std::uint64_t> cells;
  bool all_involutions = true;
  int max_value = -1;
  int dim_target = 0;
  bool achieved = false;
  FqMatrix representative;
  std::optional<FqMatrix> witness_conjugator;
  std::optional<WeylElement> witness_cell;
};

/// Bruhat cells of h g h^-1 for g = realize(d): every coset B h when |G| is
/// below the threshold, otherwise budget uniform cosets from a seeded
/// stream split into fixed chunks, so the result does not depend on the
/// number of threads.
BruhatReport verify_involution_criterion(const ClassicalGroup& G, const ClassDescriptor& d,
                                         const SamplingOptions& opts = {});

struct WitnessResult {
  bool found = false;
  /// "guided", "random-words" or "random-cosets"; "inconclusive" if not found.
  std::string stage = "inconclusive";
  std::uint64_t tried = 0;
  std::optional<FqMatrix> conjugator;
  std::optional<WeylElement> cell;
  /// Unipotent scales of the rational form in which the cell was reached.
  std::vector<std::uint32_t> scales;
};

/// A conjugator h with bruhat_cell(h g h^-1) among targets, for g one of
/// the rational forms of the class. Tries products of up to three root
/// elements and Weyl representatives attached to the target roots, then
/// random words in root elements, then random cosets; budget applies to
/// each stage and form.
WitnessResult find_noninvolution_witness(const ClassicalGroup& G, const ClassDescriptor& d,
                                         const std::vector<WeylElement>& targets, const SamplingOptions& opts = {});

/// Number of elements of G commuting with g, by enumerating the linear
/// centralizer in M_m(F_p). Throws when that space exceeds limit elements.
std::uint64_t centralizer_order(const ClassicalGroup& G, const FqMatrix& g, double limit = 1e8);
double class_size(const ClassicalGroup& G, const FqMatrix& g, double limit = 1e8);

/// Random element of B (torus times positive root elements).
FqMatrix random_borel(const ClassicalGroup& G, std::mt19937_64& rng);

}  // namespace sph

#pragma once

#include <map>
#include <string>
#include <vector>

#include "sph/linalg.hpp"

namespace sph {

enum class Family { A, B, C, D, E, F, G };

char family_letter(Family f);
Family parse_family(const std::string& s);

/// Immutable root datum of a simple type, simple roots numbered as in
/// Bourbaki's Planches. Roots are integer coefficient vectors over the
/// simple roots.
///
/// The invariant form is stored scaled so it stays integral:
/// (a_i, a_i) = 2 * len_i with len = 1 for every root of a simply-laced
/// type, len in {1, 2} for B/C/F (short/long) and len in {1, 3} for G2.
class RootSystem {
 public:
  static RootSystem build(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  std::string name() const;

  /// cartan(i, j) = <a_j, a_i^vee> = 2 (a_i, a_j) / (a_i, a_i).
  const IntMatrix& cartan() const { return cartan_; }
  const IntMatrix& gram() const { return gram_; }
  int simple_length(int i) const { return len_[i]; }

  int form(const IntVec& u, const IntVec& v) const;
  /// <beta, a_i^vee>.
  int pairing(const IntVec& beta, int i) const;
  /// <beta, gamma^vee> for a root gamma.
  int pairing_root(const IntVec& beta, const IntVec& gamma) const;
  bool is_long(const IntVec& root) const;

  /// Positive roots first (indices 0..N-1, sorted by height then
  /// lexicographically), then their negatives in the same order.
  const std::vector<IntVec>& roots() const { return roots_; }
  int num_positive() const { return static_cast<int>(roots_.size()) / 2; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const IntVec& root(int idx) const { return roots_[idx]; }
  /// -1 when v is not a root.
  int root_index(const IntVec& v) const;
  bool is_root(const IntVec& v) const { return root_index(v) >= 0; }
  int negative_index(int idx) const;
  bool is_positive_index(int idx) const { return idx < num_positive(); }

  IntVec simple_root(int i) const;
  const IntVec& highest_root() const { return roots_[num_positive() - 1]; }
  /// Simple roots followed by -beta1.
  std::vector<IntVec> extended_basis() const;

  std::vector<int> bad_primes() const;
  bool is_good_prime(int p) const;

  /// Action of s_i on root coordinates.
  IntMatrix simple_reflection_matrix(int i) const;
  IntVec reflect(const IntVec& v, const IntVec& root) const;

  friend bool operator==(const RootSystem& a, const RootSystem& b) {
    return a.family_ == b.family_ && a.rank_ == b.rank_;
  }

 private:
  RootSystem() = default;

  Family family_ = Family::A;
  int rank_ = 0;
  IntVec len_;
  IntMatrix gram_;
  IntMatrix cartan_;
  std::vector<IntVec> roots_;
  std::map<IntVec, int> index_;
};

int height(const IntVec& v);

/// Classical types only: coordinates in the standard basis eps_1..eps_m
/// (m = n+1 for A_n, m = n otherwise) with a_i = eps_i - eps_{i+1}, and
/// a_n = eps_n (B), 2 eps_n (C), eps_{n-1} + eps_n (D).
std::vector<int> root_to_epsilon(const RootSystem& rs, const IntVec& root);
/// Inverse of root_to_epsilon; throws when v is not in the root lattice.
IntVec root_from_epsilon(const RootSystem& rs, const std::vector<int>& eps);

/// Standard number of positive roots for (family, rank).
int standard_positive_count(Family family, int rank);

struct SubsystemComponent {
  char family;             // 'A'..'G'
  int rank;
  bool short_roots;        // simply-laced component made of short roots
  std::vector<int> nodes;  // indices into SubsystemSpec::pi
  std::string name() const;
};

/// A subsystem with basis pi inside the extended basis.
struct SubsystemSpec {
  std::vector<IntVec> pi;
  std::vector<int> closure;  // root indices of the subsystem
  std::vector<SubsystemComponent> components;
  int torus_rank = 0;

  int num_roots() const { return static_cast<int>(closure.size()); }
  /// e.g. "A5xA1", "D5xT1", "T6" for the pure torus.
  std::string type_string() const;
};

SubsystemSpec classify_subsystem(const RootSystem& rs, const std::vector<IntVec>& pi);

enum class CandidateFilter {
  dimension_only,
  /// Central-torus centralizers additionally need a cocharacter grading of
  /// depth one (abelian unipotent radical), the Levi shapes whose
  /// semisimple classes can be spherical.
  spherical_levi,
};

/// Subsets of the extended basis whose centralizer shape gives a class of
/// dimension <= dim_bound, in lexicographic order of node indices (the
/// node rank() stands for -beta1).
std::vector<SubsystemSpec> enumerate_semisimple_candidates(
    const RootSystem& rs, int dim_bound, CandidateFilter filter = CandidateFilter::spherical_levi);

/// Extended-basis node indices of a candidate, for printing.
std::vector<int> extended_nodes(const RootSystem& rs, const SubsystemSpec& spec);

}  // namespace sph

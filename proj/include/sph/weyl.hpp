#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sph/rootsys.hpp"

namespace sph {

/// Element of W acting on simple-root coordinates (column j is w(a_j)).
/// Holds a pointer to its root system, which must outlive it.
class WeylElement {
 public:
  WeylElement(const RootSystem& rs, IntMatrix m);

  static WeylElement identity(const RootSystem& rs);
  static WeylElement simple(const RootSystem& rs, int i);
  /// s_root; throws if root is not in Phi.
  static WeylElement reflection(const RootSystem& rs, const IntVec& root);
  /// Product s_{w[0]} s_{w[1]} ... of simple reflections (0-based indices).
  static WeylElement from_word(const RootSystem& rs, const std::vector<int>& word);

  const RootSystem& root_system() const { return *rs_; }
  const IntMatrix& matrix() const { return m_; }
  IntVec apply(const IntVec& v) const { return m_.apply(v); }

  int length() const;
  int rank_defect() const;
  bool is_involution() const;
  bool is_identity() const;
  /// Reduced word (0-based simple indices), built by peeling right descents.
  std::vector<int> reduced_word() const;
  bool has_right_descent(int i) const;
  WeylElement inverse() const;

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m_ == b.m_; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.m_ < b.m_; }

 private:
  const RootSystem* rs_;
  IntMatrix m_;
};

/// Reduced word as a string of 1-based indices, e.g. "1 2 1"; empty for e.
std::string word_string(const std::vector<int>& word);

bool is_positive_vector(const IntVec& v);

WeylElement longest_element(const RootSystem& rs);

/// l(w0) + rk(1 - w0), the upper bound for spherical class dimensions.
int spherical_bound(const RootSystem& rs);

bool is_coxeter_element(const WeylElement& w);

/// Bruhat order via the lifting property along right descents of w.
bool bruhat_leq(const WeylElement& u, const WeylElement& w);

/// Subword criterion against the reduced word of w (exponential; an oracle
/// for small ranks).
bool bruhat_leq_subword(const WeylElement& u, const WeylElement& w);

std::uint64_t weyl_group_order(const RootSystem& rs);

/// All elements of W; refuses groups larger than max_size.
std::vector<WeylElement> enumerate_weyl_group(const RootSystem& rs, std::uint64_t max_size = 200000);

/// Minimal left coset representatives of W_{k-1} in W_k for the chain
/// W_0 < W_1 < ... < W_rank generated by s_1..s_k. Every w in W factors
/// uniquely as t_rank ... t_1 with t_k taken from chain[k-1].
std::vector<std::vector<IntMatrix>> parabolic_transversals(const RootSystem& rs);

struct InvolutionSearch {
  std::uint64_t cap = 1000000;  // orthogonal sets visited
  bool first_only = false;
  int threads = 1;
};

/// Involutions w with l(w) + rk(1-w) = d, as products of reflections in
/// pairwise orthogonal positive roots, deduplicated by matrix. Output order
/// is deterministic and independent of the thread count.
std::vector<WeylElement> involutions_with_value(const RootSystem& rs, int d,
                                                const InvolutionSearch& opts = {});

struct SubsystemAutomorphism {
  WeylElement w;
  /// w(pi[j]) = pi[perm[j]].
  std::vector<int> perm;
};

enum class AutomorphismRoute { automatic, exhaustive, extension };

struct AutomorphismResult {
  bool computed = false;
  std::string route;
  std::string reason;  // when not computed
  std::vector<SubsystemAutomorphism> elements;
};

/// All w in W mapping the set pi onto itself. The exhaustive route walks W
/// (|W| <= 3e6); the extension route enumerates form-preserving root maps
/// extending each permutation of pi and tests membership in W.
AutomorphismResult subsystem_automorphisms_in_W(const RootSystem& rs, const SubsystemSpec& spec,
                                                AutomorphismRoute route = AutomorphismRoute::automatic);

/// True when the permutation perm of pi is a symmetry of the Dynkin diagram
/// of pi other than the identity on some component.
bool is_nontrivial_permutation(const std::vector<int>& perm);

}  // namespace sph

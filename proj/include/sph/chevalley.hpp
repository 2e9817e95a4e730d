#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sph/rootsys.hpp"

namespace sph {

/// Lie algebra with Chevalley basis {e_a : a in Phi} u {h_1..h_rank}.
/// Basis index of e_a is the root index of a; h_i has index |Phi| + i.
///
/// Sign convention: positive roots are totally ordered by root index
/// (height, then reverse-lexicographic). For each non-simple positive root
/// xi the extraspecial pair (a, b) has a = a_i with i minimal such that
/// xi - a_i is a root, and N_{a,b} = +(p+1) where p is maximal with
/// b - p a in Phi. All other constants follow from N_{-a,-b} = -N_{a,b}
/// and the usual quadratic relations.
class ChevalleyAlgebra {
 public:
  explicit ChevalleyAlgebra(const RootSystem& rs);

  const RootSystem& root_system() const { return *rs_; }
  int dim() const { return rs_->num_roots() + rs_->rank(); }
  int h_index(int i) const { return rs_->num_roots() + i; }

  /// N_{a,b} for root indices; 0 when a+b is not a root.
  int structure_constant(int a, int b) const;

  /// Coefficients of the coroot a^vee in the basis h_1..h_rank.
  IntVec coroot(int a) const;

  using Sparse = std::vector<std::pair<int, std::int64_t>>;
  /// [x, y] for basis indices, as sparse (index, coefficient) pairs.
  Sparse bracket(int x, int y) const;

 private:
  const RootSystem* rs_;
  std::vector<int> sum_;  // sum_[a * |Phi| + b] = index of a+b or -1
  std::vector<int> n_;    // N_{a,b}
};

/// Jordan types with the family's parity rule: B/D even parts, C odd parts
/// occur with even multiplicity. Sizes: n+1 (A), 2n+1 (B), 2n (C, D).
bool is_valid_partition(Family family, int n, const std::vector<int>& partition);
int natural_dimension(Family family, int n);
/// All partitions of m in non-increasing order, listed in reverse
/// lexicographic order.
std::vector<std::vector<int>> partitions_of(int m);
std::vector<std::vector<int>> valid_partitions(Family family, int n);
std::vector<int> conjugate_partition(const std::vector<int>& partition);

struct NilpotentSpec {
  enum class Kind { roots, partition };
  Kind kind = Kind::roots;
  /// e = sum of e_{-gamma} over these linearly independent roots.
  std::vector<IntVec> roots;
  std::vector<int> partition;

  static NilpotentSpec from_roots(std::vector<IntVec> roots);
  static NilpotentSpec from_partition(std::vector<int> partition);
};

/// Positive roots whose negative root vectors sum to a nilpotent of the
/// given Jordan type, built from blocks: equal pairs (k,k) as a GL_k chain,
/// a single symplectic even part or orthogonal odd part as a regular
/// element of the matching classical block, and orthogonal odd pairs (a,1)
/// as a regular element of D_{(a+1)/2}. nullopt for shapes not covered
/// (e.g. two orthogonal odd parts >= 3 in the same pair).
std::optional<std::vector<IntVec>> partition_root_set(const RootSystem& rs, const std::vector<int>& partition);

/// dim of the centralizer of e in Lie(G), via rank of ad e over F_p.
/// Partition specs use partition_root_set when available and the natural
/// representation otherwise. Throws for bad p.
int centralizer_dim_nilpotent(const ChevalleyAlgebra& alg, const NilpotentSpec& spec, std::uint32_t p);

/// dim of the centralizer of e = sum e_{-gamma} in the reductive subalgebra
/// t + sum_{a in closure} g_a (closure given by root indices).
int centralizer_dim_in_subalgebra(const ChevalleyAlgebra& alg, const std::vector<IntVec>& roots,
                                  const std::vector<int>& closure, std::uint32_t p);

/// Centralizer dimension of a nilpotent of the given Jordan type in the
/// natural matrix Lie algebra (sl, so or sp), by solving YX = XY inside
/// the algebra over F_p.
int centralizer_dim_natural(Family family, int n, const std::vector<int>& partition, std::uint32_t p);

/// Closed form: dim G minus the standard centralizer dimension.
int class_dim_unipotent_partition(Family family, int n, const std::vector<int>& partition);

int class_dim_semisimple(const RootSystem& rs, const SubsystemSpec& spec);

}  // namespace sph

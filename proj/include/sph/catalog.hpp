#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sph/chevalley.hpp"
#include "sph/rootsys.hpp"
#include "sph/weyl.hpp"

namespace sph {

/// Symbolic scalar exp(2 pi i * root) * prod_k param_k^exps[k]; root is
/// kept in [0, 1).
struct Scalar {
  Rational root;
  std::vector<int> exps;

  static Scalar unit(int nparams, Rational root = Rational(0));
  static Scalar param(int nparams, int k, int e = 1);

  bool is_one() const;
  bool has_params() const;
  Scalar pow(int e) const;
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) = default;
};

/// Semisimple part of a class, either an h-word (exceptional types) or an
/// eigenvalue pattern on e_1..e_m of the natural representation (classical
/// types; for B, C, D the f-part is inverse and B adds the eigenvalue 1).
struct TorusWord {
  enum class Form { h_word, eigenvalues };
  Form form = Form::h_word;
  std::vector<std::string> params;
  /// h-word: (simple root index, scalar) pairs.
  std::vector<std::pair<int, Scalar>> factors;
  std::vector<Scalar> eigen;
  /// Human-readable constraint on the parameters, e.g. "c^3!=0,1".
  std::string constraint;
};

enum class ClassKind { semisimple, unipotent, mixed, all };
std::string kind_name(ClassKind kind);

struct ClassDescriptor {
  Family family = Family::A;
  int rank = 0;
  ClassKind kind = ClassKind::semisimple;
  std::optional<TorusWord> torus;
  std::optional<NilpotentSpec> unipotent;
  std::string representative;
  std::string label;
  int expected_dim = 0;
  bool is_symmetric = false;
  /// Table the class belongs to, e.g. "table:C_n" or "table:E7".
  std::string anchor;
  std::vector<std::string> notes;

  std::string type_name() const;
};

/// t(alpha) for every root index of rs.
std::vector<Scalar> torus_character(const RootSystem& rs, const TorusWord& t);
/// Root indices with t(alpha) = 1 for generic parameters.
std::vector<int> generic_centralizer(const RootSystem& rs, const TorusWord& t);

/// The classification list for the type, in a fixed order: semisimple,
/// unipotent, mixed. Up to central elements and, for D, diagram
/// automorphisms. (A,1) yields a single sentinel of kind `all`.
std::vector<ClassDescriptor> spherical_classes(Family family, int rank);

/// An involution w with l(w) + rk(1-w) = expected_dim; throws Error when
/// none exists.
WeylElement certify_dimension_identity(const RootSystem& rs, const ClassDescriptor& d);

/// True when the torus part squares to a central element, or when some
/// element with central square has the same centralizer root set.
bool is_symmetric_flag(const RootSystem& rs, const ClassDescriptor& d);

std::vector<std::vector<int>> spherical_unipotent_partitions(Family family, int n);

/// A non-spherical class excluded by an explicit Bruhat-cell construction,
/// with the cells s_{g1} s_{g2} ... it is shown to meet (any one suffices).
struct WitnessSpec {
  ClassDescriptor cls;
  std::string reason;
  std::vector<std::vector<IntVec>> cells;
};

std::vector<WitnessSpec> nonspherical_witness_specs(Family family, int rank);

/// s_{roots[0]} s_{roots[1]} ...
WeylElement reflection_product(const RootSystem& rs, const std::vector<IntVec>& roots);

/// Smallest prime >= 5 that is good for rs and, for type A_n, prime to n+1.
std::uint32_t oracle_prime(const RootSystem& rs);

/// "(3,2^2,1)".
std::string partition_string(const std::vector<int>& partition);

}  // namespace sph

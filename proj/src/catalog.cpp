#include "sph/catalog.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "sph/fp.hpp"

namespace sph {

namespace {

Rational frac(const Rational& r) {
  std::int64_t n = r.num() % r.den();
  if (n < 0) n += r.den();
  return Rational(n, r.den());
}

}  // namespace

Scalar Scalar::unit(int nparams, Rational root) { return Scalar{frac(root), std::vector<int>(nparams, 0)}; }

Scalar Scalar::param(int nparams, int k, int e) {
  Scalar s = unit(nparams);
  s.exps[k] = e;
  return s;
}

bool Scalar::has_params() const {
  return std::any_of(exps.begin(), exps.end(), [](int e) { return e != 0; });
}

bool Scalar::is_one() const { return root.num() == 0 && !has_params(); }

Scalar Scalar::pow(int e) const {
  Scalar s{frac(root * Rational(e)), exps};
  for (auto& x : s.exps) x *= e;
  return s;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.exps.size() != b.exps.size()) throw Error("Scalar: parameter count mismatch");
  Scalar s{frac(a.root + b.root), a.exps};
  for (std::size_t k = 0; k < s.exps.size(); ++k) s.exps[k] += b.exps[k];
  return s;
}

std::string kind_name(ClassKind kind) {
  switch (kind) {
    case ClassKind::semisimple: return "semisimple";
    case ClassKind::unipotent: return "unipotent";
    case ClassKind::mixed: return "mixed";
    case ClassKind::all: return "all";
  }
  return "?";
}

std::string ClassDescriptor::type_name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }

std::string partition_string(const std::vector<int>& lam) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < lam.size();) {
    std::size_t j = i;
    while (j < lam.size() && lam[j] == lam[i]) ++j;
    if (i) os << ',';
    os << lam[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  os << ')';
  return os.str();
}

std::vector<Scalar> torus_character(const RootSystem& rs, const TorusWord& t) {
  int np = static_cast<int>(t.params.size());
  std::vector<Scalar> out;
  out.reserve(rs.num_roots());
  if (t.form == TorusWord::Form::h_word) {
    std::vector<Scalar> simple(rs.rank(), Scalar::unit(np));
    for (const auto& [i, c] : t.factors)
      for (int j = 0; j < rs.rank(); ++j) simple[j] = simple[j] * c.pow(rs.cartan()(i, j));
    for (const auto& beta : rs.roots()) {
      Scalar s = Scalar::unit(np);
      for (int j = 0; j < rs.rank(); ++j) s = s * simple[j].pow(beta[j]);
      out.push_back(s);
    }
  } else {
    for (const auto& beta : rs.roots()) {
      auto eps = root_to_epsilon(rs, beta);
      if (eps.size() != t.eigen.size()) throw Error("torus_character: eigenvalue pattern has wrong length");
      Scalar s = Scalar::unit(np);
      for (std::size_t i = 0; i < eps.size(); ++i) s = s * t.eigen[i].pow(eps[i]);
      out.push_back(s);
    }
  }
  return out;
}

std::vector<int> generic_centralizer(const RootSystem& rs, const TorusWord& t) {
  auto chi = torus_character(rs, t);
  std::vector<int> out;
  for (int a = 0; a < rs.num_roots(); ++a)
    if (chi[a].is_one()) out.push_back(a);
  return out;
}

std::uint32_t oracle_prime(const RootSystem& rs) {
  for (std::uint32_t p = 5;; p += 2)
    if (is_prime(p) && rs.is_good_prime(static_cast<int>(p)) &&
        (rs.family() != Family::A || (rs.rank() + 1) % p != 0))
      return p;
}

WeylElement reflection_product(const RootSystem& rs, const std::vector<IntVec>& roots) {
  WeylElement w = WeylElement::identity(rs);
  for (const auto& g : roots) w = w * WeylElement::reflection(rs, g);
  return w;
}

std::vector<std::vector<int>> spherical_unipotent_partitions(Family family, int n) {
  auto make = [](std::vector<std::pair<int, int>> runs) {
    std::vector<int> lam;
    for (auto [part, mult] : runs) lam.insert(lam.end(), mult, part);
    return lam;
  };
  std::vector<std::vector<int>> out;
  switch (family) {
    case Family::A:
      for (int m = 1; 2 * m <= n + 1; ++m) out.push_back(make({{2, m}, {1, n + 1 - 2 * m}}));
      break;
    case Family::C:
      for (int m = 1; m <= n; ++m) out.push_back(make({{2, m}, {1, 2 * n - 2 * m}}));
      break;
    case Family::D:
      for (int m = 1; m <= n / 2; ++m) out.push_back(make({{2, 2 * m}, {1, 2 * n - 4 * m}}));
      for (int m = 0; m <= n / 2 - 1; ++m) out.push_back(make({{3, 1}, {2, 2 * m}, {1, 2 * n - 3 - 4 * m}}));
      break;
    case Family::B:
      for (int m = 1; m <= n / 2; ++m) out.push_back(make({{2, 2 * m}, {1, 2 * n + 1 - 4 * m}}));
      for (int m = 0; m <= (n - 1) / 2; ++m) out.push_back(make({{3, 1}, {2, 2 * m}, {1, 2 * n - 2 - 4 * m}}));
      break;
    default: throw Error("spherical_unipotent_partitions: classical families only");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table construction.

namespace {

std::string param_text(const Scalar& s, const std::vector<std::string>& params) {
  std::string out;
  if (s.root == Rational(1, 2)) out = "-";
  else if (s.root.num() != 0) throw Error("param_text: only signs are printable in eigenvalue patterns");
  bool any = false;
  for (std::size_t k = 0; k < s.exps.size(); ++k) {
    if (!s.exps[k]) continue;
    out += params[k];
    if (s.exps[k] != 1) out += "^" + std::to_string(s.exps[k]);
    any = true;
  }
  if (!any) out += "1";
  return out;
}

void append_runs(std::vector<std::string>& items, const std::vector<Scalar>& vals,
                 const std::vector<std::string>& params) {
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    std::string v = param_text(vals[i], params);
    int k = static_cast<int>(j - i);
    if (k == 1) items.push_back(v);
    else if (v == "1") items.push_back("I_" + std::to_string(k));
    else if (v == "-1") items.push_back("-I_" + std::to_string(k));
    else items.push_back(v + " I_" + std::to_string(k));
    i = j;
  }
}

std::string pattern_text(Family family, const TorusWord& t) {
  std::vector<std::string> items;
  if (family == Family::B) items.push_back("1");
  append_runs(items, t.eigen, t.params);
  if (family != Family::A) {
    std::vector<Scalar> inv;
    for (const auto& s : t.eigen) inv.push_back(s.pow(-1));
    append_runs(items, inv, t.params);
  }
  std::string out = "diag(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out + ")";
}

TorusWord pattern(std::vector<std::string> params, std::vector<std::pair<Scalar, int>> runs,
                  std::string constraint = "") {
  TorusWord t;
  t.form = TorusWord::Form::eigenvalues;
  t.params = std::move(params);
  for (auto& [s, k] : runs) t.eigen.insert(t.eigen.end(), k, s);
  t.constraint = std::move(constraint);
  return t;
}

TorusWord hword(std::vector<std::string> params, std::vector<std::pair<int, Scalar>> factors,
                std::string constraint = "") {
  TorusWord t;
  t.params = std::move(params);
  t.factors = std::move(factors);
  t.constraint = std::move(constraint);
  return t;
}

// Positive root with the given epsilon coordinates (1-based index, coefficient).
IntVec er(const RootSystem& rs, std::initializer_list<std::pair<int, int>> coords) {
  int m = rs.family() == Family::A ? rs.rank() + 1 : rs.rank();
  std::vector<int> v(m, 0);
  for (auto [i, c] : coords) v[i - 1] += c;
  return root_from_epsilon(rs, v);
}

IntVec simple_root(const RootSystem& rs, int i) { return rs.simple_root(i - 1); }

std::vector<IntVec> simple_roots(const RootSystem& rs, std::initializer_list<int> nodes) {
  std::vector<IntVec> out;
  for (int i : nodes) out.push_back(simple_root(rs, i));
  return out;
}

class Builder {
 public:
  Builder(Family family, int rank) : rs_(RootSystem::build(family, rank)) {}

  const RootSystem& rs() const { return rs_; }

  ClassDescriptor start(ClassKind kind) const {
    ClassDescriptor d;
    d.family = rs_.family();
    d.rank = rs_.rank();
    d.kind = kind;
    std::string f(1, family_letter(rs_.family()));
    d.anchor = "table:" + (rs_.family() <= Family::D ? f + "_n" : d.type_name());
    return d;
  }

  ClassDescriptor semisimple(TorusWord t, const std::string& name) const {
    ClassDescriptor d = start(ClassKind::semisimple);
    std::string expr = t.form == TorusWord::Form::eigenvalues ? pattern_text(rs_.family(), t) : "";
    d.representative = expr.empty() ? name : name.empty() ? expr : name + "=" + expr;
    d.label = t.constraint.empty() ? "-" : t.constraint;
    d.torus = std::move(t);
    return d;
  }

  ClassDescriptor unipotent_partition(const std::vector<int>& lam) const {
    ClassDescriptor d = start(ClassKind::unipotent);
    d.unipotent = NilpotentSpec::from_partition(lam);
    d.representative = "u";
    d.label = partition_string(lam);
    return d;
  }

  ClassDescriptor unipotent_roots(std::vector<IntVec> roots, const std::string& label) const {
    ClassDescriptor d = start(ClassKind::unipotent);
    d.unipotent = NilpotentSpec::from_roots(std::move(roots));
    d.representative = "u";
    d.label = label;
    return d;
  }

  ClassDescriptor mixed(TorusWord t, std::vector<IntVec> roots, const std::string& rep, const std::string& label) const {
    ClassDescriptor d = start(ClassKind::mixed);
    d.torus = std::move(t);
    d.unipotent = NilpotentSpec::from_roots(std::move(roots));
    d.representative = rep;
    d.label = label;
    return d;
  }

  /// Fills expected_dim and is_symmetric.
  void finish(ClassDescriptor& d) {
    int dim_g = rs_.num_roots() + rs_.rank();
    switch (d.kind) {
      case ClassKind::all: d.expected_dim = 2; break;
      case ClassKind::semisimple:
        d.expected_dim = rs_.num_roots() - static_cast<int>(generic_centralizer(rs_, *d.torus).size());
        break;
      case ClassKind::unipotent:
        if (d.unipotent->kind == NilpotentSpec::Kind::partition && rs_.family() <= Family::D)
          d.expected_dim = class_dim_unipotent_partition(rs_.family(), rs_.rank(), d.unipotent->partition);
        else
          d.expected_dim = dim_g - centralizer_dim_nilpotent(algebra(), *d.unipotent, oracle_prime(rs_));
        break;
      case ClassKind::mixed:
        d.expected_dim = dim_g - centralizer_dim_in_subalgebra(algebra(), d.unipotent->roots,
                                                               generic_centralizer(rs_, *d.torus), oracle_prime(rs_));
        break;
    }
    d.is_symmetric = d.kind == ClassKind::semisimple && is_symmetric_flag(rs_, d);
  }

 private:
  const ChevalleyAlgebra& algebra() {
    if (!alg_) alg_ = std::make_unique<ChevalleyAlgebra>(rs_);
    return *alg_;
  }

  RootSystem rs_;
  std::unique_ptr<ChevalleyAlgebra> alg_;
};

const std::string kUpToCenter = "up to a central element";
const std::string kDistinct = "distinct parameters give distinct classes";

Scalar sgn(int np, bool negative) { return Scalar::unit(np, Rational(negative ? 1 : 0, 2)); }

void type_a(Builder& b, std::vector<ClassDescriptor>& out) {
  int n = b.rs().rank();
  if (n == 1) {
    ClassDescriptor d = b.start(ClassKind::all);
    d.representative = "all classes";
    d.label = "-";
    d.notes.push_back("every conjugacy class of SL_2 is spherical");
    out.push_back(d);
    return;
  }
  for (int m = 1; 2 * m <= n + 1; ++m) {
    auto t = pattern({"lambda", "mu"}, {{Scalar::param(2, 0), m}, {Scalar::param(2, 1), n + 1 - m}}, "lambda!=mu");
    auto d = b.semisimple(t, "");
    d.notes.push_back(kUpToCenter);
    out.push_back(d);
  }
  for (const auto& lam : spherical_unipotent_partitions(Family::A, n)) out.push_back(b.unipotent_partition(lam));
}

void type_c(Builder& b, std::vector<ClassDescriptor>& out) {
  int n = b.rs().rank();
  for (int l = 1; 2 * l <= n; ++l) {
    auto d = b.semisimple(pattern({}, {{sgn(0, true), l}, {sgn(0, false), n - l}}), "sigma_" + std::to_string(l));
    d.notes.push_back("up to sign");
    out.push_back(d);
  }
  out.push_back(b.semisimple(pattern({"lambda"}, {{Scalar::param(1, 0), n}}, "lambda^2!=0,1"), "a_lambda"));
  out.push_back(b.semisimple(
      pattern({"lambda"}, {{Scalar::param(1, 0), 1}, {sgn(1, false), n - 1}}, "lambda^2!=0,1"), "c_lambda"));
  for (const auto& lam : spherical_unipotent_partitions(Family::C, n)) out.push_back(b.unipotent_partition(lam));
  for (int l = 1; 2 * l <= n; ++l) {
    auto t = pattern({}, {{sgn(0, true), l}, {sgn(0, false), n - l}});
    std::string rep = "sigma_" + std::to_string(l) + "*u";
    std::string lam = partition_string(spherical_unipotent_partitions(Family::C, n).front());
    auto d = b.mixed(t, {er(b.rs(), {{1, 2}})}, rep, lam + " in Sp_" + std::to_string(2 * l));
    d.notes.push_back("up to sign");
    if (2 * l == n) d.notes.push_back("the two factors are exchanged up to sign");
    out.push_back(d);
    if (2 * l != n) {
      auto d2 = b.mixed(t, {er(b.rs(), {{n, 2}})}, rep, lam + " in Sp_" + std::to_string(2 * n - 2 * l));
      d2.notes.push_back("up to sign");
      out.push_back(d2);
    }
  }
}

void orthogonal_unipotents(Builder& b, Family family, std::vector<ClassDescriptor>& out) {
  int n = b.rs().rank();
  for (const auto& lam : spherical_unipotent_partitions(family, n)) {
    auto d = b.unipotent_partition(lam);
    if (lam.front() == 3 && std::count(lam.begin(), lam.end(), 2) == 0)
      d.notes.push_back(
          "m=0 member of the (3,2^2m,1^k) family: the statement starts at m=1, the proofs cover this shape; "
          "kept after the finite-field check");
    if (family == Family::D && lam.front() == 2 && static_cast<int>(lam.size()) * 2 == 2 * n)
      d.notes.push_back("very even: two classes exchanged by the diagram automorphism, stored once");
    out.push_back(d);
  }
}

void type_d(Builder& b, std::vector<ClassDescriptor>& out) {
  int n = b.rs().rank();
  for (int l = 1; 2 * l <= n; ++l) {
    auto d = b.semisimple(pattern({}, {{sgn(0, true), l}, {sgn(0, false), n - l}}), "sigma_" + std::to_string(l));
    d.notes.push_back(kUpToCenter);
    out.push_back(d);
  }
  auto a = b.semisimple(pattern({"lambda"}, {{Scalar::param(1, 0), n}}, "lambda^2!=0,1"), "a_lambda");
  a.notes.push_back("up to the diagram automorphism");
  out.push_back(a);
  out.push_back(b.semisimple(
      pattern({"lambda"}, {{Scalar::param(1, 0), 1}, {sgn(1, false), n - 1}}, "lambda^2!=0,1"), "c_lambda"));
  orthogonal_unipotents(b, Family::D, out);
}

void type_b(Builder& b, std::vector<ClassDescriptor>& out) {
  int n = b.rs().rank();
  for (int l = 1; l <= n; ++l)
    out.push_back(
        b.semisimple(pattern({}, {{sgn(0, true), l}, {sgn(0, false), n - l}}), "rho_" + std::to_string(l)));
  out.push_back(b.semisimple(
      pattern({"lambda"}, {{Scalar::param(1, 0), 1}, {sgn(1, false), n - 1}}, "lambda^2!=0,1"), "d_lambda"));
  out.push_back(b.semisimple(pattern({"lambda"}, {{Scalar::param(1, 0), n}}, "lambda^2!=0,1"), "b_lambda"));
  orthogonal_unipotents(b, Family::B, out);
  auto rho = pattern({}, {{sgn(0, true), n}});
  for (int m = 1; 2 * m <= n; ++m) {
    std::vector<IntVec> roots;
    for (int k = 1; k <= m; ++k) roots.push_back(er(b.rs(), {{2 * k - 1, 1}, {2 * k, -1}}));
    std::vector<int> lam(2 * m, 2);
    lam.insert(lam.end(), 2 * n - 4 * m, 1);
    out.push_back(b.mixed(rho, roots, "rho_" + std::to_string(n) + "*u",
                          partition_string(lam) + " in SO_" + std::to_string(2 * n)));
  }
}

Scalar cpow(int e) { return Scalar::param(1, 0, e); }
Scalar unit0(Rational r) { return Scalar::unit(0, r); }

void type_e(Builder& b, std::vector<ClassDescriptor>& out) {
  const RootSystem& rs = b.rs();
  Scalar m1 = unit0(Rational(1, 2));
  switch (rs.rank()) {
    case 6: {
      auto p1 = b.semisimple(hword({}, {{0, m1}, {3, m1}, {5, m1}}), "p1=h1(-1)h4(-1)h6(-1)");
      p1.notes.push_back(kUpToCenter);
      out.push_back(p1);
      auto p2 = b.semisimple(
          hword({"c"}, {{0, cpow(2)}, {1, cpow(3)}, {2, cpow(4)}, {3, cpow(6)}, {4, cpow(5)}, {5, cpow(4)}},
                "c^3!=0,1"),
          "p2_c=h1(c^2)h2(c^3)h3(c^4)h4(c^6)h5(c^5)h6(c^4)");
      p2.notes.push_back(kDistinct);
      p2.notes.push_back("c and c*zeta3 give the same class up to a central element");
      out.push_back(p2);
      out.push_back(b.unipotent_roots(simple_roots(rs, {1}), "A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {1, 4}), "2A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {1, 4, 6}), "3A1"));
      break;
    }
    case 7: {
      Scalar z = unit0(Rational(1, 4)), mz = unit0(Rational(3, 4));
      auto q1 = b.semisimple(hword({}, {{1, z}, {4, mz}, {5, m1}, {6, z}}), "q1=h2(zeta)h5(-zeta)h6(-1)h7(zeta)");
      q1.notes.push_back(kUpToCenter);
      out.push_back(q1);
      auto q2 = b.semisimple(hword({}, {{2, m1}, {4, m1}, {6, m1}}), "q2=h3(-1)h5(-1)h7(-1)");
      q2.notes.push_back(kUpToCenter);
      out.push_back(q2);
      auto q3 = b.semisimple(hword({"a"},
                                   {{0, cpow(2)}, {1, cpow(3)}, {2, cpow(4)}, {3, cpow(6)}, {4, cpow(5)},
                                    {5, cpow(4)}, {6, cpow(3)}},
                                   "a^2!=0,1"),
                             "q3_a=h1(a^2)h2(a^3)h3(a^4)h4(a^6)h5(a^5)h6(a^4)h7(a^3)");
      q3.notes.push_back(kDistinct);
      q3.notes.push_back("a and -a differ by the nontrivial central element");
      out.push_back(q3);
      out.push_back(b.unipotent_roots(simple_roots(rs, {1}), "A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {1, 4}), "2A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {3, 5, 7}), "(3A1)'"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {2, 5, 7}), "(3A1)''"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {2, 3, 5, 7}), "4A1"));
      break;
    }
    case 8: {
      out.push_back(b.semisimple(hword({}, {{1, m1}, {2, m1}}), "r1=h2(-1)h3(-1)"));
      out.push_back(b.semisimple(hword({}, {{1, m1}, {4, m1}, {6, m1}}), "r2=h2(-1)h5(-1)h7(-1)"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {1}), "A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {1, 4}), "2A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {2, 5, 7}), "3A1"));
      out.push_back(b.unipotent_roots(simple_roots(rs, {2, 3, 5, 7}), "4A1"));
      break;
    }
    default: throw Error("spherical_classes: invalid E rank");
  }
}

void type_f(Builder& b, std::vector<ClassDescriptor>& out) {
  const RootSystem& rs = b.rs();
  Scalar m1 = unit0(Rational(1, 2));
  out.push_back(b.semisimple(hword({}, {{1, m1}, {3, m1}}), "f1=h_a2(-1)h_a4(-1)"));
  out.push_back(b.semisimple(hword({}, {{2, m1}}), "f2=h_a3(-1)"));
  out.push_back(b.unipotent_roots(simple_roots(rs, {1}), "A1"));
  out.push_back(b.unipotent_roots(simple_roots(rs, {4}), "A1~"));
  out.push_back(b.unipotent_roots(simple_roots(rs, {1, 4}), "A1+A1~"));
  auto g = b.mixed(hword({}, {{2, m1}}), {rs.highest_root()}, "f2*x_b1(1)", "A1 in B4");
  g.notes.push_back("class dimension equals dim B");
  out.push_back(g);
}

void type_g(Builder& b, std::vector<ClassDescriptor>& out) {
  const RootSystem& rs = b.rs();
  out.push_back(b.semisimple(hword({}, {{0, unit0(Rational(1, 2))}}), "h_a1(-1)"));
  auto z = b.semisimple(hword({}, {{0, unit0(Rational(1, 3))}}), "h_a1(zeta)");
  z.notes.push_back("zeta a primitive third root of unity");
  out.push_back(z);
  out.push_back(b.unipotent_roots(simple_roots(rs, {2}), "A1"));
  out.push_back(b.unipotent_roots(simple_roots(rs, {1}), "A1~"));
}

}  // namespace

std::vector<ClassDescriptor> spherical_classes(Family family, int rank) {
  Builder b(family, rank);
  std::vector<ClassDescriptor> out;
  switch (family) {
    case Family::A: type_a(b, out); break;
    case Family::B: type_b(b, out); break;
    case Family::C: type_c(b, out); break;
    case Family::D: type_d(b, out); break;
    case Family::E: type_e(b, out); break;
    case Family::F: type_f(b, out); break;
    case Family::G: type_g(b, out); break;
  }
  for (auto& d : out) b.finish(d);
  return out;
}

WeylElement certify_dimension_identity(const RootSystem& rs, const ClassDescriptor& d) {
  if (rs.family() != d.family || rs.rank() != d.rank) throw Error("certify_dimension_identity: type mismatch");
  InvolutionSearch opts;
  opts.first_only = true;
  auto found = involutions_with_value(rs, d.expected_dim, opts);
  if (found.empty())
    throw Error("certification failure: no involution w with l(w)+rk(1-w)=" + std::to_string(d.expected_dim) +
                " for " + d.type_name() + " " + d.representative + " " + d.label);
  return found.front();
}

bool is_symmetric_flag(const RootSystem& rs, const ClassDescriptor& d) {
  if (!d.torus || d.kind != ClassKind::semisimple) return false;
  auto chi = torus_character(rs, *d.torus);
  if (std::all_of(chi.begin(), chi.end(), [](const Scalar& s) { return s.pow(2).is_one(); })) return true;
  // Same centralizer as some element acting by +-1 on every root.
  std::vector<bool> zero(rs.num_roots());
  for (int a = 0; a < rs.num_roots(); ++a) zero[a] = chi[a].is_one();
  for (int mask = 0; mask < (1 << rs.rank()); ++mask) {
    bool same = true;
    for (int a = 0; a < rs.num_roots() && same; ++a) {
      int parity = 0;
      for (int j = 0; j < rs.rank(); ++j)
        if (mask >> j & 1) parity += rs.root(a)[j];
      same = (parity % 2 == 0) == zero[a];
    }
    if (same) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Witnesses of non-sphericality.

std::vector<WitnessSpec> nonspherical_witness_specs(Family family, int rank) {
  Builder b(family, rank);
  const RootSystem& rs = b.rs();
  int n = rank;
  std::vector<WitnessSpec> out;
  auto a = [&](int i) { return simple_root(rs, i); };
  auto add = [&](ClassDescriptor d, std::string reason, std::vector<std::vector<IntVec>> cells) {
    b.finish(d);
    d.notes.clear();
    out.push_back({std::move(d), std::move(reason), std::move(cells)});
  };
  auto both = [&](int i, int j) { return std::vector<std::vector<IntVec>>{{a(i), a(j)}, {a(j), a(i)}}; };
  auto lam_text = [](std::vector<std::pair<int, int>> runs) {
    std::vector<int> lam;
    for (auto [p, k] : runs) lam.insert(lam.end(), k, p);
    return partition_string(lam);
  };
  Scalar L = Scalar::param(1, 0), Li = Scalar::param(1, 0, -1), one = sgn(1, false), neg = sgn(1, true);

  switch (family) {
    case Family::A: {
      if (n < 2) break;
      add(b.unipotent_roots({a(1), a(2)}, lam_text({{3, 1}, {1, n - 2}})), "part >= 3: regular in an A2 Levi",
          both(1, 2));
      add(b.semisimple(pattern({"lambda"}, {{L, 1}, {Li, 1}, {one, n - 1}}, "lambda^2!=0,1"), ""),
          "three eigenvalues: regular in an A2 Levi", both(1, 2));
      auto t = pattern({"lambda", "mu"}, {{Scalar::param(2, 0), 2}, {Scalar::param(2, 1), n - 1}}, "lambda!=mu");
      add(b.mixed(t, {a(1)}, "diag(lambda I_2,mu I_" + std::to_string(n - 1) + ")*u", lam_text({{2, 1}, {1, n - 1}})),
          "non-central s with u != 1", {{a(1), a(2)}});
      break;
    }
    case Family::C: {
      if (n < 2) break;
      auto c = pattern({"lambda"}, {{L, 1}, {one, n - 1}}, "lambda^2!=0,1");
      auto beta2 = er(rs, {{2, 2}});
      add(b.mixed(c, {beta2}, "c_lambda*u", lam_text({{2, 1}, {1, 2 * n - 2}}) + " in Sp_" + std::to_string(2 * n - 2)),
          "c_lambda with unipotent part", {{a(1), beta2}});
      auto sigma = pattern({}, {{sgn(0, true), 1}, {sgn(0, false), n - 1}});
      add(b.mixed(sigma, {er(rs, {{1, 2}}), beta2}, "sigma_1*u",
                  "(2) in Sp_2 x " + lam_text({{2, 1}, {1, 2 * n - 4}}) + " in Sp_" + std::to_string(2 * n - 2)),
          "both components of u nontrivial", {{a(1), beta2}});
      if (n >= 3) {
        add(b.mixed(sigma, {a(2)}, "sigma_1*u",
                    lam_text({{2, 2}, {1, 2 * n - 6}}) + " in Sp_" + std::to_string(2 * n - 2)),
            "repeated part 2 in a component", {{a(1), a(2)}});
      }
      add(b.unipotent_roots({a(n - 1), a(n)}, lam_text({{4, 1}, {1, 2 * n - 4}})),
          "even part >= 4: regular in a C2 Levi", both(n - 1, n));
      if (n >= 3) {
        add(b.unipotent_roots({a(1), a(2)}, lam_text({{3, 2}, {1, 2 * n - 6}})),
            "repeated part 3: regular in an A2 Levi", both(1, 2));
        add(b.semisimple(pattern({"lambda"}, {{L, 1}, {one, 1}, {neg, 1}, {one, n - 3}}, "lambda^2!=0,1"), "s''"),
            "four eigenvalues: regular in an A2 Levi", both(1, 2));
        add(b.semisimple(pattern({"lambda"}, {{L, 1}, {Li, 1}, {one, n - 2}}, "lambda^2!=0,1"), "r'"),
            "three eigenvalues, lambda repeated: regular in an A2 Levi", both(1, 2));
      }
      break;
    }
    case Family::D: {
      if (n < 4) break;
      add(b.semisimple(pattern({"lambda"}, {{L, 1}, {one, 1}, {Li, 1}, {one, n - 3}}, "lambda^2!=0,1"), "r"),
          "three eigenvalues, lambda repeated: regular in an A2 Levi", both(1, 2));
      auto c = pattern({"lambda"}, {{L, 1}, {one, n - 1}}, "lambda^2!=0,1");
      auto g23 = er(rs, {{2, 1}, {3, 1}});
      std::string so = " in SO_" + std::to_string(2 * n - 2);
      add(b.mixed(c, {a(2)}, "c_lambda*u", lam_text({{2, 2}, {1, 2 * n - 6}}) + so), "c_lambda with repeated part 2",
          {{a(1), a(2)}});
      add(b.mixed(c, {a(2), g23}, "c_lambda*u", lam_text({{3, 1}, {1, 2 * n - 5}}) + so), "c_lambda with part 3",
          {{a(1), a(2), g23}});
      auto sigma = pattern({}, {{sgn(0, true), 1}, {sgn(0, false), n - 1}});
      add(b.mixed(sigma, {a(2), g23}, "sigma_1*u", lam_text({{3, 1}, {1, 2 * n - 5}}) + so),
          "sigma_1 with part 3 in a component", {{a(1), a(2), g23}});
      add(b.mixed(sigma, {a(2)}, "sigma_1*u", lam_text({{2, 2}, {1, 2 * n - 6}}) + so),
          "sigma_1 with repeated part 2 in a component", {{a(1), a(2)}});
      add(b.unipotent_roots({a(1), a(2), g23}, lam_text({{5, 1}, {1, 2 * n - 5}})), "odd part >= 5",
          {{a(1), g23}, {a(1), a(2), g23}});
      add(b.unipotent_roots({a(1), a(2)}, lam_text({{3, 2}, {1, 2 * n - 6}})), "repeated part 3: regular in an A2 Levi",
          both(1, 2));
      break;
    }
    case Family::B: {
      if (n < 2) break;
      auto rho = pattern({}, {{sgn(0, true), n}});
      auto e2 = er(rs, {{2, 1}});
      add(b.mixed(rho, {er(rs, {{1, 1}, {2, -1}}), er(rs, {{1, 1}, {2, 1}})}, "rho_" + std::to_string(n) + "*u",
                  lam_text({{3, 1}, {1, 2 * n - 3}}) + " in SO_" + std::to_string(2 * n)),
          "rho_n with part 3", {{a(1), e2}});
      add(b.semisimple(pattern({"lambda"}, {{one, n - 2}, {L, 1}, {neg, 1}}, "lambda^2!=0,1"), ""),
          "four eigenvalues: regular in a B2 Levi", both(n - 1, n));
      add(b.unipotent_roots({a(n - 1), a(n)}, lam_text({{5, 1}, {1, 2 * n - 4}})), "odd part >= 5: regular in a B2 Levi",
          both(n - 1, n));
      if (n >= 3) {
        add(b.semisimple(pattern({"lambda"}, {{L, 1}, {one, 1}, {Li, 1}, {one, n - 3}}, "lambda^2!=0,1"), ""),
            "three eigenvalues with lambda and 1 repeated: regular in an A2 Levi", both(1, 2));
        add(b.unipotent_roots({a(1), a(2)}, lam_text({{3, 2}, {1, 2 * n - 5}})),
            "repeated part 3: regular in an A2 Levi", both(1, 2));
      }
      break;
    }
    default: break;
  }
  return out;
}

}  // namespace sph

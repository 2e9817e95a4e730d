#include "sph/matgrp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace sph {

namespace {

int natural_degree(Family f, int n) {
  switch (f) {
    case Family::A: return n + 1;
    case Family::B: return 2 * n + 1;
    default: return 2 * n;
  }
}

std::vector<int> weyl_degrees(Family f, int n) {
  std::vector<int> d;
  switch (f) {
    case Family::A:
      for (int i = 2; i <= n + 1; ++i) d.push_back(i);
      break;
    case Family::B:
    case Family::C:
      for (int i = 1; i <= n; ++i) d.push_back(2 * i);
      break;
    default:
      for (int i = 1; i < n; ++i) d.push_back(2 * i);
      d.push_back(n);
      break;
  }
  return d;
}

bool is_monomial(const FqMatrix& g) {
  for (int i = 0; i < g.size(); ++i) {
    int nz = 0;
    for (int j = 0; j < g.size(); ++j) nz += g(i, j) != 0;
    if (nz != 1) return false;
  }
  return true;
}

}  // namespace

std::string to_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

ClassicalGroup ClassicalGroup::make(Family family, int n, std::uint32_t p) {
  if (family != Family::A && family != Family::B && family != Family::C && family != Family::D)
    throw Error("matrix groups are available for types A, B, C, D only");
  if (p == 2 || !is_prime(p)) throw Error("the prime must be odd, got " + std::to_string(p));
  ClassicalGroup G;
  G.rs_ = std::make_shared<const RootSystem>(RootSystem::build(family, n));
  G.p_ = p;
  G.m_ = natural_degree(family, n);
  G.coords_ = family == Family::A ? n + 1 : n;
  G.half_ = PrimeField(p).inv(2);

  int m = G.m_;
  G.form_ = FqMatrix(p, m);
  if (family == Family::A) {
    G.form_ = FqMatrix::identity(p, m);
    for (int i = 0; i < m; ++i) G.external_.push_back(i);
  } else {
    for (int i = 0; i < n; ++i) {
      G.form_(G.pos_e(i), G.pos_f(i)) = 1;
      G.form_(G.pos_f(i), G.pos_e(i)) = family == Family::C ? p - 1 : 1;
    }
    if (family == Family::B) {
      G.form_(G.pos_w(), G.pos_w()) = 1;
      G.external_.push_back(G.pos_w());
    }
    for (int i = 0; i < n; ++i) G.external_.push_back(G.pos_e(i));
    for (int i = 0; i < n; ++i) G.external_.push_back(G.pos_f(i));
  }

  const RootSystem& rs = *G.rs_;
  for (int idx = 0; idx < rs.num_roots(); ++idx) {
    G.eps_.push_back(root_to_epsilon(rs, rs.root(idx)));
    G.eps_index_[G.eps_.back()] = idx;
  }
  G.build_patterns();
  for (int i = 0; i < n; ++i) G.simple_reps_.push_back(G.reflection_rep(rs.root_index(rs.simple_root(i))));
  return G;
}

std::string ClassicalGroup::name() const {
  int n = rank();
  std::string g;
  switch (family()) {
    case Family::A: g = "SL" + std::to_string(n + 1); break;
    case Family::B: g = "SO" + std::to_string(2 * n + 1); break;
    case Family::C: g = "Sp" + std::to_string(2 * n); break;
    default: g = "SO" + std::to_string(2 * n); break;
  }
  return g + "(F" + std::to_string(p_) + ")";
}

int ClassicalGroup::pos_e(int i) const { return i; }

int ClassicalGroup::pos_f(int i) const {
  if (family() == Family::A) throw Error("type A has no f basis vectors");
  return m_ - 1 - i;
}

int ClassicalGroup::pos_w() const {
  if (family() != Family::B) throw Error("only type B has the vector w");
  return rank();
}

FqMatrix ClassicalGroup::to_external(const FqMatrix& g) const {
  FqMatrix out(p_, m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) out(a, b) = g(external_[a], external_[b]);
  return out;
}

FqMatrix ClassicalGroup::from_external(const FqMatrix& g) const {
  if (g.size() != m_) throw Error("matrix size " + std::to_string(g.size()) + " differs from " + std::to_string(m_));
  FqMatrix out(p_, m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) out(external_[a], external_[b]) = g(a, b);
  return out;
}

std::string ClassicalGroup::membership_error(const FqMatrix& g) const {
  if (g.size() != m_) return "matrix has size " + std::to_string(g.size()) + ", expected " + std::to_string(m_);
  if (g.prime() != p_) return "matrix is over F_" + std::to_string(g.prime());
  if (g.det() != 1) return "determinant is " + std::to_string(g.det()) + ", expected 1";
  if (family() != Family::A && !(g.transpose() * form_ * g == form_)) return "g^T J g != J: the form is not preserved";
  return "";
}

void ClassicalGroup::build_patterns() {
  Family f = family();
  for (int idx = 0; idx < rs_->num_roots(); ++idx) {
    const auto& v = eps_[idx];
    std::vector<std::pair<int, int>> nz;
    for (int i = 0; i < coords_; ++i)
      if (v[i] != 0) nz.push_back({i, v[i]});
    Pattern pt;
    if (f == Family::A) {
      int i = nz[0].second > 0 ? nz[0].first : nz[1].first;
      int j = nz[0].second > 0 ? nz[1].first : nz[0].first;
      pt.x = {{i, j, 1}};
    } else if (nz.size() == 2) {
      auto [i, a] = nz[0];
      auto [j, b] = nz[1];
      int sg = f == Family::C ? 1 : -1;
      if (a == 1 && b == -1) {
        pt.x = {{pos_e(i), pos_e(j), 1}, {pos_f(j), pos_f(i), -1}};
      } else if (a == -1 && b == 1) {
        pt.x = {{pos_e(j), pos_e(i), 1}, {pos_f(i), pos_f(j), -1}};
      } else if (a == 1) {
        pt.x = {{pos_e(i), pos_f(j), 1}, {pos_e(j), pos_f(i), sg}};
      } else {
        pt.x = {{pos_f(j), pos_e(i), 1}, {pos_f(i), pos_e(j), sg}};
      }
    } else {
      auto [i, a] = nz[0];
      if (a == 2) {
        pt.x = {{pos_e(i), pos_f(i), 1}};
      } else if (a == -2) {
        pt.x = {{pos_f(i), pos_e(i), 1}};
      } else if (a == 1) {
        pt.x = {{pos_e(i), pos_w(), 1}, {pos_w(), pos_f(i), -1}};
        pt.x2 = {{pos_e(i), pos_f(i), -1}};
      } else {
        pt.x = {{pos_w(), pos_e(i), 1}, {pos_f(i), pos_w(), -1}};
        pt.x2 = {{pos_f(i), pos_e(i), -1}};
      }
    }
    patterns_.push_back(pt);
  }
}

FqMatrix ClassicalGroup::root_element(int root_index, std::uint32_t t) const {
  FqMatrix g = FqMatrix::identity(p_, m_);
  left_multiply_root(g, root_index, t);
  return g;
}

FqMatrix ClassicalGroup::root_element(const IntVec& root, std::uint32_t t) const {
  int idx = rs_->root_index(root);
  if (idx < 0) throw Error("root_element: not a root");
  return root_element(idx, t);
}

void ClassicalGroup::left_multiply_root(FqMatrix& g, int root_index, std::uint32_t t) const {
  PrimeField F(p_);
  t %= p_;
  if (t == 0) return;
  const Pattern& pt = patterns_[root_index];
  std::uint32_t t2 = F.mul(F.mul(t, t), half_);
  // Row r of the result gains c * row s of g; read every source row first.
  std::vector<std::pair<int, std::uint32_t>> adds;
  std::vector<std::vector<std::uint32_t>> src;
  auto push = [&](const Entry& e, std::uint32_t scale) {
    adds.push_back({e.r, F.mul(F.reduce(e.v), scale)});
    std::vector<std::uint32_t> row(m_);
    for (int k = 0; k < m_; ++k) row[k] = g(e.c, k);
    src.push_back(std::move(row));
  };
  for (const auto& e : pt.x) push(e, t);
  for (const auto& e : pt.x2) push(e, t2);
  for (std::size_t a = 0; a < adds.size(); ++a) {
    auto [r, c] = adds[a];
    for (int k = 0; k < m_; ++k) g(r, k) = F.add(g(r, k), F.mul(c, src[a][k]));
  }
}

void ClassicalGroup::right_multiply_root(FqMatrix& g, int root_index, std::uint32_t t) const {
  PrimeField F(p_);
  t %= p_;
  if (t == 0) return;
  const Pattern& pt = patterns_[root_index];
  std::uint32_t t2 = F.mul(F.mul(t, t), half_);
  // Column c of the result gains v * column r of g.
  std::vector<std::pair<int, std::uint32_t>> adds;
  std::vector<std::vector<std::uint32_t>> src;
  auto push = [&](const Entry& e, std::uint32_t scale) {
    adds.push_back({e.c, F.mul(F.reduce(e.v), scale)});
    std::vector<std::uint32_t> col(m_);
    for (int k = 0; k < m_; ++k) col[k] = g(k, e.r);
    src.push_back(std::move(col));
  };
  for (const auto& e : pt.x) push(e, t);
  for (const auto& e : pt.x2) push(e, t2);
  for (std::size_t a = 0; a < adds.size(); ++a) {
    auto [c, v] = adds[a];
    for (int k = 0; k < m_; ++k) g(k, c) = F.add(g(k, c), F.mul(v, src[a][k]));
  }
}

FqMatrix ClassicalGroup::reflection_rep(int root_index) const {
  int neg = rs_->negative_index(root_index);
  for (std::uint32_t c = 1; c < p_; ++c) {
    FqMatrix g = root_element(root_index, 1);
    right_multiply_root(g, neg, c);
    right_multiply_root(g, root_index, 1);
    if (is_monomial(g)) return g;
  }
  throw Error("no monomial representative for a reflection in " + name());
}

FqMatrix ClassicalGroup::weyl_rep(const WeylElement& w) const {
  FqMatrix g = FqMatrix::identity(p_, m_);
  for (int i : w.reduced_word()) g = g * simple_reps_[i];
  return g;
}

FqMatrix ClassicalGroup::torus_element(const std::vector<std::uint32_t>& d) const {
  if (static_cast<int>(d.size()) != coords_) throw Error("torus_element: wrong number of eigenvalues");
  PrimeField F(p_);
  FqMatrix g = FqMatrix::identity(p_, m_);
  for (int i = 0; i < coords_; ++i) {
    std::uint32_t x = F.reduce(d[i]);
    if (x == 0) throw Error("torus_element: zero eigenvalue");
    g(pos_e(i), pos_e(i)) = x;
    if (family() != Family::A) g(pos_f(i), pos_f(i)) = F.inv(x);
  }
  return g;
}

WeylElement ClassicalGroup::bruhat_cell(const FqMatrix& g) const {
  std::string err = membership_error(g);
  if (!err.empty()) throw Error("bruhat_cell: " + err);
  PrimeField F(p_);
  FqMatrix a = g;
  std::vector<int> pi(m_, -1);
  std::vector<bool> used(m_, false);
  for (int j = 0; j < m_; ++j) {
    int r = -1;
    for (int i = m_ - 1; i >= 0; --i)
      if (!used[i] && a(i, j) != 0) {
        r = i;
        break;
      }
    if (r < 0) throw Error("bruhat_cell: singular matrix");
    used[r] = true;
    pi[j] = r;
    std::uint32_t inv = F.inv(a(r, j));
    for (int k = j + 1; k < m_; ++k) {
      if (a(r, k) == 0) continue;
      std::uint32_t c = F.neg(F.mul(a(r, k), inv));
      for (int i = 0; i < m_; ++i) a(i, k) = F.add(a(i, k), F.mul(c, a(i, j)));
    }
  }

  // w(eps_i) = sign[i] * eps_{target[i]}.
  int n = rank();
  std::vector<int> target(coords_), sign(coords_, 1);
  if (family() == Family::A) {
    for (int i = 0; i < coords_; ++i) target[i] = pi[i];
  } else {
    int negatives = 0;
    for (int i = 0; i < n; ++i) {
      int q = pi[pos_e(i)];
      if (q < n) {
        target[i] = q;
        if (pi[pos_f(i)] != pos_f(q)) throw Error("bruhat_cell: permutation outside the Weyl group");
      } else if (family() == Family::B && q == pos_w()) {
        throw Error("bruhat_cell: permutation outside the Weyl group");
      } else {
        target[i] = m_ - 1 - q;
        sign[i] = -1;
        ++negatives;
        if (pi[pos_f(i)] != pos_e(target[i])) throw Error("bruhat_cell: permutation outside the Weyl group");
      }
    }
    if (family() == Family::B && pi[pos_w()] != pos_w())
      throw Error("bruhat_cell: permutation outside the Weyl group");
    if (family() == Family::D && negatives % 2 != 0)
      throw Error("bruhat_cell: odd sign change, outside the Weyl group");
  }

  IntMatrix w(n, n);
  for (int j = 0; j < n; ++j) {
    const auto& v = eps_[rs_->root_index(rs_->simple_root(j))];
    std::vector<int> out(coords_, 0);
    for (int i = 0; i < coords_; ++i) out[target[i]] += sign[i] * v[i];
    auto it = eps_index_.find(out);
    if (it == eps_index_.end()) throw Error("bruhat_cell: image of a simple root is not a root");
    const auto& col = rs_->root(it->second);
    for (int i = 0; i < n; ++i) w(i, j) = col[i];
  }
  return WeylElement(*rs_, w);
}

unsigned __int128 ClassicalGroup::flag_count() const {
  unsigned __int128 total = 1;
  for (int d : weyl_degrees(family(), rank())) {
    unsigned __int128 s = 0, pk = 1;
    for (int k = 0; k < d; ++k) {
      s += pk;
      pk *= p_;
    }
    total *= s;
  }
  return total;
}

double ClassicalGroup::order() const {
  double lg = rank() * std::log(double(p_) - 1) + rs_->num_positive() * std::log(double(p_));
  double fl = 0;
  for (int d : weyl_degrees(family(), rank())) fl += std::log((std::pow(double(p_), d) - 1) / (double(p_) - 1));
  return std::exp(lg + fl);
}

std::string ClassicalGroup::order_string() const {
  if (std::log2(order()) > 125) throw Error("order_string: |G| exceeds 128 bits");
  unsigned __int128 v = flag_count();
  for (int i = 0; i < rank(); ++i) v *= p_ - 1;
  for (int i = 0; i < rs_->num_positive(); ++i) v *= p_;
  return to_decimal(v);
}

FqMatrix random_borel(const ClassicalGroup& G, std::mt19937_64& rng) {
  std::uint32_t p = G.prime();
  PrimeField F(p);
  int k = G.family() == Family::A ? G.rank() + 1 : G.rank();
  std::vector<std::uint32_t> d(k);
  std::uint32_t prod = 1;
  for (int i = 0; i < k; ++i) {
    d[i] = 1 + static_cast<std::uint32_t>(rng() % (p - 1));
    if (G.family() == Family::A && i == k - 1) d[i] = F.inv(prod);
    prod = F.mul(prod, d[i]);
  }
  FqMatrix b = G.torus_element(d);
  for (int idx = 0; idx < G.root_system().num_positive(); ++idx)
    G.right_multiply_root(b, idx, static_cast<std::uint32_t>(rng() % p));
  return b;
}

namespace {

std::uint32_t scalar_value(const PrimeField& F, const Scalar& s, const std::vector<std::uint32_t>& params) {
  std::uint32_t den = static_cast<std::uint32_t>(s.root.den());
  std::uint32_t z = den == 1 ? 1 : F.element_of_order(den);
  if (z == 0)
    throw Error("needs larger prime: a primitive " + std::to_string(den) + "-th root of unity requires p = 1 mod " +
                std::to_string(den));
  std::uint32_t v = F.pow(z, static_cast<std::uint64_t>(s.root.num()));
  for (std::size_t k = 0; k < s.exps.size(); ++k) {
    int e = s.exps[k];
    std::uint32_t b = e < 0 ? F.inv(params[k]) : params[k];
    v = F.mul(v, F.pow(b, static_cast<std::uint64_t>(std::abs(e))));
  }
  return v;
}

FqMatrix realize_torus(const ClassicalGroup& G, const TorusWord& t) {
  if (t.form != TorusWord::Form::eigenvalues) throw Error("realize: h-word representatives have no matrix model here");
  const RootSystem& rs = G.root_system();
  PrimeField F(G.prime());
  auto generic = generic_centralizer(rs, t);
  std::set<int> want(generic.begin(), generic.end());
  std::size_t k = t.params.size();
  std::vector<std::uint32_t> params(k, 1);
  while (true) {
    std::vector<std::uint32_t> d;
    for (const auto& s : t.eigen) d.push_back(scalar_value(F, s, params));
    bool ok = true;
    if (G.family() == Family::A) {
      std::uint32_t det = 1;
      for (auto x : d) det = F.mul(det, x);
      ok = det == 1;
    }
    for (int idx = 0; ok && idx < rs.num_roots(); ++idx) {
      std::uint32_t chi = 1;
      const auto& v = G.epsilon(idx);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) chi = F.mul(chi, F.pow(v[i] > 0 ? d[i] : F.inv(d[i]), static_cast<std::uint64_t>(std::abs(v[i]))));
      ok = (chi == 1) == (want.count(idx) > 0);
    }
    if (ok) return G.torus_element(d);
    std::size_t i = 0;
    while (i < k && params[i] == G.prime() - 1) params[i++] = 1;
    if (i == k) break;
    ++params[i];
  }
  std::string cond = t.constraint.empty() ? "" : " (" + t.constraint + ")";
  throw Error("needs larger prime: no parameter values in F_" + std::to_string(G.prime()) +
              " give the generic centralizer" + cond);
}

FqMatrix realize_unipotent(const ClassicalGroup& G, const NilpotentSpec& spec,
                           const std::vector<std::uint32_t>& scales) {
  std::vector<IntVec> roots = spec.roots;
  if (spec.kind == NilpotentSpec::Kind::partition) {
    auto r = partition_root_set(G.root_system(), spec.partition);
    if (!r) throw Error("realize: no root-set model for the partition " + partition_string(spec.partition));
    roots = *r;
  }
  if (!scales.empty() && scales.size() != roots.size()) throw Error("realize: one scale per unipotent root expected");
  FqMatrix u = FqMatrix::identity(G.prime(), G.degree());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    IntVec neg = roots[k];
    for (auto& x : neg) x = -x;
    int idx = G.root_system().root_index(neg);
    if (idx < 0) throw Error("realize: not a root");
    G.right_multiply_root(u, idx, scales.empty() ? 1 : scales[k]);
  }
  if (spec.kind == NilpotentSpec::Kind::partition && unipotent_partition(u) != spec.partition)
    throw Error("realize: Jordan type " + partition_string(unipotent_partition(u)) + " differs from " +
                partition_string(spec.partition));
  return u;
}

unsigned __int128 mod_inverse(unsigned __int128 a, unsigned __int128 m) {
  __int128 t = 0, nt = 1, r = static_cast<__int128>(m), nr = static_cast<__int128>(a % m);
  while (nr != 0) {
    __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += static_cast<__int128>(m);
  return static_cast<unsigned __int128>(t);
}

// Basis of {X : gX = Xg} as m*m vectors over F_p.
std::vector<std::vector<std::uint32_t>> commutant_basis(const FqMatrix& g) {
  std::uint32_t p = g.prime();
  PrimeField F(p);
  int m = g.size(), nv = m * m;
  std::vector<std::vector<std::uint32_t>> rows;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<std::uint32_t> row(nv, 0);
      for (int k = 0; k < m; ++k) {
        row[k * m + j] = F.add(row[k * m + j], g(i, k));
        row[i * m + k] = F.sub(row[i * m + k], g(k, j));
      }
      rows.push_back(std::move(row));
    }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < nv && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::uint32_t inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint32_t f = rows[i][c];
      for (int k = 0; k < nv; ++k) rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[r][k]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(nv, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (int fcol = 0; fcol < nv; ++fcol) {
    if (is_pivot[fcol]) continue;
    std::vector<std::uint32_t> v(nv, 0);
    v[fcol] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = F.neg(rows[i][fcol]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

FqMatrix realize(const ClassicalGroup& G, const ClassDescriptor& d, const std::vector<std::uint32_t>& scales) {
  if (d.family != G.family() || d.rank != G.rank()) throw Error("realize: descriptor type differs from the group");
  if (d.kind == ClassKind::all) throw Error("realize: the sentinel stands for every class, not a single one");
  FqMatrix s = FqMatrix::identity(G.prime(), G.degree());
  FqMatrix u = s;
  if (d.torus) s = realize_torus(G, *d.torus);
  if (d.unipotent) u = realize_unipotent(G, *d.unipotent, scales);
  if (!(s * u == u * s)) throw Error("realize: semisimple and unipotent parts do not commute");
  FqMatrix g = s * u;
  std::string err = G.membership_error(g);
  if (!err.empty()) throw Error("realize: " + err);
  return g;
}

std::vector<std::vector<std::uint32_t>> rational_form_scales(const ClassicalGroup& G, const ClassDescriptor& d) {
  std::size_t k = 0;
  if (d.unipotent) {
    if (d.unipotent->kind == NilpotentSpec::Kind::roots) {
      k = d.unipotent->roots.size();
    } else if (auto r = partition_root_set(G.root_system(), d.unipotent->partition)) {
      k = r->size();
    }
  }
  PrimeField F(G.prime());
  std::uint32_t nu = 2;
  while (F.pow(nu, (G.prime() - 1) / 2) == 1) ++nu;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    std::vector<std::uint32_t> s(k, 1);
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s[i] = nu;
    out.push_back(std::move(s));
  }
  return out;
}

JordanParts jordan_decompose(const ClassicalGroup& G, const FqMatrix& g) {
  std::string err = G.membership_error(g);
  if (!err.empty()) throw Error("jordan_decompose: " + err);
  std::uint64_t order = element_order(g);
  std::uint64_t q = 1;
  while (order % G.prime() == 0) {
    order /= G.prime();
    q *= G.prime();
  }
  // e = 1 mod (prime-to-p part), e = 0 mod q.
  std::uint64_t e = order == 1 ? 0 : static_cast<std::uint64_t>(q * mod_inverse(q, order) % (q * order));
  JordanParts out;
  out.s = g.pow(e);
  out.u = out.s.inverse() * g;
  return out;
}

std::uint64_t centralizer_order(const ClassicalGroup& G, const FqMatrix& g, double limit) {
  auto basis = commutant_basis(g);
  double count = std::pow(double(G.prime()), double(basis.size()));
  if (count > limit)
    throw Error("centralizer_order: commutant has " + std::to_string(basis.size()) + " dimensions, too large");
  PrimeField F(G.prime());
  int m = G.degree();
  std::size_t k = basis.size();
  std::vector<std::uint32_t> digit(k, 0);
  FqMatrix x(G.prime(), m);
  std::uint64_t found = 0;
  while (true) {
    if (G.contains(x)) ++found;
    std::size_t i = 0;
    for (; i < k; ++i) {
      for (int a = 0; a < m * m; ++a) x(a / m, a % m) = F.add(x(a / m, a % m), basis[i][a]);
      if (++digit[i] < G.prime()) break;
      digit[i] = 0;
    }
    if (i == k) break;
  }
  return found;
}

double class_size(const ClassicalGroup& G, const FqMatrix& g, double limit) {
  return G.order() / static_cast<double>(centralizer_order(G, g, limit));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Right cosets B h with h = w' u, u a product over the inversion set of w.
struct CosetTable {
  std::vector<WeylElement> elements;
  std::vector<FqMatrix> reps;
  std::vector<std::vector<int>> inversions;
  std::vector<double> cumulative;

  explicit CosetTable(const ClassicalGroup& G) {
    const RootSystem& rs = G.root_system();
    elements = enumerate_weyl_group(rs);
    double total = 0;
    for (const auto& w : elements) {
      reps.push_back(G.weyl_rep(w));
      std::vector<int> inv;
      for (int idx = 0; idx < rs.num_positive(); ++idx)
        if (!is_positive_vector(w.apply(rs.root(idx)))) inv.push_back(idx);
      total += std::pow(double(G.prime()), double(inv.size()));
      cumulative.push_back(total);
      inversions.push_back(std::move(inv));
    }
    for (auto& c : cumulative) c /= total;
  }

  FqMatrix sample(const ClassicalGroup& G, std::mt19937_64& rng) const {
    double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::size_t k = std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin();
    if (k >= elements.size()) k = elements.size() - 1;
    FqMatrix h = reps[k];
    for (int idx : inversions[k]) G.right_multiply_root(h, idx, static_cast<std::uint32_t>(rng() % G.prime()));
    return h;
  }
};

struct CellTally {
  std::map<WeylElement, std::uint64_t> cells;
  std::uint64_t count = 0;
  std::optional<FqMatrix> witness;
  std::optional<WeylElement> witness_cell;

  void record(const ClassicalGroup& G, const FqMatrix& g, const FqMatrix& h) {
    WeylElement w = G.bruhat_cell(h * g * h.inverse());
    ++cells[w];
    ++count;
    if (!witness && !w.is_involution()) {
      witness = h;
      witness_cell = w;
    }
  }
};

template <class Fn>
void run_items(std::size_t items, int threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items; i = next++) fn(i);
  };
  int t = std::max(1, std::min<int>(threads, static_cast<int>(items)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

constexpr std::uint64_t kChunk = 2048;

}  // namespace

BruhatReport verify_involution_criterion(const ClassicalGroup& G, const ClassDescriptor& d,
                                         const SamplingOptions& opts) {
  BruhatReport rep;
  rep.descriptor = d;
  rep.p = G.prime();
  rep.dim_target = d.expected_dim;
  rep.representative = realize(G, d);
  const FqMatrix& g = rep.representative;
  CosetTable table(G);
  rep.exhaustive = opts.force_exhaustive || G.order() <= opts.exhaustive_threshold;

  std::vector<CellTally> tallies;
  if (rep.exhaustive) {
    tallies.resize(table.elements.size());
    run_items(tallies.size(), opts.threads, [&](std::size_t k) {
      const auto& inv = table.inversions[k];
      std::vector<std::uint32_t> t(inv.size(), 0);
      while (true) {
        FqMatrix h = table.reps[k];
        for (std::size_t i = 0; i < inv.size(); ++i) G.right_multiply_root(h, inv[i], t[i]);
        tallies[k].record(G, g, h);
        std::size_t i = 0;
        while (i < t.size() && t[i] == G.prime() - 1) t[i++] = 0;
        if (i == t.size()) break;
        ++t[i];
      }
    });
  } else {
    std::size_t chunks = static_cast<std::size_t>((opts.budget + kChunk - 1) / kChunk);
    tallies.resize(chunks);
    run_items(chunks, opts.threads, [&](std::size_t c) {
      std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(c + 1)));
      std::uint64_t n = std::min<std::uint64_t>(kChunk, opts.budget - c * kChunk);
      for (std::uint64_t i = 0; i < n; ++i) tallies[c].record(G, g, table.sample(G, rng));
    });
  }

  for (auto& t : tallies) {
    for (const auto& [w, c] : t.cells) rep.cells[w] += c;
    rep.conjugates += t.count;
    if (!rep.witness_conjugator && t.witness) {
      rep.witness_conjugator = t.witness;
      rep.witness_cell = t.witness_cell;
    }
  }
  for (const auto& [w, c] : rep.cells) {
    int v = w.length() + w.rank_defect();
    rep.max_value = std::max(rep.max_value, v);
    if (!w.is_involution()) rep.all_involutions = false;
    if (w.is_involution() && v == rep.dim_target) rep.achieved = true;
  }
  return rep;
}

WitnessResult find_noninvolution_witness(const ClassicalGroup& G, const ClassDescriptor& d,
                                         const std::vector<WeylElement>& targets, const SamplingOptions& opts) {
  const RootSystem& rs = G.root_system();
  auto forms = rational_form_scales(G, d);
  std::vector<FqMatrix> reps;
  for (const auto& sc : forms) reps.push_back(realize(G, d, sc));

  WitnessResult res;
  auto hit = [&](std::size_t f, const FqMatrix& h, const char* stage) {
    ++res.tried;
    WeylElement w = G.bruhat_cell(h * reps[f] * h.inverse());
    if (std::find(targets.begin(), targets.end(), w) == targets.end()) return false;
    res.found = true;
    res.stage = stage;
    res.conjugator = h;
    res.cell = w;
    res.scales = forms[f];
    return true;
  };

  // Letters attached to the target cells: root elements for the roots they
  // invert and their negatives, and the matching reflection representatives.
  std::set<int> roots;
  for (const auto& w : targets)
    for (int idx = 0; idx < rs.num_positive(); ++idx)
      if (!is_positive_vector(w.apply(rs.root(idx)))) roots.insert(idx);
  std::vector<FqMatrix> letters;
  for (int idx : roots) {
    for (int r : {idx, rs.negative_index(idx)})
      for (std::uint32_t t = 1; t < G.prime(); ++t) letters.push_back(G.root_element(r, t));
    letters.push_back(G.reflection_rep(idx));
  }

  auto guided = [&](std::size_t f) {
    std::uint64_t used = 0;
    std::vector<FqMatrix> layer{FqMatrix::identity(G.prime(), G.degree())};
    for (int len = 0; len <= 3; ++len) {
      for (const auto& h : layer) {
        if (used++ >= opts.budget) return false;
        if (hit(f, h, "guided")) return true;
      }
      if (len == 3) break;
      std::vector<FqMatrix> next;
      for (const auto& a : layer)
        for (const auto& l : letters) next.push_back(a * l);
      layer = std::move(next);
    }
    return false;
  };
  auto random_words = [&](std::size_t f) {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(f + 1)));
    for (std::uint64_t k = 0; k < opts.budget; ++k) {
      FqMatrix h = FqMatrix::identity(G.prime(), G.degree());
      int len = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < len; ++i)
        G.right_multiply_root(h, static_cast<int>(rng() % rs.num_roots()),
                              1 + static_cast<std::uint32_t>(rng() % (G.prime() - 1)));
      if (hit(f, h, "random-words")) return true;
    }
    return false;
  };
  std::optional<CosetTable> table;
  auto random_cosets = [&](std::size_t f) {
    if (!table) table.emplace(G);
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(f + 1000003)));
    for (std::uint64_t k = 0; k < opts.budget; ++k)
      if (hit(f, table->sample(G, rng), "random-cosets")) return true;
    return false;
  };

  for (std::size_t f = 0; f < reps.size(); ++f)
    if (guided(f)) return res;
  for (std::size_t f = 0; f < reps.size(); ++f)
    if (random_words(f)) return res;
  for (std::size_t f = 0; f < reps.size(); ++f)
    if (random_cosets(f)) return res;
  return res;
}

}  // namespace sph

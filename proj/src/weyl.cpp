#include "sph/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <set>
#include <thread>

namespace sph {

bool is_positive_vector(const IntVec& v) {
  for (int x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

WeylElement::WeylElement(const RootSystem& rs, IntMatrix m) : rs_(&rs), m_(std::move(m)) {
  if (m_.rows() != rs.rank() || m_.cols() != rs.rank()) throw Error("WeylElement: matrix has wrong shape");
}

WeylElement WeylElement::identity(const RootSystem& rs) { return WeylElement(rs, IntMatrix::identity(rs.rank())); }

WeylElement WeylElement::simple(const RootSystem& rs, int i) {
  if (i < 0 || i >= rs.rank()) throw Error("WeylElement: simple index out of range");
  return WeylElement(rs, rs.simple_reflection_matrix(i));
}

WeylElement WeylElement::reflection(const RootSystem& rs, const IntVec& root) {
  if (static_cast<int>(root.size()) != rs.rank() || !rs.is_root(root))
    throw Error("WeylElement::reflection: argument is not a root");
  IntMatrix m(rs.rank(), rs.rank());
  for (int j = 0; j < rs.rank(); ++j) {
    IntVec img = rs.reflect(rs.simple_root(j), root);
    for (int i = 0; i < rs.rank(); ++i) m(i, j) = img[i];
  }
  return WeylElement(rs, m);
}

WeylElement WeylElement::from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElement w = identity(rs);
  for (int i : word) w = w * simple(rs, i);
  return w;
}

int WeylElement::length() const {
  int n = 0;
  for (int i = 0; i < rs_->num_positive(); ++i)
    if (!is_positive_vector(m_.apply(rs_->root(i)))) ++n;
  return n;
}

int WeylElement::rank_defect() const { return rank_rational(IntMatrix::identity(m_.rows()) - m_); }

bool WeylElement::is_involution() const { return (m_ * m_) == IntMatrix::identity(m_.rows()); }

bool WeylElement::is_identity() const { return m_ == IntMatrix::identity(m_.rows()); }

bool WeylElement::has_right_descent(int i) const { return !is_positive_vector(m_.col(i)); }

std::vector<int> WeylElement::reduced_word() const {
  std::vector<int> rev;
  WeylElement u = *this;
  while (true) {
    int i = 0;
    while (i < rs_->rank() && !u.has_right_descent(i)) ++i;
    if (i == rs_->rank()) break;
    rev.push_back(i);
    u = u * simple(*rs_, i);
  }
  return {rev.rbegin(), rev.rend()};
}

WeylElement WeylElement::inverse() const {
  auto w = reduced_word();
  std::reverse(w.begin(), w.end());
  return from_word(*rs_, w);
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return WeylElement(*a.rs_, a.m_ * b.m_); }

std::string word_string(const std::vector<int>& word) {
  std::string s;
  for (int i : word) s += (s.empty() ? "" : " ") + std::to_string(i + 1);
  return s;
}

WeylElement longest_element(const RootSystem& rs) {
  WeylElement u = WeylElement::identity(rs);
  while (true) {
    int i = 0;
    while (i < rs.rank() && u.has_right_descent(i)) ++i;
    if (i == rs.rank()) return u;
    u = u * WeylElement::simple(rs, i);
  }
}

int spherical_bound(const RootSystem& rs) {
  WeylElement w0 = longest_element(rs);
  return w0.length() + w0.rank_defect();
}

bool bruhat_leq(const WeylElement& u, const WeylElement& w) {
  const RootSystem& rs = w.root_system();
  WeylElement a = u, b = w;
  while (true) {
    if (b.is_identity()) return a.is_identity();
    int s = 0;
    while (!b.has_right_descent(s)) ++s;
    WeylElement sref = WeylElement::simple(rs, s);
    if (a.has_right_descent(s)) a = a * sref;
    b = b * sref;
  }
}

bool bruhat_leq_subword(const WeylElement& u, const WeylElement& w) {
  const RootSystem& rs = w.root_system();
  std::set<IntMatrix> reach{IntMatrix::identity(rs.rank())};
  for (int s : w.reduced_word()) {
    IntMatrix m = rs.simple_reflection_matrix(s);
    std::vector<IntMatrix> add;
    for (const auto& x : reach) add.push_back(x * m);
    reach.insert(add.begin(), add.end());
  }
  return reach.count(u.matrix()) > 0;
}

std::vector<std::vector<IntMatrix>> parabolic_transversals(const RootSystem& rs) {
  int r = rs.rank();
  std::vector<IntMatrix> simple;
  for (int i = 0; i < r; ++i) simple.push_back(rs.simple_reflection_matrix(i));
  std::vector<std::vector<IntMatrix>> out;
  for (int k = 1; k <= r; ++k) {
    // Minimal representatives u of W_k / W_{k-1}: u(a_i) > 0 for i < k-1.
    auto minimal = [&](const IntMatrix& u) {
      for (int i = 0; i + 1 < k; ++i)
        if (!is_positive_vector(u.col(i))) return false;
      return true;
    };
    std::set<IntMatrix> seen{IntMatrix::identity(r)};
    std::vector<IntMatrix> reps{IntMatrix::identity(r)};
    for (std::size_t q = 0; q < reps.size(); ++q)
      for (int j = 0; j < k; ++j) {
        IntMatrix v = simple[j] * reps[q];
        if (minimal(v) && seen.insert(v).second) reps.push_back(v);
      }
    out.push_back(std::move(reps));
  }
  return out;
}

std::uint64_t weyl_group_order(const RootSystem& rs) {
  std::uint64_t n = 1;
  for (const auto& t : parabolic_transversals(rs)) n *= t.size();
  return n;
}

std::vector<WeylElement> enumerate_weyl_group(const RootSystem& rs, std::uint64_t max_size) {
  auto chain = parabolic_transversals(rs);
  std::uint64_t order = 1;
  for (const auto& t : chain) order *= t.size();
  if (order > max_size) throw Error("enumerate_weyl_group: |W| = " + std::to_string(order) + " exceeds limit");
  std::vector<IntMatrix> all{IntMatrix::identity(rs.rank())};
  for (const auto& t : chain) {
    std::vector<IntMatrix> next;
    next.reserve(all.size() * t.size());
    for (const auto& rep : t)
      for (const auto& x : all) next.push_back(rep * x);
    all = std::move(next);
  }
  std::vector<WeylElement> out;
  out.reserve(all.size());
  for (auto& m : all) out.emplace_back(rs, std::move(m));
  return out;
}

bool is_coxeter_element(const WeylElement& w) {
  const RootSystem& rs = w.root_system();
  std::vector<int> word(rs.rank());
  std::iota(word.begin(), word.end(), 0);
  WeylElement c = WeylElement::from_word(rs, word);
  if (rs.rank() <= 4) {
    for (const auto& x : enumerate_weyl_group(rs))
      if (x * w == c * x) return true;
    return false;
  }
  return characteristic_polynomial(w.matrix()) == characteristic_polynomial(c.matrix());
}

// ---------------------------------------------------------------------------
// Involutions by target value.

namespace {

struct Found {
  std::uint64_t ordinal;  // visit count within the subtree when found
  IntMatrix m;
};

struct OrthogonalSearch {
  const RootSystem& rs;
  int d;
  const std::vector<int>& order;  // positive root indices, descending height
  const std::vector<IntMatrix>& refl;
  std::uint64_t cap;
  bool first_only;

  std::uint64_t visited = 0;
  std::vector<Found> found;
  std::vector<int> chosen;

  bool orthogonal_to_chosen(int idx) const {
    for (int c : chosen)
      if (rs.form(rs.root(order[c]), rs.root(order[idx])) != 0) return false;
    return true;
  }

  int length_of(const IntMatrix& m) const {
    int n = 0;
    for (int i = 0; i < rs.num_positive(); ++i)
      if (!is_positive_vector(m.apply(rs.root(i)))) ++n;
    return n;
  }

  // Returns false when the search must stop.
  bool visit(const IntMatrix& prod) {
    if (visited >= cap) return false;
    ++visited;
    int k = static_cast<int>(chosen.size());
    if (length_of(prod) + k == d) {
      found.push_back({visited, prod});
      if (first_only) return false;
    }
    if (2 * (k + 1) > d || k + 1 > rs.rank()) return true;
    int start = chosen.empty() ? 0 : chosen.back() + 1;
    for (int i = start; i < static_cast<int>(order.size()); ++i) {
      if (!orthogonal_to_chosen(i)) continue;
      chosen.push_back(i);
      bool go = visit(prod * refl[i]);
      chosen.pop_back();
      if (!go) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<WeylElement> involutions_with_value(const RootSystem& rs, int d, const InvolutionSearch& opts) {
  std::vector<WeylElement> out;
  if (d < 0 || d % 2 != 0) return out;
  std::vector<int> order;
  for (int i = rs.num_positive() - 1; i >= 0; --i) order.push_back(i);
  std::vector<IntMatrix> refl;
  for (int idx : order) refl.push_back(WeylElement::reflection(rs, rs.root(idx)).matrix());
  IntMatrix id = IntMatrix::identity(rs.rank());

  // Subtree 0 is the empty set alone; subtree i+1 starts with order[i].
  int subtrees = static_cast<int>(order.size()) + 1;
  std::vector<std::vector<Found>> results(subtrees);
  std::vector<std::uint64_t> visits(subtrees, 0);
  auto run = [&](int t) {
    OrthogonalSearch s{rs, d, order, refl, opts.cap, opts.first_only, 0, {}, {}};
    if (t == 0) {
      ++s.visited;
      if (d == 0) s.found.push_back({1, id});
    } else if (d >= 2) {
      s.chosen.push_back(t - 1);
      s.visit(refl[t - 1]);
    }
    results[t] = std::move(s.found);
    visits[t] = s.visited;
  };
  int threads = std::max(1, opts.threads);
  if (threads == 1) {
    for (int t = 0; t < subtrees; ++t) {
      run(t);
      if (opts.first_only && !results[t].empty()) break;
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k)
      pool.emplace_back([&] {
        for (int t = next++; t < subtrees; t = next++) run(t);
      });
    for (auto& th : pool) th.join();
  }

  // Merge as a single sequential depth-first walk would have seen them.
  std::set<IntMatrix> seen;
  std::uint64_t offset = 0;
  for (int t = 0; t < subtrees; ++t) {
    for (const auto& f : results[t]) {
      if (offset + f.ordinal > opts.cap) return out;
      if (seen.insert(f.m).second) {
        out.emplace_back(rs, f.m);
        if (opts.first_only) return out;
      }
    }
    offset += visits[t];
    if (offset >= opts.cap) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms of subsystems realized in W.

bool is_nontrivial_permutation(const std::vector<int>& perm) {
  for (int j = 0; j < static_cast<int>(perm.size()); ++j)
    if (perm[j] != j) return true;
  return false;
}

namespace {

int index_in(const std::vector<IntVec>& pi, const IntVec& v) {
  for (int j = 0; j < static_cast<int>(pi.size()); ++j)
    if (pi[j] == v) return j;
  return -1;
}

void exhaustive_route(const RootSystem& rs, const SubsystemSpec& spec, AutomorphismResult& res) {
  auto chain = parabolic_transversals(rs);
  int r = rs.rank();
  const auto& pi = spec.pi;
  std::vector<int> pick(r);
  // Apply t_1 first, then t_2, ...; w = t_r ... t_1.
  std::vector<std::vector<IntVec>> level(r + 1);
  level[0] = pi;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == r) {
      std::vector<int> perm;
      for (const auto& v : level[r]) {
        int j = index_in(pi, v);
        if (j < 0) return;
        perm.push_back(j);
      }
      IntMatrix m = IntMatrix::identity(r);
      for (int q = r - 1; q >= 0; --q) m = m * chain[q][pick[q]];
      res.elements.push_back({WeylElement(rs, m), perm});
      return;
    }
    for (int c = 0; c < static_cast<int>(chain[k].size()); ++c) {
      pick[k] = c;
      level[k + 1].clear();
      for (const auto& v : level[k]) level[k + 1].push_back(chain[k][c].apply(v));
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  std::sort(res.elements.begin(), res.elements.end(),
            [](const SubsystemAutomorphism& a, const SubsystemAutomorphism& b) { return a.w < b.w; });
}

// Whether an automorphism of Phi lies in W: push it down along right
// descents; what remains fixes the positive chamber.
bool in_weyl_group(const RootSystem& rs, IntMatrix u) {
  while (true) {
    int i = 0;
    while (i < rs.rank() && is_positive_vector(u.col(i))) ++i;
    if (i == rs.rank()) break;
    u = u * rs.simple_reflection_matrix(i);
  }
  return u == IntMatrix::identity(rs.rank());
}

void extension_route(const RootSystem& rs, const SubsystemSpec& spec, AutomorphismResult& res) {
  int r = rs.rank();
  const auto& pi = spec.pi;
  int k = static_cast<int>(pi.size());
  // Basis: pi extended greedily by simple roots.
  std::vector<IntVec> basis = pi;
  for (int i = 0; i < r && static_cast<int>(basis.size()) < r; ++i) {
    auto trial = basis;
    trial.push_back(rs.simple_root(i));
    IntMatrix m(r, static_cast<int>(trial.size()));
    for (int c = 0; c < m.cols(); ++c)
      for (int q = 0; q < r; ++q) m(q, c) = trial[c][q];
    if (rank_rational(m) == static_cast<int>(trial.size())) basis = trial;
  }
  IntMatrix bmat(r, r);
  for (int c = 0; c < r; ++c)
    for (int q = 0; q < r; ++q) bmat(q, c) = basis[c][q];
  auto binv = inverse_rational(bmat);

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<IntMatrix> seen;
  do {
    bool gram_ok = true;
    for (int a = 0; a < k && gram_ok; ++a)
      for (int b = 0; b < k && gram_ok; ++b)
        if (rs.form(pi[a], pi[b]) != rs.form(pi[perm[a]], pi[perm[b]])) gram_ok = false;
    if (!gram_ok) continue;
    std::vector<IntVec> img(r);
    for (int a = 0; a < k; ++a) img[a] = pi[perm[a]];
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == r) {
        // M = Img * B^{-1}, must be integral and permute Phi.
        IntMatrix m(r, r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            Rational s(0);
            for (int c = 0; c < r; ++c) s = s + Rational(img[c][i]) * binv[c][j];
            if (!s.is_integer()) return;
            m(i, j) = static_cast<int>(s.num());
          }
        for (const auto& root : rs.roots())
          if (!rs.is_root(m.apply(root))) return;
        if (!in_weyl_group(rs, m) || !seen.insert(m).second) return;
        res.elements.push_back({WeylElement(rs, m), perm});
        return;
      }
      for (const auto& cand : rs.roots()) {
        bool ok = true;
        for (int c = 0; c < pos && ok; ++c)
          if (rs.form(cand, img[c]) != rs.form(basis[pos], basis[c])) ok = false;
        if (ok && rs.form(cand, cand) != rs.form(basis[pos], basis[pos])) ok = false;
        if (!ok) continue;
        img[pos] = cand;
        self(self, pos + 1);
      }
    };
    rec(rec, k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(res.elements.begin(), res.elements.end(),
            [](const SubsystemAutomorphism& a, const SubsystemAutomorphism& b) { return a.w < b.w; });
}

}  // namespace

AutomorphismResult subsystem_automorphisms_in_W(const RootSystem& rs, const SubsystemSpec& spec,
                                                AutomorphismRoute route) {
  AutomorphismResult res;
  constexpr std::uint64_t kExhaustiveLimit = 3000000;
  if (route == AutomorphismRoute::automatic)
    route = weyl_group_order(rs) <= kExhaustiveLimit ? AutomorphismRoute::exhaustive : AutomorphismRoute::extension;
  if (route == AutomorphismRoute::exhaustive) {
    if (weyl_group_order(rs) > kExhaustiveLimit) {
      res.reason = "|W| exceeds the exhaustive limit";
      return res;
    }
    exhaustive_route(rs, spec, res);
    res.route = "exhaustive";
  } else {
    if (spec.torus_rank > 2) {
      res.reason = "extension route needs central torus rank <= 2";
      return res;
    }
    extension_route(rs, spec, res);
    res.route = "extension";
  }
  res.computed = true;
  return res;
}

}  // namespace sph

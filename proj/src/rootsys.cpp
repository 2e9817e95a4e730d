#include "sph/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace sph {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (c >= 'A' && c <= 'G') return static_cast<Family>(c - 'A');
  }
  throw Error("unknown root system family '" + s + "'");
}

int height(const IntVec& v) {
  int h = 0;
  for (int x : v) h += x;
  return h;
}

int standard_positive_count(Family family, int n) {
  switch (family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

namespace {

void validate_type(Family f, int n) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = n >= 1; break;
    case Family::B:
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 4; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok)
    throw Error(std::string("invalid type ") + family_letter(f) + std::to_string(n) +
                " (valid: A n>=1, B n>=2, C n>=2, D n>=4, E 6-8, F 4, G 2)");
}

// Dynkin edges (0-based) and root lengths.
void dynkin_data(Family f, int n, std::vector<std::pair<int, int>>& edges, IntVec& len) {
  len.assign(n, 1);
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) edges.emplace_back(i, i + 1);
  };
  switch (f) {
    case Family::A: chain(n); break;
    case Family::B:
      chain(n);
      for (int i = 0; i < n - 1; ++i) len[i] = 2;
      break;
    case Family::C:
      chain(n);
      len[n - 1] = 2;
      break;
    case Family::D:
      chain(n - 1);
      edges.emplace_back(n - 3, n - 1);
      break;
    case Family::E:
      edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
      for (int i = 4; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case Family::F:
      chain(4);
      len = {2, 2, 1, 1};
      break;
    case Family::G:
      chain(2);
      len = {1, 3};
      break;
  }
}

}  // namespace

RootSystem RootSystem::build(Family family, int n) {
  validate_type(family, n);
  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = n;
  std::vector<std::pair<int, int>> edges;
  dynkin_data(family, n, edges, rs.len_);

  rs.gram_ = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) rs.gram_(i, i) = 2 * rs.len_[i];
  for (auto [i, j] : edges) {
    int v = -std::max(rs.len_[i], rs.len_[j]);
    rs.gram_(i, j) = rs.gram_(j, i) = v;
  }
  rs.cartan_ = IntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.cartan_(i, j) = rs.gram_(i, j) / rs.len_[i];

  // Reflection closure of the simple roots.
  std::set<IntVec> seen;
  std::deque<IntVec> queue;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVec v = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      IntVec w = v;
      w[i] -= rs.pairing(v, i);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  std::vector<IntVec> pos;
  for (const auto& v : seen)
    if (height(v) > 0) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), [](const IntVec& a, const IntVec& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  rs.roots_ = pos;
  for (const auto& v : pos) {
    IntVec m = v;
    for (auto& x : m) x = -x;
    rs.roots_.push_back(m);
  }
  for (int i = 0; i < static_cast<int>(rs.roots_.size()); ++i) rs.index_[rs.roots_[i]] = i;
  if (rs.num_positive() != standard_positive_count(family, n))
    throw Error("root generation produced a wrong number of roots");
  return rs;
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

int RootSystem::form(const IntVec& u, const IntVec& v) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (!u[i]) continue;
    for (int j = 0; j < rank_; ++j) s += u[i] * gram_(i, j) * v[j];
  }
  return s;
}

int RootSystem::pairing(const IntVec& beta, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += beta[j] * gram_(j, i);
  return s / len_[i];
}

int RootSystem::pairing_root(const IntVec& beta, const IntVec& gamma) const {
  return 2 * form(beta, gamma) / form(gamma, gamma);
}

bool RootSystem::is_long(const IntVec& root) const {
  int mx = *std::max_element(len_.begin(), len_.end());
  return form(root, root) == 2 * mx;
}

int RootSystem::root_index(const IntVec& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::negative_index(int idx) const {
  int n = num_positive();
  return idx < n ? idx + n : idx - n;
}

IntVec RootSystem::simple_root(int i) const {
  IntVec e(rank_, 0);
  e[i] = 1;
  return e;
}

std::vector<IntVec> RootSystem::extended_basis() const {
  std::vector<IntVec> out;
  for (int i = 0; i < rank_; ++i) out.push_back(simple_root(i));
  IntVec mb = highest_root();
  for (auto& x : mb) x = -x;
  out.push_back(mb);
  return out;
}

std::vector<int> RootSystem::bad_primes() const {
  switch (family_) {
    case Family::A: return {};
    case Family::B:
    case Family::C:
    case Family::D: return {2};
    case Family::E: return rank_ == 8 ? std::vector<int>{2, 3, 5} : std::vector<int>{2, 3};
    case Family::F:
    case Family::G: return {2, 3};
  }
  return {};
}

bool RootSystem::is_good_prime(int p) const {
  auto bad = bad_primes();
  return std::find(bad.begin(), bad.end(), p) == bad.end();
}

IntMatrix RootSystem::simple_reflection_matrix(int i) const {
  IntMatrix m = IntMatrix::identity(rank_);
  // s_i(a_j) = a_j - <a_j, a_i^vee> a_i; column j is the image of a_j.
  for (int j = 0; j < rank_; ++j) m(i, j) -= cartan_(i, j);
  return m;
}

IntVec RootSystem::reflect(const IntVec& v, const IntVec& root) const {
  int c = pairing_root(v, root);
  IntVec out = v;
  for (int i = 0; i < rank_; ++i) out[i] -= c * root[i];
  return out;
}

namespace {

std::vector<std::vector<int>> simple_roots_epsilon(const RootSystem& rs) {
  Family f = rs.family();
  if (f != Family::A && f != Family::B && f != Family::C && f != Family::D)
    throw Error("epsilon coordinates exist only for classical types");
  int n = rs.rank();
  int m = f == Family::A ? n + 1 : n;
  std::vector<std::vector<int>> out(n, std::vector<int>(m, 0));
  for (int i = 0; i + 1 < n; ++i) {
    out[i][i] = 1;
    out[i][i + 1] = -1;
  }
  auto& last = out[n - 1];
  switch (f) {
    case Family::A: last[n - 1] = 1, last[n] = -1; break;
    case Family::B: last[n - 1] = 1; break;
    case Family::C: last[n - 1] = 2; break;
    default: last[n - 2] = 1, last[n - 1] = 1; break;
  }
  return out;
}

}  // namespace

std::vector<int> root_to_epsilon(const RootSystem& rs, const IntVec& root) {
  auto simple = simple_roots_epsilon(rs);
  std::vector<int> out(simple[0].size(), 0);
  for (int i = 0; i < rs.rank(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += root[i] * simple[i][j];
  return out;
}

IntVec root_from_epsilon(const RootSystem& rs, const std::vector<int>& eps) {
  auto simple = simple_roots_epsilon(rs);
  int m = static_cast<int>(simple[0].size());
  if (static_cast<int>(eps.size()) != m) throw Error("root_from_epsilon: wrong length");
  IntMatrix s(m, rs.rank());
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < m; ++j) s(j, i) = simple[i][j];
  auto sol = solve_rational(s, eps);
  IntVec out;
  if (sol)
    for (auto& q : *sol) {
      if (!q.is_integer()) break;
      out.push_back(static_cast<int>(q.num()));
    }
  if (static_cast<int>(out.size()) != rs.rank()) throw Error("root_from_epsilon: not in the root lattice");
  return out;
}

// ---------------------------------------------------------------------------

std::string SubsystemComponent::name() const {
  return std::string(1, family) + std::to_string(rank) + (short_roots ? "~" : "");
}

std::string SubsystemSpec::type_string() const {
  std::string s;
  for (const auto& c : components) s += (s.empty() ? "" : "x") + c.name();
  if (torus_rank > 0) s += (s.empty() ? "" : "x") + std::string("T") + std::to_string(torus_rank);
  return s.empty() ? "T0" : s;
}

namespace {

IntMatrix columns_matrix(const std::vector<IntVec>& cols, int rank) {
  IntMatrix m(rank, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (int i = 0; i < rank; ++i) m(i, j) = cols[j][i];
  return m;
}

SubsystemComponent classify_component(const RootSystem& rs, const std::vector<IntVec>& pi,
                                      const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  // a[i][j] = <pi_j, pi_i^vee>
  std::vector<std::vector<int>> a(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = rs.pairing_root(pi[nodes[j]], pi[nodes[i]]);
  std::vector<int> norm(n), deg(n, 0);
  int maxnorm = 0, minnorm = 1 << 30;
  for (int i = 0; i < n; ++i) {
    norm[i] = rs.form(pi[nodes[i]], pi[nodes[i]]);
    maxnorm = std::max(maxnorm, norm[i]);
    minnorm = std::min(minnorm, norm[i]);
  }
  int doubles = 0, triples = 0;
  std::pair<int, int> dbl{-1, -1};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int m = a[i][j] * a[j][i];
      if (!m) continue;
      ++deg[i];
      ++deg[j];
      if (m == 2) {
        ++doubles;
        dbl = {i, j};
      }
      if (m == 3) ++triples;
    }
  bool ambient_multi = rs.family() == Family::B || rs.family() == Family::C ||
                       rs.family() == Family::F || rs.family() == Family::G;
  int ambient_long = 0;
  for (int i = 0; i < rs.rank(); ++i) ambient_long = std::max(ambient_long, 2 * rs.simple_length(i));

  SubsystemComponent comp{'A', n, false, nodes};
  if (triples) {
    comp.family = 'G';
    return comp;
  }
  if (doubles == 0) {
    comp.short_roots = ambient_multi && maxnorm < ambient_long;
    int branch = -1;
    for (int i = 0; i < n; ++i)
      if (deg[i] == 3) branch = i;
    if (branch < 0) return comp;  // A_n
    // Arm lengths from the branch node.
    std::vector<int> arms;
    for (int j = 0; j < n; ++j) {
      if (j == branch || !a[branch][j]) continue;
      int len = 1, prev = branch, cur = j;
      while (true) {
        int nxt = -1;
        for (int k = 0; k < n; ++k)
          if (k != prev && k != cur && a[cur][k]) nxt = k;
        if (nxt < 0) break;
        prev = cur;
        cur = nxt;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      comp.family = 'D';
    } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      comp.family = 'E';
    } else {
      throw Error("classify_subsystem: unexpected Dynkin diagram");
    }
    return comp;
  }
  if (n == 2) {
    comp.family = rs.family() == Family::C ? 'C' : 'B';
    return comp;
  }
  auto [u, v] = dbl;
  int end = deg[u] == 1 ? u : deg[v] == 1 ? v : -1;
  if (end < 0) {
    comp.family = 'F';
    return comp;
  }
  comp.family = norm[end] == minnorm ? 'B' : 'C';
  return comp;
}

// Primitive integral functional on the root lattice vanishing on pi
// (torus rank one only).
std::optional<IntVec> vanishing_functional(const RootSystem& rs, const std::vector<IntVec>& pi) {
  int n = rs.rank();
  int k = static_cast<int>(pi.size());
  for (int j = 0; j < n; ++j) {
    // Unknowns x (x_j = 1): sum_i pi[r][i] x_i = 0 for each r.
    IntMatrix m(k, n - 1);
    IntVec rhs(k);
    for (int r = 0; r < k; ++r) {
      int c = 0;
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        m(r, c++) = pi[r][i];
      }
      rhs[r] = -pi[r][j];
    }
    auto sol = solve_rational(m, rhs);
    if (!sol) continue;
    std::vector<Rational> x;
    int c = 0;
    for (int i = 0; i < n; ++i) x.push_back(i == j ? Rational(1) : (*sol)[c++]);
    std::int64_t l = 1;
    for (auto& q : x) l = l / gcd64(l, q.den()) * q.den();
    IntVec out(n);
    std::int64_t g = 0;
    for (int i = 0; i < n; ++i) {
      out[i] = static_cast<int>((x[i] * Rational(l)).num());
      g = gcd64(g, out[i]);
    }
    for (auto& y : out) y /= static_cast<int>(g);
    return out;
  }
  return std::nullopt;
}

bool is_spherical_levi_shape(const RootSystem& rs, const SubsystemSpec& spec) {
  if (spec.torus_rank == 0) return true;
  if (spec.torus_rank > 1) return false;
  auto lam = vanishing_functional(rs, spec.pi);
  if (!lam) return false;
  int zeros = 0;
  for (const auto& r : rs.roots()) {
    int v = 0;
    for (int i = 0; i < rs.rank(); ++i) v += (*lam)[i] * r[i];
    if (std::abs(v) > 1) return false;
    if (v == 0) ++zeros;
  }
  return zeros == spec.num_roots();
}

}  // namespace

SubsystemSpec classify_subsystem(const RootSystem& rs, const std::vector<IntVec>& pi) {
  auto ext = rs.extended_basis();
  for (const auto& v : pi) {
    if (static_cast<int>(v.size()) != rs.rank() || std::find(ext.begin(), ext.end(), v) == ext.end())
      throw Error("classify_subsystem: element is neither a simple root nor -beta1");
  }
  SubsystemSpec spec;
  spec.pi = pi;
  int k = static_cast<int>(pi.size());
  if (k > 0) {
    IntMatrix m = columns_matrix(pi, rs.rank());
    if (rank_rational(m) != k) throw Error("classify_subsystem: pi is linearly dependent");
    for (int idx = 0; idx < rs.num_roots(); ++idx) {
      auto sol = solve_rational(m, rs.root(idx));
      if (!sol) continue;
      bool integral = std::all_of(sol->begin(), sol->end(), [](const Rational& q) { return q.is_integer(); });
      if (integral) spec.closure.push_back(idx);
    }
  }
  spec.torus_rank = rs.rank() - k;

  std::vector<int> comp_of(k, -1);
  for (int s = 0; s < k; ++s) {
    if (comp_of[s] >= 0) continue;
    std::vector<int> nodes{s};
    comp_of[s] = s;
    for (std::size_t q = 0; q < nodes.size(); ++q)
      for (int t = 0; t < k; ++t)
        if (comp_of[t] < 0 && rs.form(pi[nodes[q]], pi[t]) != 0) {
          comp_of[t] = s;
          nodes.push_back(t);
        }
    std::sort(nodes.begin(), nodes.end());
    spec.components.push_back(classify_component(rs, pi, nodes));
  }
  std::stable_sort(spec.components.begin(), spec.components.end(),
                   [](const SubsystemComponent& a, const SubsystemComponent& b) {
                     if (a.rank != b.rank) return a.rank > b.rank;
                     return a.family < b.family;
                   });

  int expected = 0;
  for (const auto& c : spec.components) {
    Family f = static_cast<Family>(c.family - 'A');
    expected += 2 * standard_positive_count(f, c.rank);
  }
  if (expected != spec.num_roots()) throw Error("classify_subsystem: closure size disagrees with type");
  return spec;
}

std::vector<SubsystemSpec> enumerate_semisimple_candidates(const RootSystem& rs, int dim_bound,
                                                           CandidateFilter filter) {
  auto ext = rs.extended_basis();
  int nodes = static_cast<int>(ext.size());
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask + 1 < (1u << nodes); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < nodes; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(s);
  }
  std::sort(subsets.begin(), subsets.end());
  std::vector<SubsystemSpec> out;
  for (const auto& s : subsets) {
    std::vector<IntVec> pi;
    for (int i : s) pi.push_back(ext[i]);
    SubsystemSpec spec = classify_subsystem(rs, pi);
    int dim = rs.num_roots() - spec.num_roots();
    if (spec.num_roots() >= rs.num_roots() || dim > dim_bound) continue;
    if (filter == CandidateFilter::spherical_levi && !is_spherical_levi_shape(rs, spec)) continue;
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<int> extended_nodes(const RootSystem& rs, const SubsystemSpec& spec) {
  auto ext = rs.extended_basis();
  std::vector<int> out;
  for (const auto& v : spec.pi)
    out.push_back(static_cast<int>(std::find(ext.begin(), ext.end(), v) - ext.begin()));
  return out;
}

}  // namespace sph

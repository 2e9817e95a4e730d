#include "sph/chevalley.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>

#include "sph/fp.hpp"

namespace sph {

namespace {

constexpr int kUnknown = INT_MIN;

struct ConstantSolver {
  const RootSystem& rs;
  const std::vector<int>& sum;
  std::vector<int>& n;
  int np;

  int add(int a, int b) const { return sum[a * np + b]; }
  bool pos(int a) const { return rs.is_positive_index(a); }
  int neg(int a) const { return rs.negative_index(a); }
  Rational norm(int a) const { return Rational(rs.form(rs.root(a), rs.root(a))); }

  int as_int(const Rational& q) const {
    if (!q.is_integer()) throw Error("ChevalleyAlgebra: non-integral structure constant");
    return static_cast<int>(q.num());
  }

  // Any pair of roots whose sum is a root.
  int get(int a, int b) {
    int z = add(a, b);
    if (pos(a) && pos(b)) return positive(a, b);
    if (!pos(a) && !pos(b)) return -positive(neg(a), neg(b));
    if (!pos(a)) return -get(b, a);
    // a > 0 > b
    if (pos(z)) return as_int(Rational(-1) * norm(z) / norm(a) * Rational(positive(neg(b), z)));
    return as_int(norm(z) / norm(b) * Rational(positive(neg(z), a)));
  }

  int positive(int a, int b) {
    if (a > b) return -positive(b, a);
    int& slot = n[a * np + b];
    if (slot != kUnknown) return slot;
    int xi = add(a, b);
    int al = 0;
    while (add(xi, neg(al)) < 0 || !pos(add(xi, neg(al)))) ++al;
    int be = add(xi, neg(al));
    int p = 0;
    for (int cur = be; (cur = add(cur, neg(al))) >= 0;) ++p;
    int value;
    if (a == al && b == be) {
      value = p + 1;
    } else {
      int g = a, d = b;
      Rational term(0);
      int bg = add(be, neg(g));
      if (bg >= 0) term = term + Rational(get(be, neg(g))) * Rational(get(al, neg(d))) / norm(bg);
      int ag = add(al, neg(g));
      if (ag >= 0) term = term + Rational(get(neg(g), al)) * Rational(get(be, neg(d))) / norm(ag);
      value = as_int(norm(xi) / Rational(positive(al, be)) * term);
    }
    n[a * np + b] = value;
    return value;
  }
};

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(const RootSystem& rs) : rs_(&rs) {
  int np = rs.num_roots();
  sum_.assign(static_cast<std::size_t>(np) * np, -1);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      IntVec v = rs.root(a);
      for (int i = 0; i < rs.rank(); ++i) v[i] += rs.root(b)[i];
      sum_[a * np + b] = rs.root_index(v);
    }
  n_.assign(static_cast<std::size_t>(np) * np, kUnknown);
  ConstantSolver solver{rs, sum_, n_, np};
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      if (sum_[a * np + b] >= 0) n_[a * np + b] = solver.get(a, b);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      if (sum_[a * np + b] < 0) {
        n_[a * np + b] = 0;
        continue;
      }
      int p = 0;
      for (int cur = b; (cur = sum_[cur * np + rs.negative_index(a)]) >= 0;) ++p;
      if (std::abs(n_[a * np + b]) != p + 1) throw Error("ChevalleyAlgebra: |N_{a,b}| != p+1");
    }
}

int ChevalleyAlgebra::structure_constant(int a, int b) const { return n_[a * rs_->num_roots() + b]; }

IntVec ChevalleyAlgebra::coroot(int a) const {
  const IntVec& r = rs_->root(a);
  int len = rs_->form(r, r) / 2;
  IntVec c(rs_->rank());
  for (int i = 0; i < rs_->rank(); ++i) c[i] = r[i] * rs_->simple_length(i) / len;
  return c;
}

ChevalleyAlgebra::Sparse ChevalleyAlgebra::bracket(int x, int y) const {
  int np = rs_->num_roots();
  bool xr = x < np, yr = y < np;
  Sparse out;
  if (xr && yr) {
    int s = sum_[x * np + y];
    if (s >= 0) {
      out.emplace_back(s, n_[x * np + y]);
    } else if (y == rs_->negative_index(x)) {
      IntVec c = coroot(x);
      for (int i = 0; i < rs_->rank(); ++i)
        if (c[i]) out.emplace_back(np + i, c[i]);
    }
  } else if (xr && !yr) {
    int v = rs_->pairing(rs_->root(x), y - np);
    if (v) out.emplace_back(x, -v);
  } else if (!xr && yr) {
    int v = rs_->pairing(rs_->root(y), x - np);
    if (v) out.emplace_back(y, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partitions.

int natural_dimension(Family family, int n) {
  switch (family) {
    case Family::A: return n + 1;
    case Family::B: return 2 * n + 1;
    case Family::C:
    case Family::D: return 2 * n;
    default: throw Error("natural_dimension: classical families only");
  }
}

bool is_valid_partition(Family family, int n, const std::vector<int>& lam) {
  if (family != Family::A && family != Family::B && family != Family::C && family != Family::D) return false;
  if (std::accumulate(lam.begin(), lam.end(), 0) != natural_dimension(family, n)) return false;
  if (!std::is_sorted(lam.rbegin(), lam.rend())) return false;
  if (!lam.empty() && lam.back() <= 0) return false;
  std::map<int, int> mult;
  for (int x : lam) ++mult[x];
  for (auto [part, m] : mult) {
    if (family == Family::C && part % 2 == 1 && m % 2 == 1) return false;
    if ((family == Family::B || family == Family::D) && part % 2 == 0 && m % 2 == 1) return false;
  }
  return true;
}

std::vector<std::vector<int>> partitions_of(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxp) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, m, m);
  return out;
}

std::vector<std::vector<int>> valid_partitions(Family family, int n) {
  std::vector<std::vector<int>> out;
  for (auto& lam : partitions_of(natural_dimension(family, n)))
    if (is_valid_partition(family, n, lam)) out.push_back(lam);
  return out;
}

std::vector<int> conjugate_partition(const std::vector<int>& lam) {
  std::vector<int> out;
  if (lam.empty()) return out;
  for (int k = 1; k <= lam.front(); ++k)
    out.push_back(static_cast<int>(std::count_if(lam.begin(), lam.end(), [k](int x) { return x >= k; })));
  return out;
}

NilpotentSpec NilpotentSpec::from_roots(std::vector<IntVec> roots) {
  NilpotentSpec s;
  s.kind = Kind::roots;
  s.roots = std::move(roots);
  return s;
}

NilpotentSpec NilpotentSpec::from_partition(std::vector<int> partition) {
  NilpotentSpec s;
  s.kind = Kind::partition;
  std::sort(partition.rbegin(), partition.rend());
  s.partition = std::move(partition);
  return s;
}

std::optional<std::vector<IntVec>> partition_root_set(const RootSystem& rs, const std::vector<int>& lam) {
  Family f = rs.family();
  int n = rs.rank();
  if (!is_valid_partition(f, n, lam)) throw Error("partition_root_set: invalid partition for " + rs.name());
  int m = f == Family::A ? n + 1 : n;
  std::vector<std::vector<int>> eps;
  int next = 0;
  auto unit = [&](int i, int s, int j, int t) {
    std::vector<int> v(m, 0);
    v[i] += s;
    if (j >= 0) v[j] += t;
    return v;
  };
  auto chain = [&](int k) {
    for (int j = next; j + 1 < next + k; ++j) eps.push_back(unit(j, 1, j + 1, -1));
  };

  if (f == Family::A) {
    for (int k : lam) {
      chain(k);
      next += k;
    }
  } else {
    std::map<int, int> mult;
    for (int x : lam) ++mult[x];
    std::vector<int> singles;
    int one_pairs = 0;
    for (auto& [part, c] : mult) {
      // C: every even part is its own block. B/D: equal parts pair up into
      // GL blocks and an odd leftover stays single.
      int pairs = c / 2, rest = c % 2;
      if (f == Family::C && part % 2 == 0) pairs = 0, rest = c;
      for (int i = 0; i < rest; ++i) singles.push_back(part);
      if (part == 1) {
        one_pairs += pairs;
        continue;
      }
      for (int i = 0; i < pairs; ++i) {
        chain(part);
        next += part;
      }
    }
    if (f == Family::C) {
      for (int k : singles) {
        int d = k / 2;
        chain(d);
        eps.push_back(unit(next + d - 1, 2, -1, 0));
        next += d;
      }
      next += one_pairs;
    } else {
      // Orthogonal odd singles: pair each part >= 3 with a part 1; for B
      // the largest one instead becomes the odd-orthogonal block.
      std::vector<int> big;
      int ones = one_pairs * 2;
      for (int k : singles) {
        if (k == 1)
          ++ones;
        else
          big.push_back(k);
      }
      std::sort(big.rbegin(), big.rend());
      int bblock = -1;
      if (f == Family::B) {
        if (!big.empty()) {
          bblock = big.front();
          big.erase(big.begin());
        } else {
          bblock = 1;
          --ones;
        }
      }
      if (ones < static_cast<int>(big.size())) return std::nullopt;
      for (int a : big) {
        int mm = (a + 1) / 2;
        chain(mm);
        eps.push_back(unit(next + mm - 2, 1, next + mm - 1, 1));
        next += mm;
        --ones;
      }
      next += ones / 2;
      if (bblock > 1) {
        int k = (bblock - 1) / 2;
        chain(k);
        eps.push_back(unit(next + k - 1, 1, -1, 0));
        next += k;
      }
    }
  }
  if (next != m) throw Error("partition_root_set: index bookkeeping failed");
  std::vector<IntVec> out;
  for (const auto& v : eps) {
    IntVec r = root_from_epsilon(rs, v);
    if (!rs.is_root(r) || !rs.is_positive_index(rs.root_index(r)))
      throw Error("partition_root_set: produced a non-root");
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Centralizer dimensions.

namespace {

void check_prime(const RootSystem& rs, std::uint32_t p) {
  if (!is_prime(p) || p == 2 || !rs.is_good_prime(static_cast<int>(p))) {
    std::string bad;
    for (int q : rs.bad_primes()) bad += (bad.empty() ? "" : ",") + std::to_string(q);
    throw Error("prime " + std::to_string(p) + " is not an odd good prime for " + rs.name() + " (bad primes: {" +
                bad + "})");
  }
  // sl_{n+1} acquires a center when p divides n+1 and centralizer
  // dimensions in the Lie algebra jump.
  if (rs.family() == Family::A && (rs.rank() + 1) % p == 0)
    throw Error("prime " + std::to_string(p) + " divides n+1 for " + rs.name() + "; the Lie algebra dimension oracle needs p not dividing n+1");
}

std::vector<std::int64_t> element_vector(const ChevalleyAlgebra& alg, const std::vector<IntVec>& roots) {
  const RootSystem& rs = alg.root_system();
  if (!roots.empty()) {
    IntMatrix m(rs.rank(), static_cast<int>(roots.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (!rs.is_root(roots[j])) throw Error("nilpotent spec: not a root");
      for (int i = 0; i < rs.rank(); ++i) m(i, j) = roots[j][i];
    }
    if (rank_rational(m) != m.cols()) throw Error("nilpotent spec: roots are linearly dependent");
  }
  std::vector<std::int64_t> e(alg.dim(), 0);
  for (const auto& g : roots) {
    IntVec mg = g;
    for (auto& x : mg) x = -x;
    e[rs.root_index(mg)] += 1;
  }
  return e;
}

int ad_rank(const ChevalleyAlgebra& alg, const std::vector<std::int64_t>& e, const std::vector<int>& columns,
            std::uint32_t p) {
  PrimeField f(p);
  std::vector<std::vector<std::uint32_t>> rows(columns.size(), std::vector<std::uint32_t>(alg.dim(), 0));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (int k = 0; k < alg.dim(); ++k) {
      if (!e[k]) continue;
      for (auto [idx, coef] : alg.bracket(k, columns[c])) rows[c][idx] = f.add(rows[c][idx], f.reduce(e[k] * coef));
    }
  return rank_mod_p(std::move(rows), p);
}

}  // namespace

int centralizer_dim_nilpotent(const ChevalleyAlgebra& alg, const NilpotentSpec& spec, std::uint32_t p) {
  const RootSystem& rs = alg.root_system();
  check_prime(rs, p);
  std::vector<IntVec> roots = spec.roots;
  if (spec.kind == NilpotentSpec::Kind::partition) {
    auto set = partition_root_set(rs, spec.partition);
    if (!set) return centralizer_dim_natural(rs.family(), rs.rank(), spec.partition, p);
    roots = *set;
  }
  std::vector<int> all(alg.dim());
  std::iota(all.begin(), all.end(), 0);
  return alg.dim() - ad_rank(alg, element_vector(alg, roots), all, p);
}

int centralizer_dim_in_subalgebra(const ChevalleyAlgebra& alg, const std::vector<IntVec>& roots,
                                  const std::vector<int>& closure, std::uint32_t p) {
  const RootSystem& rs = alg.root_system();
  check_prime(rs, p);
  std::vector<int> cols = closure;
  for (int i = 0; i < rs.rank(); ++i) cols.push_back(alg.h_index(i));
  for (const auto& g : roots) {
    IntVec mg = g;
    for (auto& x : mg) x = -x;
    if (std::find(closure.begin(), closure.end(), rs.root_index(mg)) == closure.end())
      throw Error("centralizer_dim_in_subalgebra: element is not in the subalgebra");
  }
  return static_cast<int>(cols.size()) - ad_rank(alg, element_vector(alg, roots), cols, p);
}

int centralizer_dim_natural(Family family, int n, const std::vector<int>& lam, std::uint32_t p) {
  if (!is_valid_partition(family, n, lam)) throw Error("centralizer_dim_natural: invalid partition");
  if (!is_prime(p) || p == 2) throw Error("centralizer_dim_natural: odd prime required");
  if (family == Family::A && (n + 1) % p == 0) throw Error("centralizer_dim_natural: p divides n+1");
  int dim = natural_dimension(family, n);
  PrimeField f(p);
  // X as a matrix (X e_i is column i) and the Gram matrix of the form.
  std::vector<std::vector<std::int64_t>> x(dim, std::vector<std::int64_t>(dim, 0)), j = x;
  int base = 0;
  std::map<int, int> mult;
  for (int k : lam) ++mult[k];
  for (auto& [k, c] : mult) {
    bool single = family == Family::A || (family == Family::C ? k % 2 == 0 : k % 2 == 1);
    int pairs = single ? 0 : c / 2;
    int singles = single ? c : 0;
    for (int q = 0; q < singles; ++q) {
      for (int i = 0; i + 1 < k; ++i) x[base + i + 1][base + i] = 1;
      for (int i = 0; i < k; ++i) j[base + i][base + k - 1 - i] = i % 2 ? -1 : 1;
      base += k;
    }
    for (int q = 0; q < pairs; ++q) {
      // v_0..v_{k-1}, w_0..w_{k-1}: X v_i = v_{i+1}, X w_i = -w_{i-1}.
      std::int64_t sign = family == Family::C ? -1 : 1;
      for (int i = 0; i + 1 < k; ++i) {
        x[base + i + 1][base + i] = 1;
        x[base + k + i][base + k + i + 1] = -1;
      }
      for (int i = 0; i < k; ++i) {
        j[base + i][base + k + i] = 1;
        j[base + k + i][base + i] = sign;
      }
      base += 2 * k;
    }
  }
  // Unknown Y: entry (r, c) is variable r * dim + c.
  int nv = dim * dim;
  std::vector<std::vector<std::uint32_t>> rows;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      // (YX - XY)(r, c) = sum_k Y(r,k) X(k,c) - X(r,k) Y(k,c)
      std::vector<std::uint32_t> row(nv, 0);
      for (int k = 0; k < dim; ++k) {
        if (x[k][c]) row[r * dim + k] = f.add(row[r * dim + k], f.reduce(x[k][c]));
        if (x[r][k]) row[k * dim + c] = f.sub(row[k * dim + c], f.reduce(x[r][k]));
      }
      rows.push_back(std::move(row));
    }
  if (family == Family::A) {
    std::vector<std::uint32_t> row(nv, 0);
    for (int r = 0; r < dim; ++r) row[r * dim + r] = 1;
    rows.push_back(std::move(row));
  } else {
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        // (Y^T J + J Y)(r, c) = sum_k Y(k,r) J(k,c) + J(r,k) Y(k,c)
        std::vector<std::uint32_t> row(nv, 0);
        for (int k = 0; k < dim; ++k) {
          if (j[k][c]) row[k * dim + r] = f.add(row[k * dim + r], f.reduce(j[k][c]));
          if (j[r][k]) row[k * dim + c] = f.add(row[k * dim + c], f.reduce(j[r][k]));
        }
        rows.push_back(std::move(row));
      }
  }
  return nv - rank_mod_p(std::move(rows), p);
}

int class_dim_unipotent_partition(Family family, int n, const std::vector<int>& lam) {
  if (!is_valid_partition(family, n, lam)) throw Error("class_dim_unipotent_partition: invalid partition");
  int s = 0;
  for (int x : conjugate_partition(lam)) s += x * x;
  int odd = static_cast<int>(std::count_if(lam.begin(), lam.end(), [](int x) { return x % 2; }));
  switch (family) {
    case Family::A: return (n + 1) * (n + 1) - 1 - (s - 1);
    case Family::C: return n * (2 * n + 1) - (s + odd) / 2;
    case Family::B: return n * (2 * n + 1) - (s - odd) / 2;
    case Family::D: return n * (2 * n - 1) - (s - odd) / 2;
    default: throw Error("class_dim_unipotent_partition: classical families only");
  }
}

int class_dim_semisimple(const RootSystem& rs, const SubsystemSpec& spec) {
  return rs.num_roots() - spec.num_roots();
}

}  // namespace sph

#include "doctest.h"

#include <algorithm>
#include <set>

#include "sph/rootsys.hpp"

using namespace sph;

namespace {

// Classical roots in epsilon coordinates, converted to simple-root
// coordinates by solving the triangular system of the standard bases.
std::set<IntVec> classical_roots_oracle(Family f, int n) {
  int dim = f == Family::A ? n + 1 : n;
  auto eps = [&](int i, int s, int j, int t) {
    std::vector<int> v(dim, 0);
    if (i >= 0) v[i] += s;
    if (j >= 0) v[j] += t;
    return v;
  };
  std::vector<std::vector<int>> simple, roots;
  for (int i = 0; i + 1 < n + (f == Family::A ? 1 : 0); ++i) simple.push_back(eps(i, 1, i + 1, -1));
  if (f == Family::B) simple.push_back(eps(n - 1, 1, -1, 0));
  if (f == Family::C) simple.push_back(eps(n - 1, 2, -1, 0));
  if (f == Family::D) simple.push_back(eps(n - 2, 1, n - 1, 1));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      roots.push_back(eps(i, 1, j, -1));
      if (f != Family::A && i < j) {
        roots.push_back(eps(i, 1, j, 1));
        roots.push_back(eps(i, -1, j, -1));
      }
    }
  if (f == Family::B || f == Family::C)
    for (int i = 0; i < n; ++i) {
      int k = f == Family::B ? 1 : 2;
      roots.push_back(eps(i, k, -1, 0));
      roots.push_back(eps(i, -k, -1, 0));
    }
  IntMatrix s(dim, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < dim; ++i) s(i, j) = simple[j][i];
  std::set<IntVec> out;
  for (const auto& r : roots) {
    auto sol = solve_rational(s, r);
    REQUIRE(sol);
    IntVec v;
    for (auto& q : *sol) {
      REQUIRE(q.is_integer());
      v.push_back(static_cast<int>(q.num()));
    }
    out.insert(v);
  }
  return out;
}

std::multiset<std::string> types_of(const std::vector<SubsystemSpec>& v) {
  std::multiset<std::string> out;
  for (const auto& s : v) out.insert(s.type_string());
  return out;
}

}  // namespace

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootSystem::build(Family::D, 3), Error);
  CHECK_THROWS_AS(RootSystem::build(Family::D, 2), Error);
  CHECK_THROWS_AS(RootSystem::build(Family::E, 9), Error);
  CHECK_THROWS_AS(RootSystem::build(Family::B, 1), Error);
  CHECK_THROWS_AS(RootSystem::build(Family::G, 3), Error);
  CHECK_THROWS_AS(parse_family("Q"), Error);
}

TEST_CASE("classical root systems match the epsilon-coordinate oracle") {
  for (Family f : {Family::A, Family::B, Family::C, Family::D})
    for (int n = 1; n <= 7; ++n) {
      if ((f == Family::B || f == Family::C) && n < 2) continue;
      if (f == Family::D && n < 4) continue;
      auto rs = RootSystem::build(f, n);
      std::set<IntVec> got(rs.roots().begin(), rs.roots().end());
      CHECK(got == classical_roots_oracle(f, n));
    }
}

TEST_CASE("root counts, highest root and reflection closure") {
  struct T {
    Family f;
    int n;
    int pos;
  };
  for (T t : {T{Family::A, 1, 1}, T{Family::A, 5, 15}, T{Family::C, 4, 16}, T{Family::G, 2, 6},
              T{Family::F, 4, 24}, T{Family::E, 6, 36}, T{Family::E, 7, 63}, T{Family::E, 8, 120}}) {
    auto rs = RootSystem::build(t.f, t.n);
    CHECK(rs.num_positive() == t.pos);
    const IntVec& b = rs.highest_root();
    int maxh = 0;
    for (const auto& r : rs.roots()) maxh = std::max(maxh, height(r));
    CHECK(height(b) == maxh);
    for (int i = 0; i < rs.rank(); ++i) {
      IntVec up = b;
      up[i] += 1;
      CHECK_FALSE(rs.is_root(up));
    }
    for (const auto& r : rs.roots())
      for (int i = 0; i < rs.rank(); ++i) {
        IntVec s = r;
        s[i] -= rs.pairing(r, i);
        CHECK(rs.is_root(s));
      }
  }
  CHECK(RootSystem::build(Family::G, 2).highest_root() == IntVec{3, 2});
  CHECK(RootSystem::build(Family::A, 1).highest_root() == IntVec{1});
  for (int n = 2; n <= 6; ++n) {
    IntVec expect(n, 2);
    expect[n - 1] = 1;
    CHECK(RootSystem::build(Family::C, n).highest_root() == expect);
  }
}

TEST_CASE("bad primes") {
  CHECK(RootSystem::build(Family::A, 3).bad_primes().empty());
  CHECK(RootSystem::build(Family::D, 5).bad_primes() == std::vector<int>{2});
  CHECK(RootSystem::build(Family::E, 8).bad_primes() == std::vector<int>{2, 3, 5});
  CHECK(RootSystem::build(Family::G, 2).bad_primes() == std::vector<int>{2, 3});
}

TEST_CASE("classify_subsystem") {
  auto e6 = RootSystem::build(Family::E, 6);
  auto ext = e6.extended_basis();
  auto pi1 = classify_subsystem(e6, {ext[0], ext[2], ext[3], ext[4], ext[5], ext[6]});
  CHECK(pi1.type_string() == "A5xA1");
  auto empty = classify_subsystem(e6, {});
  CHECK(empty.num_roots() == 0);
  CHECK(empty.torus_rank == 6);
  CHECK_THROWS_AS(classify_subsystem(e6, ext), Error);

  auto e7 = RootSystem::build(Family::E, 7);
  auto x7 = e7.extended_basis();
  CHECK(classify_subsystem(e7, {x7[0], x7[1], x7[2], x7[3], x7[4], x7[5]}).type_string() == "E6xT1");

  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G}) {
    int n = f == Family::E ? 8 : f == Family::F ? 4 : f == Family::G ? 2 : 5;
    auto rs = RootSystem::build(f, n);
    std::vector<IntVec> delta;
    for (int i = 0; i < n; ++i) delta.push_back(rs.simple_root(i));
    auto spec = classify_subsystem(rs, delta);
    CHECK(spec.type_string() == rs.name());
    CHECK(spec.num_roots() == rs.num_roots());
  }
}

TEST_CASE("short-root components are flagged") {
  auto g2 = RootSystem::build(Family::G, 2);
  CHECK(classify_subsystem(g2, {g2.simple_root(0)}).type_string() == "A1~xT1");
  auto f4 = RootSystem::build(Family::F, 4);
  CHECK(classify_subsystem(f4, {f4.simple_root(2), f4.simple_root(3)}).type_string() == "A2~xT2");
}

TEST_CASE("extended-basis candidates") {
  auto bound_of = [](const RootSystem& rs, int rk) { return rs.num_positive() + rk; };
  auto e6 = RootSystem::build(Family::E, 6);
  auto c6 = enumerate_semisimple_candidates(e6, bound_of(e6, 4));
  CHECK(types_of(c6) == std::multiset<std::string>{"A5xA1", "A5xA1", "A5xA1", "D5xT1", "D5xT1", "D5xT1"});

  auto e7 = RootSystem::build(Family::E, 7);
  CHECK(types_of(enumerate_semisimple_candidates(e7, bound_of(e7, 7))) ==
        std::multiset<std::string>{"A7", "D6xA1", "D6xA1", "E6xT1"});
  auto e8 = RootSystem::build(Family::E, 8);
  CHECK(types_of(enumerate_semisimple_candidates(e8, bound_of(e8, 8))) ==
        std::multiset<std::string>{"D8", "E7xA1"});
  auto f4 = RootSystem::build(Family::F, 4);
  CHECK(types_of(enumerate_semisimple_candidates(f4, bound_of(f4, 4))) ==
        std::multiset<std::string>{"B4", "C3xA1"});

  // The pure dimension bound also admits torus-rank-one shapes without a
  // depth-one grading.
  auto raw7 = types_of(enumerate_semisimple_candidates(e7, bound_of(e7, 7), CandidateFilter::dimension_only));
  CHECK(raw7.count("D6xT1") >= 1);

  for (const auto& s : c6) CHECK((e6.num_roots() - s.num_roots()) % 2 == 0);
  // stable ordering
  auto again = enumerate_semisimple_candidates(e6, bound_of(e6, 4));
  for (std::size_t i = 0; i < c6.size(); ++i) CHECK(again[i].pi == c6[i].pi);
}

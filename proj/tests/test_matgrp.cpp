#include <doctest.h>

#include <set>
#include <unordered_set>

#include "sph/matgrp.hpp"

using namespace sph;

namespace {

struct MatrixHash {
  std::size_t operator()(const FqMatrix& m) const {
    std::size_t h = 0;
    for (auto x : m.data()) h = h * 31 + x;
    return h;
  }
};

// Closure of the generators x_{+-a_i}(1) under multiplication.
std::vector<FqMatrix> generate(const ClassicalGroup& G) {
  const RootSystem& rs = G.root_system();
  std::vector<FqMatrix> gens;
  for (int i = 0; i < rs.rank(); ++i) {
    int a = rs.root_index(rs.simple_root(i));
    gens.push_back(G.root_element(a, 1));
    gens.push_back(G.root_element(rs.negative_index(a), 1));
  }
  FqMatrix id = FqMatrix::identity(G.prime(), G.degree());
  std::unordered_set<FqMatrix, MatrixHash> seen{id};
  std::vector<FqMatrix> all{id};
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const auto& s : gens) {
      FqMatrix h = all[k] * s;
      if (seen.insert(h).second) all.push_back(h);
    }
  return all;
}

ClassDescriptor find(Family f, int n, const std::string& rep, const std::string& label = "") {
  for (const auto& d : spherical_classes(f, n))
    if (d.representative.rfind(rep, 0) == 0 && (label.empty() || d.label == label)) return d;
  throw Error("no class " + rep + " " + label);
}

const std::vector<std::pair<Family, int>> kGroups = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4},
                                                     {Family::C, 2}, {Family::C, 3}, {Family::B, 2}, {Family::B, 3},
                                                     {Family::D, 4}};

}  // namespace

TEST_CASE("group orders") {
  CHECK(make_group(Family::C, 2, 5).order_string() == "9360000");
  CHECK(make_group(Family::A, 1, 3).order_string() == "24");
  // q^4 (q^2-1)(q^4-1) at q = 5.
  CHECK(make_group(Family::C, 2, 5).order_string() == std::to_string(625ull * 24 * 624));
  CHECK(generate(make_group(Family::A, 1, 3)).size() == 24);
  CHECK(std::to_string(generate(make_group(Family::C, 2, 3)).size()) == make_group(Family::C, 2, 3).order_string());
  CHECK(std::to_string(generate(make_group(Family::A, 2, 3)).size()) == make_group(Family::A, 2, 3).order_string());
}

TEST_CASE("invalid groups are rejected") {
  CHECK_THROWS_AS(make_group(Family::C, 2, 2), Error);
  CHECK_THROWS_AS(make_group(Family::C, 2, 9), Error);
  CHECK_THROWS_AS(make_group(Family::E, 6, 5), Error);
  CHECK_THROWS_AS(make_group(Family::D, 3, 5), Error);
}

TEST_CASE("forms in the external basis") {
  auto C = make_group(Family::C, 2, 5);
  auto D = make_group(Family::D, 4, 5);
  auto B = make_group(Family::B, 2, 5);
  FqMatrix jc = C.to_external(C.form());
  FqMatrix jd = D.to_external(D.form());
  FqMatrix jb = B.to_external(B.form());
  for (int i = 0; i < 2; ++i) {
    CHECK(jc(i, i + 2) == 1);
    CHECK(jc(i + 2, i) == 4);
  }
  for (int i = 0; i < 4; ++i) CHECK(jd(i, i + 4) == 1);
  CHECK(jb(0, 0) == 1);
  CHECK(jb(1, 3) == 1);
  CHECK(jb(4, 2) == 1);
  int nz = 0;
  for (auto x : jd.data()) nz += x != 0;
  CHECK(nz == 8);
}

TEST_CASE("generators preserve the form and B is upper triangular") {
  std::mt19937_64 rng(3);
  for (auto [f, n] : kGroups)
    for (std::uint32_t p : {3u, 5u}) {
      auto G = make_group(f, n, p);
      CAPTURE(G.name());
      for (int idx = 0; idx < G.root_system().num_roots(); ++idx)
        for (std::uint32_t t = 1; t < p; ++t) CHECK(G.contains(G.root_element(idx, t)));
      for (int i = 0; i < n; ++i) CHECK(G.contains(G.simple_rep(i)));
      for (int k = 0; k < 20; ++k) {
        FqMatrix b = random_borel(G, rng);
        CHECK(G.contains(b));
        for (int r = 0; r < G.degree(); ++r)
          for (int c = 0; c < r; ++c) CHECK(b(r, c) == 0);
      }
    }
}

TEST_CASE("non-members are rejected") {
  auto G = make_group(Family::C, 2, 5);
  FqMatrix g = FqMatrix::identity(5, 4);
  g(0, 1) = 1;
  CHECK(!G.contains(g));
  CHECK_THROWS_AS(G.bruhat_cell(g), Error);
  CHECK(!G.contains(FqMatrix::identity(5, 4).scaled(2)));
}

TEST_CASE("bruhat round trip") {
  std::mt19937_64 rng(11);
  for (auto [f, n] : kGroups)
    for (std::uint32_t p : {3u, 5u}) {
      auto G = make_group(f, n, p);
      auto W = enumerate_weyl_group(G.root_system());
      int bad = 0;
      for (int k = 0; k < 1000; ++k) {
        const auto& w = W[rng() % W.size()];
        if (!(G.bruhat_cell(random_borel(G, rng) * G.weyl_rep(w) * random_borel(G, rng)) == w)) ++bad;
      }
      CAPTURE(G.name());
      CHECK(bad == 0);
    }
}

TEST_CASE("x_{-alpha}(t) lies in the cell of s_alpha") {
  for (auto [f, n] : kGroups) {
    auto G = make_group(f, n, 5);
    const RootSystem& rs = G.root_system();
    for (int idx = 0; idx < rs.num_positive(); ++idx)
      for (std::uint32_t t = 1; t < 5; ++t)
        CHECK(G.bruhat_cell(G.root_element(rs.negative_index(idx), t)) == WeylElement::reflection(rs, rs.root(idx)));
    CHECK(G.bruhat_cell(FqMatrix::identity(5, G.degree())).is_identity());
  }
}

TEST_CASE("A3 cascade representatives") {
  auto G = make_group(Family::A, 3, 3);
  const RootSystem& rs = G.root_system();
  // beta_1 = e1 - e4, beta_2 = e2 - e3.
  std::vector<IntVec> beta{root_from_epsilon(rs, {1, 0, 0, -1}), root_from_epsilon(rs, {0, 1, -1, 0})};
  for (std::size_t j = 1; j <= 2; ++j) {
    FqMatrix g = FqMatrix::identity(3, 4);
    std::vector<IntVec> used(beta.begin(), beta.begin() + j);
    for (const auto& b : used) {
      IntVec m = b;
      for (auto& x : m) x = -x;
      g = g * G.root_element(m, 1);
    }
    CHECK(G.bruhat_cell(g) == reflection_product(rs, used));
  }
}

TEST_CASE("realize") {
  auto C3 = make_group(Family::C, 3, 5);
  auto sigma = C3.to_external(realize(C3, find(Family::C, 3, "sigma_1")));
  for (int i = 0; i < 6; ++i) CHECK(sigma(i, i) == (i % 3 == 0 ? 4u : 1u));

  ClassDescriptor trivial;
  trivial.family = Family::B;
  trivial.rank = 3;
  CHECK(realize(make_group(Family::B, 3, 5), trivial).is_identity());

  for (int n = 2; n <= 4; ++n) {
    auto B = make_group(Family::B, n, 5);
    for (const auto& d : spherical_classes(Family::B, n)) {
      if (d.kind != ClassKind::mixed) continue;
      auto parts = jordan_decompose(B, realize(B, d));
      FqMatrix s = B.to_external(parts.s);
      CHECK(s(0, 0) == 1);
      for (int i = 1; i <= 2 * n; ++i) CHECK(s(i, i) == 4);
      REQUIRE(d.label.rfind("(2^", 0) == 0);
      int m = std::stoi(d.label.substr(3)) / 2;
      std::vector<int> lam(2 * m, 2);
      lam.insert(lam.end(), 2 * n + 1 - 4 * m, 1);
      CHECK(unipotent_partition(parts.u) == lam);
    }
  }
  CHECK_THROWS_WITH_AS(realize(make_group(Family::A, 3, 5), find(Family::A, 3, "diag(lambda,mu I_3)")),
                       doctest::Contains("needs larger prime"), Error);
  CHECK_NOTHROW(realize(make_group(Family::A, 3, 7), find(Family::A, 3, "diag(lambda,mu I_3)")));
}

TEST_CASE("every cataloged class is realized with its Jordan type") {
  for (auto [f, n] : std::vector<std::pair<Family, int>>{{Family::A, 2},
                                                         {Family::A, 4},
                                                         {Family::A, 5},
                                                         {Family::B, 2},
                                                         {Family::B, 4},
                                                         {Family::C, 2},
                                                         {Family::C, 4},
                                                         {Family::D, 4},
                                                         {Family::D, 5}}) {
    // 11 - 1 is not a divisor of 6, so diag(lambda, mu I_5) exists in SL6.
    auto G = make_group(f, n, 11);
    for (const auto& d : spherical_classes(f, n)) {
      CAPTURE(d.type_name());
      CAPTURE(d.representative);
      CAPTURE(d.label);
      FqMatrix g = realize(G, d);
      CHECK(G.contains(g));
      if (d.kind == ClassKind::unipotent) CHECK(unipotent_partition(g) == d.unipotent->partition);
    }
  }
}

TEST_CASE("jordan decomposition") {
  auto G = make_group(Family::C, 2, 5);
  const RootSystem& rs = G.root_system();
  FqMatrix u = G.root_element(rs.num_roots() - 1, 1);
  auto pu = jordan_decompose(G, u);
  CHECK(pu.s.is_identity());
  CHECK(pu.u == u);
  FqMatrix t = G.torus_element({2, 3});
  auto pt = jordan_decompose(G, t);
  CHECK(pt.s == t);
  CHECK(pt.u.is_identity());

  auto spec = nonspherical_witness_specs(Family::C, 2)[0];
  REQUIRE(spec.cls.kind == ClassKind::mixed);
  FqMatrix g = realize(G, spec.cls);
  auto pg = jordan_decompose(G, g);
  ClassDescriptor torus_only = spec.cls;
  torus_only.unipotent.reset();
  CHECK(pg.s == realize(G, torus_only));
  CHECK(unipotent_partition(pg.u) == std::vector<int>{2, 1, 1});

  std::mt19937_64 rng(5);
  auto W = enumerate_weyl_group(rs);
  for (int k = 0; k < 200; ++k) {
    FqMatrix x = random_borel(G, rng) * G.weyl_rep(W[rng() % W.size()]) * random_borel(G, rng);
    auto j = jordan_decompose(G, x);
    CHECK(j.s * j.u == x);
    CHECK(j.s * j.u == j.u * j.s);
    CHECK(element_order(j.s) % 5 != 0);
    std::uint64_t ou = element_order(j.u);
    while (ou % 5 == 0) ou /= 5;
    CHECK(ou == 1);
  }
}

TEST_CASE("involution criterion on Sp4(F5)") {
  auto G = make_group(Family::C, 2, 5);
  auto r = verify_involution_criterion(G, find(Family::C, 2, "u", "(2,1^2)"));
  CHECK(r.exhaustive);
  CHECK(r.conjugates == 936);
  CHECK(r.all_involutions);
  CHECK(r.max_value == 4);
  CHECK(r.achieved);

  auto spec = nonspherical_witness_specs(Family::C, 2)[0];
  auto bad = verify_involution_criterion(G, spec.cls);
  CHECK(!bad.all_involutions);
  REQUIRE(bad.witness_cell);
  CHECK(!bad.witness_cell->is_involution());
  auto target = reflection_product(G.root_system(), spec.cells[0]);
  CHECK(bad.cells.count(target) == 1);
}

TEST_CASE("every element of SL2(F3) lies in an involution cell") {
  auto G = make_group(Family::A, 1, 3);
  for (const auto& g : generate(G)) CHECK(G.bruhat_cell(g).is_involution());
}

TEST_CASE("sampling is independent of the thread count") {
  auto G = make_group(Family::C, 3, 5);
  auto d = find(Family::C, 3, "c_lambda");
  SamplingOptions a;
  a.budget = 5000;
  a.seed = 9;
  SamplingOptions b = a;
  b.threads = 3;
  auto ra = verify_involution_criterion(G, d, a);
  auto rb = verify_involution_criterion(G, d, b);
  CHECK(!ra.exhaustive);
  CHECK(ra.conjugates == 5000);
  CHECK(ra.cells == rb.cells);
  CHECK(ra.achieved);
  b.seed = 10;
  CHECK(!(verify_involution_criterion(G, d, b).cells == ra.cells));
}

TEST_CASE("witness search") {
  auto A3 = make_group(Family::A, 3, 5);
  for (const auto& s : nonspherical_witness_specs(Family::A, 3)) {
    if (s.cls.kind != ClassKind::mixed) continue;
    std::vector<WeylElement> targets;
    for (const auto& c : s.cells) targets.push_back(reflection_product(A3.root_system(), c));
    auto r = find_noninvolution_witness(A3, s.cls, targets);
    CHECK(r.found);
    CHECK(r.stage == "guided");
    REQUIRE(r.conjugator);
    FqMatrix g = realize(A3, s.cls, r.scales);
    CHECK(A3.bruhat_cell(*r.conjugator * g * r.conjugator->inverse()) == *r.cell);
  }

  auto A2 = make_group(Family::A, 2, 5);
  ClassDescriptor regular;
  regular.family = Family::A;
  regular.rank = 2;
  regular.kind = ClassKind::unipotent;
  regular.unipotent = NilpotentSpec::from_partition({3});
  std::vector<WeylElement> coxeter;
  for (const auto& w : enumerate_weyl_group(A2.root_system()))
    if (is_coxeter_element(w)) coxeter.push_back(w);
  auto r = find_noninvolution_witness(A2, regular, coxeter);
  CHECK(r.found);

  auto C2 = make_group(Family::C, 2, 5);
  std::vector<WeylElement> non_involutions;
  for (const auto& w : enumerate_weyl_group(C2.root_system()))
    if (!w.is_involution()) non_involutions.push_back(w);
  SamplingOptions small;
  small.budget = 2000;
  auto none = find_noninvolution_witness(C2, find(Family::C, 2, "u", "(2,1^2)"), non_involutions, small);
  CHECK(!none.found);
  CHECK(none.stage == "inconclusive");
}

TEST_CASE("rational forms split the B mixed witness class") {
  for (int n = 2; n <= 3; ++n) {
    auto G = make_group(Family::B, n, 5);
    auto spec = nonspherical_witness_specs(Family::B, n)[0];
    REQUIRE(spec.cls.kind == ClassKind::mixed);
    CHECK(rational_form_scales(G, spec.cls).size() == 4);
    auto target = reflection_product(G.root_system(), spec.cells[0]);
    auto r = find_noninvolution_witness(G, spec.cls, {target});
    CHECK(r.found);
    // 2 is the smallest non-square mod 5.
    CHECK(std::count(r.scales.begin(), r.scales.end(), 2u) == 1);
  }
}

TEST_CASE("centralizer orders") {
  auto sl2 = make_group(Family::A, 1, 3);
  CHECK(centralizer_order(sl2, FqMatrix::identity(3, 2).scaled(2)) == 24);

  // Transvections of Sp4(F3): two rational classes whose sizes add up to
  // the number of elements with rank(g - 1) = 1.
  auto sp4 = make_group(Family::C, 2, 3);
  const RootSystem& rs = sp4.root_system();
  int top = rs.negative_index(rs.root_index(rs.highest_root()));
  double both = class_size(sp4, sp4.root_element(top, 1)) + class_size(sp4, sp4.root_element(top, 2));
  int rank_one = 0;
  for (const auto& g : generate(sp4)) rank_one += (g - FqMatrix::identity(3, 4)).rank() == 1;
  CHECK(both == doctest::Approx(rank_one));
  CHECK(rank_one == 80);

  auto sl3 = make_group(Family::A, 2, 3);
  FqMatrix s = sl3.torus_element({2, 2, 1});
  CHECK(centralizer_order(sl3, s) == 48);
  int commuting = 0;
  for (const auto& g : generate(sl3)) commuting += g * s == s * g;
  CHECK(commuting == 48);
  CHECK_THROWS_AS(centralizer_order(sl3, FqMatrix::identity(3, 3), 1000), Error);
}

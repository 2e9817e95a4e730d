#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "sph/catalog.hpp"
#include "sph/chevalley.hpp"
#include "sph/matgrp.hpp"
#include "sph/weyl.hpp"

using namespace sph;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

// Criteria the source states but that are false; they must fail, and the
// run is consistent only when exactly these fail.
const std::set<int> kKnownFalse = {8};

struct Type {
  Family f;
  int n;
};

const std::vector<Type> kAllTypes = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::A, 5},
                                     {Family::B, 2}, {Family::B, 3}, {Family::B, 4}, {Family::C, 2}, {Family::C, 3},
                                     {Family::C, 4}, {Family::D, 4}, {Family::D, 5}, {Family::E, 6}, {Family::E, 7},
                                     {Family::E, 8}, {Family::F, 4}, {Family::G, 2}};

std::string type_name(Type t) { return std::string(1, family_letter(t.f)) + std::to_string(t.n); }

int cli(std::vector<std::string> args, std::string& out) {
  std::istringstream in;
  std::ostringstream os, err;
  int code = cli::run(args, in, os, err);
  out = os.str();
  return code;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

// 1. classify output against the transcribed tables.
Outcome golden() {
  Outcome o;
  int rows = 0;
  for (auto t : kAllTypes) {
    std::string name = type_name(t), out;
    std::ifstream f(std::string(SPH_GOLDEN_DIR) + "/" + name + ".tsv");
    if (!f) return {false, "missing golden file for " + name};
    std::vector<std::string> expected, got;
    for (std::string line; std::getline(f, line);) expected.push_back(line);
    int code = cli({"classify", "--family", std::string(1, family_letter(t.f)), "--rank", std::to_string(t.n),
                    "--format", "tsv"},
                   out);
    if (code != 0) return {false, name + ": classify exited with " + std::to_string(code)};
    std::istringstream is(out);
    for (std::string line; std::getline(is, line);) {
      auto c = split(line, '\t');
      got.push_back(c[0] + '\t' + c[1] + '\t' + c[2] + '\t' + c[3] + '\t' + c[5]);
    }
    if (got.size() != expected.size()) return {false, name + ": row count differs"};
    for (std::size_t i = 1; i < got.size(); ++i)
      if (got[i] != expected[i]) return {false, name + " row " + std::to_string(i) + ": '" + got[i] + "'"};
    rows += static_cast<int>(got.size()) - 1;
  }
  o.detail = std::to_string(rows) + " rows over " + std::to_string(kAllTypes.size()) + " types match";
  return o;
}

// 2. Every cataloged class has an involution certificate of the right value.
Outcome certification() {
  int count = 0;
  for (auto t : kAllTypes) {
    auto rs = RootSystem::build(t.f, t.n);
    for (const auto& d : spherical_classes(t.f, t.n)) {
      WeylElement w = WeylElement::identity(rs);
      try {
        w = certify_dimension_identity(rs, d);
      } catch (const Error& e) {
        return {false, type_name(t) + " " + d.representative + " " + d.label + ": " + e.what()};
      }
      if (!w.is_involution() || w.length() + w.rank_defect() != d.expected_dim)
        return {false, type_name(t) + " " + d.representative + ": bad certificate"};
      ++count;
      if (t.f == Family::F && d.kind == ClassKind::mixed) {
        int dim_b = rs.num_positive() + rs.rank();
        if (d.expected_dim != dim_b || !(w == longest_element(rs)))
          return {false, "F4 mixed class is not certified at dim B = " + std::to_string(dim_b)};
      }
    }
  }
  return {true, std::to_string(count) + " classes certified, F4 mixed at dim B = 28"};
}

// 3. Closed form against the ad-rank and natural-representation oracles, and
// brute-force centralizer orders over F_3.
Outcome dimension_oracles() {
  int partitions = 0;
  std::vector<Type> types;
  for (int n = 1; n <= 8; ++n) types.push_back({Family::A, n});
  for (int n = 2; n <= 4; ++n) types.push_back({Family::B, n});
  for (int n = 2; n <= 4; ++n) types.push_back({Family::C, n});
  types.push_back({Family::D, 4});
  for (auto t : types) {
    auto rs = RootSystem::build(t.f, t.n);
    ChevalleyAlgebra alg(rs);
    std::uint32_t p = oracle_prime(rs);
    for (const auto& lam : valid_partitions(t.f, t.n)) {
      int closed = class_dim_unipotent_partition(t.f, t.n, lam);
      int ad = alg.dim() - centralizer_dim_nilpotent(alg, NilpotentSpec::from_partition(lam), p);
      int nat = alg.dim() - centralizer_dim_natural(t.f, t.n, lam, p);
      if (closed != ad || closed != nat)
        return {false, type_name(t) + " " + partition_string(lam) + ": closed " + std::to_string(closed) +
                           ", ad-rank " + std::to_string(ad) + ", natural " + std::to_string(nat)};
      ++partitions;
    }
  }

  // Over F_q, q = 3: (q-1)^c <= |C_G(u)| <= 2 |Z| (q+1)^c with c the
  // centralizer dimension, and class sizes grow with the closed-form dim.
  int brute = 0;
  for (auto [f, n] : std::vector<Type>{{Family::C, 2}, {Family::A, 2}, {Family::A, 3}}) {
    auto G = make_group(f, n, 3);
    const auto& rs = G.root_system();
    int dimg = rs.num_roots() + rs.rank();
    double q = 3, z = f == Family::A ? std::gcd(n + 1, 2) : 2;
    std::vector<std::pair<int, double>> sizes;
    for (const auto& lam : valid_partitions(f, n)) {
      if (lam.front() == 1) continue;
      auto roots = partition_root_set(rs, lam);
      if (!roots) return {false, G.name() + " " + partition_string(lam) + ": no root-set representative"};
      FqMatrix u = FqMatrix::identity(3, G.degree());
      for (const auto& g : *roots) {
        IntVec neg = g;
        for (auto& x : neg) x = -x;
        u = u * G.root_element(neg, 1);
      }
      if (unipotent_partition(u) != lam) return {false, G.name() + " " + partition_string(lam) + ": wrong Jordan type"};
      int dim = class_dim_unipotent_partition(f, n, lam);
      int c = dimg - dim;
      double cent = static_cast<double>(centralizer_order(G, u));
      if (cent < std::pow(q - 1, c) || cent > 2 * z * std::pow(q + 1, c))
        return {false, G.name() + " " + partition_string(lam) + ": |C(u)| = " + std::to_string(cent) +
                           " outside the range for dim " + std::to_string(c)};
      sizes.push_back({dim, G.order() / cent});
      ++brute;
    }
    for (const auto& a : sizes)
      for (const auto& b : sizes)
        if (a.first < b.first && !(a.second < b.second))
          return {false, G.name() + ": class sizes do not grow with the dimension"};
  }
  return {true, std::to_string(partitions) + " partitions agree; " + std::to_string(brute) +
                    " brute-force centralizers over F_3 consistent"};
}

// 4. bruhat_cell(b1 w b2) = w.
Outcome round_trip() {
  std::vector<Type> groups = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::C, 2},
                              {Family::C, 3}, {Family::B, 2}, {Family::B, 3}, {Family::D, 4}};
  const int trials = 10000;
  int total = 0;
  for (std::uint32_t p : {3u, 5u})
    for (auto t : groups) {
      auto G = make_group(t.f, t.n, p);
      auto W = enumerate_weyl_group(G.root_system());
      std::vector<FqMatrix> reps;
      for (const auto& w : W) reps.push_back(G.weyl_rep(w));
      std::mt19937_64 rng(kSeed + p * 100 + total);
      std::uniform_int_distribution<std::size_t> pick(0, W.size() - 1);
      for (int i = 0; i < trials; ++i) {
        std::size_t k = pick(rng);
        FqMatrix g = random_borel(G, rng) * reps[k] * random_borel(G, rng);
        if (!(G.bruhat_cell(g) == W[k])) return {false, G.name() + ": round trip failed"};
      }
      total += trials;
    }
  return {true, std::to_string(total) + " triples over 18 groups, 0 failures"};
}

// 5. Every observed cell is an involution and the dimension is reached.
Outcome positive_verification(std::ostream& log) {
  std::vector<Type> types = {{Family::C, 2}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4},
                             {Family::C, 3}, {Family::B, 2}, {Family::B, 3}, {Family::D, 4}};
  int passed = 0, substituted = 0;
  for (auto t : types) {
    for (const auto& d : spherical_classes(t.f, t.n)) {
      std::string tag = type_name(t) + " " + d.representative + " " + d.label;
      for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        auto G = make_group(t.f, t.n, p);
        SamplingOptions opts;
        opts.budget = 100000;
        opts.seed = kSeed;
        opts.threads = cli::default_threads();
        opts.force_exhaustive = t.f == Family::C && t.n == 2;
        BruhatReport r;
        try {
          r = verify_involution_criterion(G, d, opts);
        } catch (const Error& e) {
          if (std::string(e.what()).find("needs larger prime") == std::string::npos) throw;
          if (p == 13) return {false, tag + ": not realizable up to p = 13"};
          continue;
        }
        if (p != 5) {
          log << "    note: " << tag << " is not realizable over F_5; verified over F_" << p << '\n';
          ++substituted;
        }
        if (!r.all_involutions) return {false, tag + ": non-involution cell observed"};
        if (!r.achieved) return {false, tag + ": dimension not achieved"};
        ++passed;
        break;
      }
    }
  }
  return {true, std::to_string(passed) + " classes pass (" + std::to_string(substituted) + " over a larger prime)"};
}

// 6. The proof's non-involution cells are reached.
Outcome witnesses() {
  int found = 0;
  for (auto t : std::vector<Type>{{Family::A, 3}, {Family::C, 2}, {Family::C, 3}, {Family::D, 4}, {Family::B, 3}}) {
    auto G = make_group(t.f, t.n, 5);
    for (const auto& spec : nonspherical_witness_specs(t.f, t.n)) {
      std::vector<WeylElement> targets;
      for (const auto& c : spec.cells) targets.push_back(reflection_product(G.root_system(), c));
      SamplingOptions opts;
      opts.seed = kSeed;
      auto r = find_noninvolution_witness(G, spec.cls, targets, opts);
      if (!r.found) return {false, type_name(t) + " " + spec.cls.representative + " " + spec.cls.label + ": not found"};
      FqMatrix g = realize(G, spec.cls, r.scales);
      if (!(G.bruhat_cell(*r.conjugator * g * r.conjugator->inverse()) == *r.cell))
        return {false, type_name(t) + " " + spec.cls.representative + ": conjugator does not reproduce the cell"};
      ++found;
    }
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
  SamplingOptions opts;
  opts.seed = kSeed;
  auto r = find_noninvolution_witness(A2, regular, coxeter, opts);
  if (!r.found) return {false, "SL3(F5) regular unipotent: no Coxeter cell reached"};
  return {true, std::to_string(found) + " witnesses found; SL3(F5) regular unipotent reaches [" +
                    word_string(r.cell->reduced_word()) + "]"};
}

// 7. Extended-basis candidate lists.
Outcome candidates() {
  std::map<std::string, std::multiset<std::string>> expected = {
      {"E6", {"A5xA1", "A5xA1", "A5xA1", "D5xT1", "D5xT1", "D5xT1"}},
      {"E7", {"A7", "D6xA1", "D6xA1", "E6xT1"}},
      {"E8", {"D8", "E7xA1"}},
      {"F4", {"B4", "C3xA1"}}};
  for (auto t : std::vector<Type>{{Family::E, 6}, {Family::E, 7}, {Family::E, 8}, {Family::F, 4}}) {
    auto rs = RootSystem::build(t.f, t.n);
    std::multiset<std::string> got;
    for (const auto& s : enumerate_semisimple_candidates(rs, spherical_bound(rs))) got.insert(s.type_string());
    if (got != expected[type_name(t)]) return {false, type_name(t) + ": candidate list differs"};
  }
  return {true, "E6, E7, E8, F4 lists exact"};
}

// 8. No Weyl element induces the nontrivial diagram symmetry of Pi4.
Outcome automorphisms() {
  std::vector<std::string> parts;
  bool ok = true;
  for (auto [t, k] : std::vector<std::pair<Type, int>>{{{Family::E, 6}, 5}, {{Family::E, 7}, 6}}) {
    auto rs = RootSystem::build(t.f, t.n);
    std::vector<IntVec> pi;
    for (int i = 0; i < k; ++i) pi.push_back(rs.simple_root(i));
    auto spec = classify_subsystem(rs, pi);
    auto res = subsystem_automorphisms_in_W(rs, spec, AutomorphismRoute::exhaustive);
    if (!res.computed) return {false, type_name(t) + ": " + res.reason};
    int nontrivial = 0;
    for (const auto& a : res.elements) nontrivial += is_nontrivial_permutation(a.perm);
    if (nontrivial) {
      ok = false;
      for (const auto& a : res.elements)
        if (is_nontrivial_permutation(a.perm))
          parts.push_back(type_name(t) + " " + spec.type_string() + ": w = [" + word_string(a.w.reduced_word()) +
                          "] induces it");
    } else {
      parts.push_back(type_name(t) + " " + spec.type_string() + ": none in W");
    }
  }
  std::string detail;
  for (std::size_t i = 0; i < parts.size(); ++i) detail += (i ? "; " : "") + parts[i];
  return {ok, detail};
}

// 9. B2 (3,1,1) through the CLI, with its flagged note.
Outcome b2_open_question() {
  std::string out;
  int code = cli({"verify", "--family", "B", "--rank", "2", "--prime", "5", "--seed", std::to_string(kSeed),
                  "--budget", "100000", "--format", "json"},
                 out);
  if (code != 0) return {false, "verify B2 exited with " + std::to_string(code)};
  auto doc = json::parse(out);
  for (const auto& c : doc["classes"]) {
    if (c["label"] != "(3,1^2)") continue;
    if (c["status"] != "pass") return {false, "B2 (3,1^2) did not pass"};
    if (c["flags"].empty()) return {false, "B2 (3,1^2) passed without a flagged note"};
    return {true, "flag: " + c["flags"][0].get<std::string>()};
  }
  return {false, "B2 (3,1^2) is not cataloged"};
}

}  // namespace

int main() {
  std::ostringstream notes;
  std::vector<Criterion> criteria = {
      {1, "catalog matches the transcribed tables", 1, golden},
      {2, "dimension identity certified for every class", 120, certification},
      {3, "closed form, ad-rank and brute-force dimensions agree", 60, dimension_oracles},
      {4, "Bruhat cell round trip", 120, round_trip},
      {5, "positive involution-criterion verification", 600, [&] { return positive_verification(notes); }},
      {6, "non-involution witnesses reached", 300, witnesses},
      {7, "extended-basis candidate lists", 10, candidates},
      {8, "diagram automorphisms of Pi4 not in W (E6, E7)", 120, automorphisms},
      {9, "B2 (3,1,1) verified and flagged", 60, b2_open_question},
  };
  std::set<int> failed;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.detail += " (time limit exceeded)";
    }
    if (!o.ok) failed.insert(c.id);
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail << " ["
              << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_s
              << " s]" << (!o.ok && kKnownFalse.count(c.id) ? " (known false)" : "") << '\n'
              << notes.str() << std::flush;
    notes.str("");
  }
  std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass";
  if (failed == kKnownFalse) {
    std::cout << "; the failures are exactly the known-false criteria\n";
    return 0;
  }
  std::cout << "; unexpected result\n";
  return 1;
}

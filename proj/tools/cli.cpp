#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sph/catalog.hpp"
#include "sph/chevalley.hpp"
#include "sph/matgrp.hpp"
#include "sph/rootsys.hpp"
#include "sph/weyl.hpp"

namespace sph::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum class Format { json, tsv, text };

struct RunConfig {
  std::string subcommand;
  std::string family;
  int rank = 0;
  std::uint32_t prime = 0;
  std::optional<std::uint64_t> seed;
  std::string budget = "100000";
  std::string format = "json";
  std::string output;
  int threads = 0;
  int bound = -1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "tsv") return Format::tsv;
  if (s == "text") return Format::text;
  throw UsageError("unknown format '" + s + "' (json, tsv or text)");
}

std::vector<int> one_based(std::vector<int> word) {
  for (int& i : word) ++i;
  return word;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string ints_string(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

RootSystem root_system_of(const RunConfig& c) {
  try {
    return RootSystem::build(parse_family(c.family), c.rank);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

bool needs_larger_prime(const Error& e) { return std::string(e.what()).find("needs larger prime") != std::string::npos; }

// Notes that record how an ambiguity of the classification was resolved;
// verify repeats them with the observed outcome.
std::vector<std::string> flagged_notes(const ClassDescriptor& d, const std::string& status, std::uint32_t p) {
  std::vector<std::string> out;
  for (const auto& note : d.notes)
    if (note.rfind("m=0 member", 0) == 0)
      out.push_back("m=0 shape " + d.label + " verified over F_" + std::to_string(p) + ": " + status);
  return out;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const RunConfig& c, Format fmt, std::ostream& out, std::ostream& err) {
  RootSystem rs = root_system_of(c);
  auto classes = spherical_classes(rs.family(), rs.rank());
  bool ok = true;
  ordered_json rows = ordered_json::array();
  if (fmt == Format::tsv) out << "type\tkind\trepresentative\tlabel\tdim\tsymmetric\tcertificate\tnotes\n";
  for (const auto& d : classes) {
    std::vector<int> word;
    std::string cert_error;
    try {
      word = one_based(certify_dimension_identity(rs, d).reduced_word());
    } catch (const Error& e) {
      ok = false;
      cert_error = e.what();
      err << "certification failed for " << d.representative << ": " << e.what() << "\n";
    }
    bool sym = is_symmetric_flag(rs, d);
    if (fmt == Format::json) {
      ordered_json row;
      row["type"] = d.type_name();
      row["kind"] = kind_name(d.kind);
      row["representative"] = d.representative;
      row["label"] = d.label;
      row["dim"] = d.expected_dim;
      row["symmetric"] = sym;
      row["certificate"] = cert_error.empty() ? ordered_json(word) : ordered_json(nullptr);
      row["notes"] = d.notes;
      rows.push_back(row);
    } else if (fmt == Format::tsv) {
      out << d.type_name() << '\t' << kind_name(d.kind) << '\t' << d.representative << '\t' << d.label << '\t'
          << d.expected_dim << '\t' << yes_no(sym) << '\t' << (cert_error.empty() ? ints_string(word) : "FAILED")
          << '\t' << join(d.notes, "; ") << '\n';
    } else {
      out << d.type_name() << "  " << kind_name(d.kind) << "  " << d.representative;
      if (!d.label.empty() && d.label != d.representative) out << "  [" << d.label << "]";
      out << "  dim " << d.expected_dim << (sym ? "  symmetric" : "") << "  w = "
          << (cert_error.empty() ? (word.empty() ? std::string("1") : ints_string(word)) : "FAILED") << '\n';
      for (const auto& note : d.notes) out << "    note: " << note << '\n';
    }
  }
  if (fmt == Format::json) {
    ordered_json doc;
    doc["type"] = rs.name();
    doc["classes"] = rows;
    doc["consistent"] = ok;
    out << doc.dump(2) << '\n';
  }
  return ok ? kOk : kInconsistent;
}

// ---------------------------------------------------------------------------
// verify

struct CellRow {
  std::vector<int> word;
  std::uint64_t count;
  int length, defect;
  bool involution;
};

std::vector<CellRow> cell_rows(const BruhatReport& r) {
  std::vector<CellRow> rows;
  for (const auto& [w, count] : r.cells)
    rows.push_back({one_based(w.reduced_word()), count, w.length(), w.rank_defect(), w.is_involution()});
  std::sort(rows.begin(), rows.end(), [](const CellRow& a, const CellRow& b) {
    int va = a.length + a.defect, vb = b.length + b.defect;
    if (va != vb) return va > vb;
    return a.word < b.word;
  });
  return rows;
}

ordered_json class_header(const ClassDescriptor& d) {
  ordered_json j;
  j["type"] = d.type_name();
  j["kind"] = kind_name(d.kind);
  j["representative"] = d.representative;
  j["label"] = d.label;
  j["dim"] = d.expected_dim;
  return j;
}

struct VerifyRow {
  ordered_json json;
  std::string tsv;
  std::string text;
  bool failed = false;
};

VerifyRow verify_class(const ClassicalGroup& G, const ClassDescriptor& d, const SamplingOptions& opts) {
  VerifyRow row;
  ordered_json j = class_header(d);
  std::string status, reason, mode = "-", cells_text = "-";
  std::uint64_t conjugates = 0;
  int max_value = -1;
  bool all_inv = true, achieved = false;
  if (d.kind == ClassKind::all) {
    status = "skipped";
    reason = "sentinel for every class of the group";
  } else {
    try {
      BruhatReport r = verify_involution_criterion(G, d, opts);
      status = r.all_involutions && r.achieved ? "pass" : "fail";
      mode = r.exhaustive ? "exhaustive" : "sampled";
      conjugates = r.conjugates;
      max_value = r.max_value;
      all_inv = r.all_involutions;
      achieved = r.achieved;
      ordered_json cells = ordered_json::array();
      std::vector<std::string> cell_words;
      for (const auto& c : cell_rows(r)) {
        ordered_json cj;
        cj["word"] = c.word;
        cj["count"] = c.count;
        cj["length"] = c.length;
        cj["rank_defect"] = c.defect;
        cj["involution"] = c.involution;
        cells.push_back(cj);
        cell_words.push_back("[" + ints_string(c.word) + "]x" + std::to_string(c.count));
      }
      cells_text = join(cell_words, " ");
      j["mode"] = mode;
      j["conjugates"] = conjugates;
      j["representative_matrix"] = G.to_external(r.representative).to_rows_signed();
      j["cells"] = cells;
      j["all_involutions"] = all_inv;
      j["max_value"] = max_value;
      j["achieved"] = achieved;
      if (r.witness_cell) {
        j["violation"] = {{"cell", one_based(r.witness_cell->reduced_word())},
                          {"conjugator", G.to_external(*r.witness_conjugator).to_rows_signed()}};
      }
    } catch (const Error& e) {
      if (!needs_larger_prime(e)) throw;
      status = "skipped";
      reason = e.what();
    }
  }
  j["status"] = status;
  if (!reason.empty()) j["reason"] = reason;
  auto flags = flagged_notes(d, status, G.prime());
  j["notes"] = d.notes;
  j["flags"] = flags;
  row.failed = status == "fail";
  row.json = j;
  std::ostringstream tsv;
  tsv << "class\t" << d.type_name() << '\t' << kind_name(d.kind) << '\t' << d.representative << '\t' << d.label << '\t'
      << G.prime() << '\t' << mode << '\t' << conjugates << '\t' << d.expected_dim << '\t' << max_value << '\t'
      << yes_no(all_inv) << '\t' << yes_no(achieved) << '\t' << status << '\t'
      << (reason.empty() ? join(flags, "; ") : reason) << '\n';
  row.tsv = tsv.str();
  std::ostringstream text;
  text << status << "  " << d.representative << " (" << kind_name(d.kind) << ", dim " << d.expected_dim << ")";
  if (!reason.empty()) {
    text << ": " << reason;
  } else {
    text << ": " << mode << ", " << conjugates << " conjugates, max value " << max_value
         << (all_inv ? ", all cells involutions" : ", NON-INVOLUTION CELL") << (achieved ? "" : ", dim NOT achieved")
         << "\n    cells: " << cells_text;
  }
  text << '\n';
  for (const auto& f : flags) text << "    flag: " << f << '\n';
  row.text = text.str();
  return row;
}

VerifyRow verify_witness(const ClassicalGroup& G, const WitnessSpec& spec, const SamplingOptions& opts) {
  VerifyRow row;
  const RootSystem& rs = G.root_system();
  std::vector<WeylElement> targets;
  ordered_json target_words = ordered_json::array();
  std::vector<std::string> target_text;
  for (const auto& cell : spec.cells) {
    targets.push_back(reflection_product(rs, cell));
    auto w = one_based(targets.back().reduced_word());
    target_words.push_back(w);
    target_text.push_back("[" + ints_string(w) + "]");
  }
  ordered_json j = class_header(spec.cls);
  j["reason"] = spec.reason;
  j["targets"] = target_words;
  std::string status, skip, stage = "-", cell = "-";
  std::uint64_t tried = 0;
  try {
    WitnessResult r = find_noninvolution_witness(G, spec.cls, targets, opts);
    status = r.found ? "pass" : "fail";
    stage = r.stage;
    tried = r.tried;
    j["found"] = r.found;
    j["stage"] = r.stage;
    j["tried"] = r.tried;
    if (r.found) {
      auto w = one_based(r.cell->reduced_word());
      cell = ints_string(w);
      j["cell"] = w;
      j["scales"] = r.scales;
      j["conjugator"] = G.to_external(*r.conjugator).to_rows_signed();
    }
  } catch (const Error& e) {
    if (!needs_larger_prime(e)) throw;
    status = "skipped";
    skip = e.what();
  }
  j["status"] = status;
  if (!skip.empty()) j["skip_reason"] = skip;
  row.failed = status == "fail";
  row.json = j;
  std::ostringstream tsv;
  tsv << "witness\t" << spec.cls.type_name() << '\t' << kind_name(spec.cls.kind) << '\t' << spec.cls.representative
      << '\t' << spec.cls.label << '\t' << G.prime() << '\t' << stage << '\t' << tried << '\t'
      << spec.cls.expected_dim << '\t' << cell << '\t' << join(target_text, " ") << '\t' << status << '\t'
      << (skip.empty() ? spec.reason : skip) << '\n';
  row.tsv = tsv.str();
  std::ostringstream text;
  text << status << "  witness " << spec.cls.representative << ": ";
  if (!skip.empty())
    text << skip;
  else if (status == "pass")
    text << "cell [" << cell << "] reached (" << stage << ", " << tried << " tried)";
  else
    text << "no target cell reached after " << tried << " tries";
  text << "\n    targets: " << join(target_text, " ") << "\n    " << spec.reason << '\n';
  row.text = text.str();
  return row;
}

int cmd_verify(const RunConfig& c, Format fmt, std::ostream& out) {
  RootSystem rs = root_system_of(c);
  if (rs.family() > Family::D) throw UsageError("verify needs a classical family (A, B, C or D)");
  std::optional<ClassicalGroup> group;
  try {
    group = ClassicalGroup::make(rs.family(), rs.rank(), c.prime);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const ClassicalGroup& G = *group;

  SamplingOptions opts;
  opts.threads = c.threads;
  opts.force_exhaustive = c.budget == "exhaustive";
  if (!opts.force_exhaustive) {
    try {
      std::size_t pos = 0;
      long long b = std::stoll(c.budget, &pos);
      if (pos != c.budget.size() || b <= 0) throw std::invalid_argument("budget");
      opts.budget = static_cast<std::uint64_t>(b);
    } catch (const std::exception&) {
      throw UsageError("--budget must be a positive integer or 'exhaustive'");
    }
  }
  bool sampling = !opts.force_exhaustive && G.order() > opts.exhaustive_threshold;
  if (sampling && !c.seed) throw UsageError("--seed is required for sampling runs (|G| = " + G.order_string() + ")");
  opts.seed = c.seed.value_or(1);

  std::vector<VerifyRow> classes, witnesses;
  for (const auto& d : spherical_classes(rs.family(), rs.rank())) classes.push_back(verify_class(G, d, opts));
  SamplingOptions wopts = opts;
  wopts.force_exhaustive = false;
  for (const auto& spec : nonspherical_witness_specs(rs.family(), rs.rank()))
    witnesses.push_back(verify_witness(G, spec, wopts));

  bool ok = true;
  for (const auto& r : classes) ok = ok && !r.failed;
  for (const auto& r : witnesses) ok = ok && !r.failed;

  if (fmt == Format::json) {
    ordered_json doc;
    doc["group"] = G.name();
    doc["prime"] = G.prime();
    doc["order"] = G.order_string();
    doc["mode"] = opts.force_exhaustive ? "exhaustive" : (sampling ? "sampled" : "exhaustive");
    doc["budget"] = opts.force_exhaustive ? ordered_json("exhaustive") : ordered_json(opts.budget);
    doc["seed"] = opts.seed;
    doc["classes"] = ordered_json::array();
    for (const auto& r : classes) doc["classes"].push_back(r.json);
    doc["witnesses"] = ordered_json::array();
    for (const auto& r : witnesses) doc["witnesses"].push_back(r.json);
    doc["consistent"] = ok;
    out << doc.dump(2) << '\n';
  } else if (fmt == Format::tsv) {
    out << "section\ttype\tkind\trepresentative\tlabel\tprime\tmode\tcount\tdim\tresult\tdetail\tstatus\tnotes\n";
    for (const auto& r : classes) out << r.tsv;
    for (const auto& r : witnesses) out << r.tsv;
  } else {
    out << G.name() << ", |G| = " << G.order_string() << ", seed " << opts.seed << '\n';
    for (const auto& r : classes) out << r.text;
    for (const auto& r : witnesses) out << r.text;
    out << (ok ? "consistent" : "INCONSISTENT") << '\n';
  }
  return ok ? kOk : kInconsistent;
}

// ---------------------------------------------------------------------------
// candidates

int cmd_candidates(const RunConfig& c, Format fmt, std::ostream& out) {
  RootSystem rs = root_system_of(c);
  int bound = c.bound >= 0 ? c.bound : spherical_bound(rs);
  auto cands = enumerate_semisimple_candidates(rs, bound);
  int dimg = rs.num_roots() + rs.rank();
  ordered_json rows = ordered_json::array();
  if (fmt == Format::tsv) out << "type\tnodes\tsubsystem\tcentralizer_dim\tclass_dim\n";
  for (const auto& s : cands) {
    std::vector<int> nodes;
    for (int k : extended_nodes(rs, s)) nodes.push_back(k == rs.rank() ? 0 : k + 1);
    int cls = class_dim_semisimple(rs, s);
    if (fmt == Format::json) {
      ordered_json r;
      r["nodes"] = nodes;
      r["subsystem"] = s.type_string();
      r["spec"] = subsystem_json(s);
      r["centralizer_dim"] = dimg - cls;
      r["class_dim"] = cls;
      rows.push_back(r);
    } else if (fmt == Format::tsv) {
      out << rs.name() << '\t' << ints_string(nodes) << '\t' << s.type_string() << '\t' << dimg - cls << '\t' << cls
          << '\n';
    } else {
      out << "{" << ints_string(nodes) << "}  " << s.type_string() << "  dim " << cls << '\n';
    }
  }
  if (fmt == Format::json) {
    ordered_json doc;
    doc["type"] = rs.name();
    doc["bound"] = bound;
    doc["node_0"] = "-beta1";
    doc["root_system"] = root_system_json(rs);
    doc["candidates"] = rows;
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// bruhat

int cmd_bruhat(const RunConfig& c, Format fmt, std::istream& in, std::ostream& out, std::ostream& err) {
  RootSystem rs = root_system_of(c);
  std::optional<ClassicalGroup> group;
  try {
    group = ClassicalGroup::make(rs.family(), rs.rank(), c.prime);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const ClassicalGroup& G = *group;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("matrix input is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("matrix")) doc = doc["matrix"];
  int m = G.degree();
  if (!doc.is_array() || static_cast<int>(doc.size()) != m)
    throw UsageError("expected a " + std::to_string(m) + "x" + std::to_string(m) + " array of integer rows");
  IntMatrix a(m, m);
  for (int r = 0; r < m; ++r) {
    if (!doc[r].is_array() || static_cast<int>(doc[r].size()) != m)
      throw UsageError("row " + std::to_string(r + 1) + " does not have " + std::to_string(m) + " entries");
    for (int col = 0; col < m; ++col) {
      if (!doc[r][col].is_number_integer()) throw UsageError("matrix entries must be integers");
      long long v = doc[r][col].get<long long>() % static_cast<long long>(G.prime());
      a(r, col) = static_cast<int>(v);
    }
  }
  FqMatrix g = G.from_external(FqMatrix::from_ints(G.prime(), a));
  std::string diag = G.membership_error(g);
  if (!diag.empty()) {
    err << "error: matrix is not in " << G.name() << ": " << diag << '\n';
    return kUsage;
  }
  WeylElement w = G.bruhat_cell(g);
  auto word = one_based(w.reduced_word());
  if (fmt == Format::json) {
    ordered_json j;
    j["group"] = G.name();
    j["word"] = word;
    j["length"] = w.length();
    j["rank_defect"] = w.rank_defect();
    j["involution"] = w.is_involution();
    out << j.dump(2) << '\n';
  } else {
    out << ints_string(word) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// dims

int cmd_dims(const RunConfig& c, Format fmt, std::ostream& out) {
  RootSystem rs = root_system_of(c);
  std::uint32_t p = c.prime ? c.prime : oracle_prime(rs);
  ChevalleyAlgebra alg(rs);
  int dimg = alg.dim();
  struct Row {
    std::string label;
    int closed, adrank, natural;
  };
  std::vector<Row> rows;
  try {
    if (rs.family() <= Family::D) {
      for (const auto& lam : valid_partitions(rs.family(), rs.rank())) {
        int closed = class_dim_unipotent_partition(rs.family(), rs.rank(), lam);
        int ad = dimg - centralizer_dim_nilpotent(alg, NilpotentSpec::from_partition(lam), p);
        int nat = dimg - centralizer_dim_natural(rs.family(), rs.rank(), lam, p);
        rows.push_back({partition_string(lam), closed, ad, nat});
      }
    } else {
      for (const auto& d : spherical_classes(rs.family(), rs.rank())) {
        if (d.kind != ClassKind::unipotent || !d.unipotent) continue;
        int ad = dimg - centralizer_dim_nilpotent(alg, *d.unipotent, p);
        rows.push_back({d.label, d.expected_dim, ad, -1});
      }
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.closed == r.adrank && (r.natural < 0 || r.natural == r.closed);
  auto agree = [](const Row& r) { return r.closed == r.adrank && (r.natural < 0 || r.natural == r.closed); };
  if (fmt == Format::json) {
    ordered_json doc;
    doc["type"] = rs.name();
    doc["prime"] = p;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["class"] = r.label;
      j["closed_form"] = r.closed;
      j["ad_rank"] = r.adrank;
      j["natural"] = r.natural < 0 ? ordered_json(nullptr) : ordered_json(r.natural);
      j["agree"] = agree(r);
      arr.push_back(j);
    }
    doc["classes"] = arr;
    doc["consistent"] = ok;
    out << doc.dump(2) << '\n';
  } else if (fmt == Format::tsv) {
    out << "type\tclass\tclosed_form\tad_rank\tnatural\tagree\n";
    for (const auto& r : rows)
      out << rs.name() << '\t' << r.label << '\t' << r.closed << '\t' << r.adrank << '\t'
          << (r.natural < 0 ? std::string("-") : std::to_string(r.natural)) << '\t' << yes_no(agree(r)) << '\n';
  } else {
    out << rs.name() << " over F_" << p << '\n';
    for (const auto& r : rows)
      out << r.label << "  closed " << r.closed << "  ad-rank " << r.adrank
          << (r.natural < 0 ? std::string() : "  natural " + std::to_string(r.natural))
          << (agree(r) ? "" : "  MISMATCH") << '\n';
  }
  return ok ? kOk : kInconsistent;
}

}  // namespace

ordered_json root_system_json(const RootSystem& rs) {
  ordered_json j;
  j["family"] = std::string(1, family_letter(rs.family()));
  j["rank"] = rs.rank();
  j["roots"] = rs.roots();
  ordered_json cartan = ordered_json::array();
  for (int i = 0; i < rs.rank(); ++i) {
    std::vector<int> row;
    for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan()(i, k));
    cartan.push_back(row);
  }
  j["cartan"] = cartan;
  j["beta1"] = rs.highest_root();
  return j;
}

ordered_json subsystem_json(const SubsystemSpec& spec) {
  ordered_json j;
  j["pi"] = spec.pi;
  j["type"] = spec.type_string();
  j["closure"] = spec.closure;
  j["torus_rank"] = spec.torus_rank;
  return j;
}

int default_threads() {
  if (const char* env = std::getenv("SPH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical conjugacy classes: tables, certificates and finite-field checks", "sph"};
  app.require_subcommand(1, 1);
  RunConfig c;
  c.threads = default_threads();

  auto common = [&](CLI::App* sub, bool needs_prime) {
    sub->add_option("--family", c.family, "A, B, C, D, E, F or G")->required();
    sub->add_option("--rank", c.rank, "rank n")->required();
    sub->add_option("--format", c.format, "json, tsv or text")->capture_default_str();
    sub->add_option("--output", c.output, "write to this file instead of stdout");
    if (needs_prime) sub->add_option("--prime", c.prime, "odd prime p (default 5)");
  };
  auto* classify = app.add_subcommand("classify", "spherical classes with certificates");
  common(classify, false);
  auto* verify = app.add_subcommand("verify", "Bruhat cells of each class over F_p");
  common(verify, true);
  verify->add_option("--seed", c.seed, "seed for sampling runs");
  verify->add_option("--budget", c.budget, "samples per class, or 'exhaustive'")->capture_default_str();
  verify->add_option("--threads", c.threads, "worker threads (default SPH_THREADS or all cores)");
  auto* candidates = app.add_subcommand("candidates", "extended-basis subsets of small class dimension");
  common(candidates, false);
  candidates->add_option("--bound", c.bound, "class dimension bound (default max l(w)+rk(1-w))");
  auto* bruhat = app.add_subcommand("bruhat", "Bruhat cell of a matrix read as JSON from stdin");
  common(bruhat, true);
  auto* dims = app.add_subcommand("dims", "unipotent class dimensions: closed form against ad-rank");
  common(dims, false);
  dims->add_option("--prime", c.prime, "prime for the rank computation (default a good prime)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Format fmt = parse_format(c.format);
    if (c.threads < 1) throw UsageError("--threads must be positive");
    if ((verify->parsed() || bruhat->parsed()) && c.prime == 0) c.prime = 5;
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.output.empty()) {
      file.open(c.output);
      if (!file) throw UsageError("cannot open " + c.output);
      sink = &file;
    }
    if (classify->parsed()) return cmd_classify(c, fmt, *sink, err);
    if (verify->parsed()) return cmd_verify(c, fmt, *sink);
    if (candidates->parsed()) return cmd_candidates(c, fmt, *sink);
    if (bruhat->parsed()) return cmd_bruhat(c, fmt, in, *sink, err);
    return cmd_dims(c, fmt, *sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInconsistent;
  }
}

}  // namespace sph::cli

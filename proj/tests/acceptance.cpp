// Acceptance suite: one PASS/FAIL line per criterion on stdout, details on
// the indented lines below it. `acceptance 3 7` runs only criteria 3 and 7.
// Exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hfact/encodings.hpp"
#include "hfact/fcore.hpp"
#include "hfact/io.hpp"
#include "hfact/varieties.hpp"
#include "oracles.hpp"
#include "variety_instances.hpp"

using namespace hfact;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string summary;
  std::vector<std::string> notes;
};

std::vector<Graph> catalog(int lo, int hi, bool directed, bool connected) {
  std::vector<Graph> out;
  for (int n = lo; n <= hi; ++n) {
    for (auto& g : graph_catalog(n, directed, connected)) out.push_back(std::move(g));
  }
  return out;
}

std::string describe(const Graph& g) {
  std::string s = "n=" + std::to_string(g.order()) + " {";
  for (const auto& [u, v] : g.edges()) s += " " + std::to_string(u) + std::to_string(v);
  return s + " }";
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------- 1

Verdict unary_equivalence() {
  const auto t0 = Clock::now();
  const auto gs = catalog(2, 4, true, true);
  std::vector<Encoded> enc;
  for (const auto& g : gs) enc.push_back(encode_unary(g, true));
  long pairs = 0, bad = 0, yes = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      ++pairs;
      const bool graph = graph_hom(gs[i], gs[j]).has_value();
      const auto r = find_homomorphism(enc[i].algebra, enc[j].algebra);
      if (r.found() != graph || (r.found() && !is_homomorphism(*r.g, enc[i].algebra, enc[j].algebra))) ++bad;
      yes += graph;
    }
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = bad == 0 && secs < 120;
  v.summary = "unary encoding: " + std::to_string(gs.size()) + " connected digraphs, " + std::to_string(pairs) +
              " pairs, " + std::to_string(bad) + " disagreements, " + fmt("%.1f s", secs);
  v.notes.push_back(std::to_string(yes) + " pairs have a graph homomorphism");
  return v;
}

// ---------------------------------------------------------------- 2

Verdict magma_equivalence() {
  const auto gs = catalog(2, 4, false, false);
  std::vector<Encoded> enc;
  for (const auto& g : gs) enc.push_back(encode_magma(g));
  long pairs = 0, bad = 0, bad_injective = 0;
  std::string example;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      ++pairs;
      const bool algebra = find_homomorphism(enc[i].algebra, enc[j].algebra).found();
      const bool strong = strong_graph_hom(gs[i], gs[j]).has_value();
      if (algebra != strong) {
        ++bad;
        if (example.empty()) {
          example = describe(gs[i]) + " -> " + describe(gs[j]) +
                    (strong ? " (strong hom exists, no algebra hom)" : " (algebra hom, no strong hom)");
        }
      }
      if (algebra != strong_graph_hom(gs[i], gs[j], true).has_value()) ++bad_injective;
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.summary = "magma encoding vs strong homomorphisms: " + std::to_string(pairs) + " pairs, " + std::to_string(bad) +
              " disagreements";
  if (!example.empty()) v.notes.push_back("first disagreement: " + example);
  v.notes.push_back("injective strong homomorphisms instead: " + std::to_string(bad_injective) + " disagreements");
  return v;
}

// ---------------------------------------------------------------- 3

Verdict right_factor_equivalence() {
  const auto gs = catalog(1, 4, false, false);
  long pairs = 0, bad = 0, decoded = 0;
  for (const auto& g : gs) {
    const auto eg = encode_semigroup(g);
    for (const auto& h : gs) {
      ++pairs;
      const auto inst = make_rf_instance(g, h);
      const auto r = find_right_factor(inst);
      const bool graph = graph_hom(g, h).has_value();
      if (r.found() != graph) {
        ++bad;
        continue;
      }
      if (!r.found()) continue;
      bool ok = verify_witness(inst, r.g, std::nullopt);
      try {
        ok = ok && is_graph_hom(decode_hom(*r.g, eg, encode_semigroup(h)), g, h);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) ++decoded;
      else ++bad;
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.summary = "right-factor reduction: " + std::to_string(pairs) + " pairs, " + std::to_string(bad) +
              " disagreements or undecodable witnesses";
  v.notes.push_back(std::to_string(decoded) + " yes-witnesses decoded to verified graph homomorphisms");
  return v;
}

// ---------------------------------------------------------------- 4

Verdict left_factor_equivalence() {
  long pairs = 0, bad = 0;
  const auto us = catalog(2, 4, false, true);
  for (const auto& g : us) {
    for (const auto& h : us) {
      ++pairs;
      const auto inst = make_lf_instance(g, h);
      const auto r = find_left_factor(inst);
      if (r.found() != graph_hom(h, g).has_value() || (r.found() && !verify_witness(inst, std::nullopt, r.h))) ++bad;
    }
  }
  const long semigroup_pairs = pairs;
  const auto ds = catalog(2, 4, true, true);
  for (const auto& h : ds) {
    for (const auto& j : ds) {
      ++pairs;
      const auto inst = make_unary_lf_instance(h, j);
      const auto r = find_left_factor(inst);
      if (r.found() != graph_hom(h, j).has_value() || (r.found() && !verify_witness(inst, std::nullopt, r.h))) ++bad;
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.summary = "left-factor reductions: " + std::to_string(semigroup_pairs) + " semigroup pairs and " +
              std::to_string(pairs - semigroup_pairs) + " unary pairs, " + std::to_string(bad) + " disagreements";
  return v;
}

// ---------------------------------------------------------------- 5

Verdict retraction_reading() {
  struct Reading {
    std::string name;
    std::function<bool(const Graph&, const Graph&)> holds;
    long mismatches = 0;
  };
  std::vector<Reading> readings = {
      {"non-induced embedding", [](const Graph& g, const Graph& h) { return subgraph_embedding(g, h, false).has_value(); }},
      {"induced embedding", [](const Graph& g, const Graph& h) { return subgraph_embedding(g, h, true).has_value(); }},
      {"retract", [](const Graph& g, const Graph& h) { return graph_retract(g, h).has_value(); }},
  };
  long pairs = 0, yes = 0;
  auto run_family = [&](const std::vector<Graph>& gs, const std::function<Encoded(const Graph&)>& encode) {
    std::vector<Encoded> enc;
    for (const auto& g : gs) enc.push_back(encode(g));
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        ++pairs;
        const auto r = decide_retraction(enc[i].algebra, enc[j].algebra);
        yes += r.found();
        for (auto& reading : readings) {
          if (reading.holds(gs[i], gs[j]) != r.found()) ++reading.mismatches;
        }
      }
    }
  };
  run_family(catalog(2, 4, true, true), [](const Graph& g) { return encode_unary(g, true); });
  run_family(catalog(2, 4, false, false), [](const Graph& g) { return encode_semigroup(g); });

  Verdict v;
  std::vector<std::string> uniform;
  for (const auto& r : readings) {
    v.notes.push_back(r.name + ": " + std::to_string(r.mismatches) + " mismatches");
    if (r.mismatches == 0) uniform.push_back(r.name);
  }
  v.pass = uniform.size() == 1;
  v.summary = "retraction reductions: " + std::to_string(pairs) + " unary and semigroup pairs (" + std::to_string(yes) +
              " retracts), uniform reading: " + (uniform.size() == 1 ? uniform.front() : std::to_string(uniform.size()) + " readings");
  return v;
}

// ---------------------------------------------------------------- 6

Verdict structural_checks() {
  long semigroups = 0, magmas = 0, bad = 0;
  for (const auto& g : catalog(1, 6, false, false)) {
    const auto s = check_properties(encode_semigroup(g).algebra, "mul");
    ++semigroups;
    if (!s.associative || !s.commutative) ++bad;
    if (g.order() >= 2) {
      ++magmas;
      if (check_properties(encode_magma(g).algebra, "mul").associative) ++bad;
    }
  }
  const auto& z = make_gadgets().z.algebra;
  long triples = 0, z_bad = 0;
  const auto mul = *z.find_op("mul");
  for (int a = 0; a < z.size(); ++a) {
    for (int b = 0; b < z.size(); ++b) {
      for (int c = 0; c < z.size(); ++c) {
        ++triples;
        if (z.apply(mul, z.apply(mul, a, b), c) != z.apply(mul, a, z.apply(mul, b, c))) ++z_bad;
      }
    }
  }
  Verdict v;
  v.pass = bad == 0 && z_bad == 0 && triples == 125;
  v.summary = "structure: " + std::to_string(semigroups) + " semigroup encodings associative and commutative, " +
              std::to_string(magmas) + " magma encodings non-associative, Z associative on " +
              std::to_string(triples) + " triples; " + std::to_string(bad + z_bad) + " failures";
  return v;
}

// ---------------------------------------------------------------- 7

Verdict fcore_families() {
  Verdict v;
  v.pass = true;
  auto check = [&](const std::string& name, const FiniteAlgebra& x, const Mapping& f) {
    const auto t0 = Clock::now();
    bool core = false;
    std::string err;
    try {
      core = is_fcore(x, f);
    } catch (const Error& e) {
      err = e.what();
    }
    const double secs = seconds_since(t0);
    const bool ok = core && secs < 300;
    v.pass = v.pass && ok;
    v.notes.push_back(name + " (|X| = " + std::to_string(x.size()) + "): " + (core ? "f-core" : "not an f-core") +
                      (err.empty() ? "" : " [" + err + "]") + fmt(", %.2f s", secs));
  };
  for (int n : {4, 5}) {
    const auto inst = make_fcore_instance(Graph::complete(n));
    check("X_G for K" + std::to_string(n), inst.x.algebra, inst.f);
  }
  for (int n : {1, 2}) {
    const auto fam = make_semilattice_X(n);
    check("semilattice X_" + std::to_string(n), fam.x.algebra, fam.f);
  }
  v.summary = "f-core families: K4, K5 semigroup instances and semilattices X_1, X_2";
  return v;
}

// ---------------------------------------------------------------- 8

Verdict fixed_z_pipeline() {
  long agree = 0, total = 0;
  for (const auto& g : catalog(1, 4, false, false)) {
    for (const auto& h : catalog(1, 4, false, false)) {
      ++total;
      const auto inst = make_rf_instance(g, h);
      const auto a = fixed_z_right_factor(inst, FCoreMethod::brute);
      const auto b = find_right_factor(inst);
      if (a.found() == b.found() && (!a.found() || verify_witness(inst, a.g, std::nullopt))) ++agree;
    }
  }
  const long reduction_rows = total;
  std::mt19937 rng(20240805);
  std::map<std::string, int> per_family;
  long yes = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& family = oracle::variety_families()[static_cast<std::size_t>(i) % 4];
    const auto base = oracle::random_variety_instance(rng, family, 16);
    FiniteAlgebra y;
    for (;;) {
      y = family == "vspace" ? vector_space(vector_space_prime(base.x), std::uniform_int_distribution<int>(0, 2)(rng))
                             : oracle::random_member(rng, family, 16, base.group);
      if (oracle::hom_exists(y, base.z)) break;
    }
    FactorizationInstance inst;
    inst.kind = ProblemKind::right_factor;
    inst.x = base.x;
    inst.y = y;
    inst.z = base.z;
    inst.f = base.f;
    inst.h = oracle::random_hom_of(rng, y, base.z);
    ++total;
    ++per_family[family];
    const auto a = fixed_z_right_factor(inst, base.method, base.group ? &*base.group : nullptr);
    const auto b = find_right_factor(inst);
    yes += b.found();
    if (a.found() == b.found() && (!a.found() || verify_witness(inst, a.g, std::nullopt))) ++agree;
  }
  Verdict v;
  v.pass = agree == total;
  v.summary = "fixed-Z right factor via f-cores: " + std::to_string(agree) + "/" + std::to_string(total) +
              " agree (" + std::to_string(reduction_rows) + " reduction instances, " +
              std::to_string(total - reduction_rows) + " variety instances)";
  std::string fam;
  for (const auto& [k, n] : per_family) fam += " " + k + "=" + std::to_string(n);
  v.notes.push_back("variety instances:" + fam + ", " + std::to_string(yes) + " solvable");
  return v;
}

// ---------------------------------------------------------------- 9

Verdict specialized_fcores() {
  std::mt19937 rng(777);
  std::map<std::string, std::pair<int, int>> tally;  // family -> (agree, total)
  long inapplicable = 0;
  for (const auto& family : oracle::variety_families()) {
    for (int i = 0; i < 50; ++i) {
      const auto inst = oracle::random_variety_instance(rng, family, 16);
      const auto r = compute_fcore(inst.method, inst.x, inst.f, inst.group ? &*inst.group : nullptr);
      const auto brute = brute_fcore(inst.x, inst.f);
      bool ok = r.image.size() == brute.image.size() && is_retraction_respecting(r.retraction, inst.x, inst.f);
      if (!r.applicable) {
        ++inapplicable;
        ok = ok && family == "abelian";
      }
      auto& t = tally[family];
      t.first += ok;
      ++t.second;
    }
  }
  // The non-split extension probe.
  const auto z4 = cyclic_product({4});
  const Mapping mod2(2, {0, 1, 0, 1});
  const auto probe = abelian_fcore(z4, mod2);
  const auto probe_brute = brute_fcore(z4, mod2);

  Verdict v;
  v.pass = probe.image.size() == probe_brute.image.size();
  std::string counts;
  for (const auto& [family, t] : tally) {
    v.pass = v.pass && t.first == t.second;
    counts += " " + family + " " + std::to_string(t.first) + "/" + std::to_string(t.second);
  }
  v.summary = "specialized f-cores match brute force:" + counts;
  v.notes.push_back(std::to_string(inapplicable) + " abelian instances did not split; the brute fallback was used");
  v.notes.push_back("probe Z4 -> Z2: " + std::string(probe.applicable ? "applicable" : "inapplicable") +
                    ", core size " + std::to_string(probe.image.size()) + ", brute core size " +
                    std::to_string(probe_brute.image.size()));
  return v;
}

// ---------------------------------------------------------------- 10

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

Verdict witness_integrity() {
  const fs::path root = fs::temp_directory_path() / ("hfact_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  long witnesses = 0, verified = 0, runs = 0, identical = 0, errors = 0;
  auto graph_file = [&](const Graph& g, const std::string& name) {
    const fs::path p = root / name;
    write_text_file(p, write_graph(g));
    return p.string();
  };
  struct Job {
    std::string type;
    std::vector<Graph> graphs;
  };
  const auto undirected = catalog(2, 3, false, false);
  const auto connected = catalog(2, 3, false, true);
  const auto digraphs = catalog(2, 3, true, true);
  const std::vector<Job> jobs = {
      {"rf", catalog(1, 3, false, false)}, {"lf", connected},
      {"unary-lf", digraphs},              {"hom-unary", digraphs},
      {"hom-magma", undirected},           {"hom-semigroup", undirected},
      {"retraction-unary", digraphs},      {"retraction-semigroup", undirected},
      {"isomorphism-semigroup", undirected}};
  int id = 0;
  for (const auto& job : jobs) {
    for (std::size_t i = 0; i < job.graphs.size(); ++i) {
      for (std::size_t j = 0; j < job.graphs.size(); ++j) {
        const std::string dir = (root / ("i" + std::to_string(id++))).string();
        const auto g = graph_file(job.graphs[i], "g" + std::to_string(id) + ".txt");
        const auto h = graph_file(job.graphs[j], "h" + std::to_string(id) + ".txt");
        if (cli_run({"instance", "--type", job.type, "--g", g, "--h", h, "--dir", dir}).code != 0) {
          ++errors;
          continue;
        }
        const std::string manifest = dir + "/instance.txt";
        const auto first = cli_run({"decide", "--instance", manifest, "--witness", dir + "/a"});
        const auto second = cli_run({"decide", "--instance", manifest, "--witness", dir + "/b"});
        ++runs;
        if (first.code == cli::kError || first.code == cli::kUnknown) ++errors;
        // reports differ only in the witness prefix
        std::string a = first.out, b = second.out;
        for (auto* s : {&a, &b}) {
          for (const char* pre : {"/a.", "/b."}) {
            for (std::size_t k; (k = s->find(pre)) != std::string::npos;) s->replace(k, 3, "/w.");
          }
        }
        bool same = first.code == second.code && a == b;
        if (first.code != cli::kYes) {
          if (same) ++identical;
          continue;
        }
        std::vector<std::string> verify = {"verify", "--instance", manifest};
        for (const char* which : {"g", "h"}) {
          const std::string pa = dir + "/a." + which + ".map", pb = dir + "/b." + which + ".map";
          if (!fs::exists(pa)) continue;
          same = same && fs::exists(pb) && read_text_file(pa) == read_text_file(pb);
          verify.insert(verify.end(), {std::string("--") + which, pa});
        }
        ++witnesses;
        if (cli_run(verify).code == cli::kYes) ++verified;
        if (same) ++identical;
      }
    }
  }
  // fcore retractions are deterministic as well
  const auto fam = make_semilattice_X(2);
  write_text_file(root / "s.alg", write_algebra(fam.x.algebra));
  write_text_file(root / "s.map", write_mapping(fam.f));
  const auto f1 = cli_run({"fcore", "--algebra", (root / "s.alg").string(), "--f", (root / "s.map").string(),
                           "--retraction", (root / "r1.map").string()});
  const auto f2 = cli_run({"fcore", "--algebra", (root / "s.alg").string(), "--f", (root / "s.map").string(),
                           "--retraction", (root / "r2.map").string()});
  ++runs;
  if (f1.code == 0 && f1.out == f2.out && read_text_file(root / "r1.map") == read_text_file(root / "r2.map")) {
    ++identical;
  }
  fs::remove_all(root);

  Verdict v;
  v.pass = errors == 0 && witnesses == verified && identical == runs && witnesses > 0;
  v.summary = "witness integrity: " + std::to_string(verified) + "/" + std::to_string(witnesses) +
              " witnesses verified, " + std::to_string(identical) + "/" + std::to_string(runs) +
              " reruns byte-identical";
  if (errors) v.notes.push_back(std::to_string(errors) + " CLI errors");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"unary encoding equivalence", unary_equivalence},
      {"magma encoding equivalence", magma_equivalence},
      {"right-factor reduction", right_factor_equivalence},
      {"left-factor reductions", left_factor_equivalence},
      {"retraction reading", retraction_reading},
      {"structural checks", structural_checks},
      {"f-core families", fcore_families},
      {"fixed-Z pipeline", fixed_z_pipeline},
      {"specialized f-cores", specialized_fcores},
      {"witness integrity", witness_integrity},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(n)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.summary = criteria[i].first + ": exception: " + e.what();
    }
    failed += !v.pass;
    std::cout << "criterion " << n << ' ' << (v.pass ? "PASS" : "FAIL") << "  " << v.summary << '\n';
    for (const auto& note : v.notes) std::cout << "    " << note << '\n';
    std::cout.flush();
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failed ? 1 : 0;
}

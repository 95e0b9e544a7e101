#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "hfact/encodings.hpp"
#include "hfact/fcore.hpp"
#include "hfact/graph.hpp"
#include "hfact/io.hpp"
#include "hfact/solver.hpp"
#include "hfact/varieties.hpp"

namespace hfact::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// "name:k" -> k, or throws.
int suffix_number(const std::string& spec, const std::string& prefix) {
  const std::string rest = spec.substr(prefix.size());
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(rest, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != rest.size()) throw Error("bad number in '" + spec + "'");
  return k;
}

void write_encoded(const FiniteAlgebra& a, const std::optional<Legend>& legend, const std::string& out,
                   const std::string& legend_path) {
  const std::string text = write_algebra(a);
  parse_algebra(text);  // the written file must read back
  write_text_file(out, text);
  if (!legend_path.empty()) {
    if (!legend) throw Error("this encoding has no legend");
    write_text_file(legend_path, write_legend(*legend));
  }
}

// ---------------------------------------------------------------- encode

struct EncodeOptions {
  std::string encoding, in, out, legend, map_out, target_out;
};

int cmd_encode(const EncodeOptions& o, std::ostream& out) {
  const std::string& e = o.encoding;
  std::optional<FiniteAlgebra> alg;
  std::optional<Legend> legend;
  auto need_input = [&]() -> const std::string& {
    if (o.in.empty()) throw Error("--in is required for encoding " + e);
    return o.in;
  };
  auto take = [&](Encoded enc) {
    alg = std::move(enc.algebra);
    legend = std::move(enc.legend);
  };
  if (e == "unary") {
    take(encode_unary(read_graph(need_input())));
  } else if (e == "magma") {
    take(encode_magma(read_graph(need_input())));
  } else if (e == "semigroup") {
    take(encode_semigroup(read_graph(need_input())));
  } else if (e.rfind("nary:", 0) == 0) {
    alg = lift_nary(read_algebra(need_input()), suffix_number(e, "nary:"));
  } else if (e.rfind("semilattice:", 0) == 0) {
    auto fam = make_semilattice_X(suffix_number(e, "semilattice:"));
    if (!o.map_out.empty()) write_text_file(o.map_out, write_mapping(fam.f));
    if (!o.target_out.empty()) write_text_file(o.target_out, write_algebra(fam.z));
    take(std::move(fam.x));
  } else if (e.rfind("gadget:", 0) == 0) {
    const std::string name = e.substr(7);
    auto g = make_gadgets();
    if (name == "z") take(g.z);
    else if (name == "zprime") take(g.z_prime);
    else if (name == "semilattice") take(g.semilattice_z);
    else if (name == "x2") take(g.x2);
    else throw Error("unknown gadget '" + name + "' (z, zprime, semilattice, x2)");
  } else {
    throw Error("unknown encoding '" + e + "'");
  }
  if (o.map_out.size() && e.rfind("semilattice:", 0) != 0) throw Error("--map is only produced by semilattice:n");
  write_encoded(*alg, legend, o.out, o.legend);
  out << "encoding " << e << '\n' << "size " << alg->size() << '\n';
  return kYes;
}

// ---------------------------------------------------------------- instance

struct InstanceOptions {
  std::string type, g, h, dir;
};

int cmd_instance(const InstanceOptions& o, std::ostream& out) {
  const Graph g = read_graph(o.g);
  const Graph h = read_graph(o.h);
  const auto gadgets = make_gadgets();
  FactorizationInstance inst;
  std::map<std::string, Legend> legends;
  auto pair = [&](const Encoded& a, const Encoded& b, ProblemKind kind) {
    inst.kind = kind;
    inst.x = a.algebra;
    inst.y = b.algebra;
    legends["X"] = a.legend;
    legends["Y"] = b.legend;
  };
  const std::string& t = o.type;
  if (t == "rf") {
    inst = make_rf_instance(g, h);
    legends = {{"X", encode_semigroup(g).legend}, {"Y", encode_semigroup(h).legend}, {"Z", gadgets.z.legend}};
  } else if (t == "lf") {
    inst = make_lf_instance(g, h);
    legends = {{"X", gadgets.z_prime.legend},
               {"Y", encode_semigroup(h.with_isolated_vertex()).legend},
               {"Z", encode_semigroup(g.with_isolated_vertex()).legend}};
  } else if (t == "unary-lf") {
    inst = make_unary_lf_instance(g, h);
    legends = {{"X", gadgets.x2.legend},
               {"Y", encode_unary(g.with_isolated_vertex()).legend},
               {"Z", encode_unary(h.with_isolated_vertex()).legend}};
  } else if (t == "hom-unary") {
    pair(encode_unary(g), encode_unary(h), ProblemKind::hom);
  } else if (t == "hom-magma") {
    pair(encode_magma(g), encode_magma(h), ProblemKind::hom);
  } else if (t == "hom-semigroup") {
    pair(encode_semigroup(g), encode_semigroup(h), ProblemKind::hom);
  } else if (t == "retraction-unary") {
    pair(encode_unary(g), encode_unary(h), ProblemKind::retraction);
  } else if (t == "retraction-semigroup") {
    pair(encode_semigroup(g), encode_semigroup(h), ProblemKind::retraction);
  } else if (t == "isomorphism-semigroup") {
    pair(encode_semigroup(g), encode_semigroup(h), ProblemKind::isomorphism);
  } else {
    throw Error("unknown instance type '" + t + "'");
  }

  fs::create_directories(o.dir);
  const fs::path dir(o.dir);
  Manifest m;
  m.kind = inst.kind;
  auto put = [&](const std::string& key, const std::string& file, const std::string& text) {
    write_text_file(dir / file, text);
    m.paths[key] = file;
  };
  put("X", "X.alg", write_algebra(inst.x));
  put("Y", "Y.alg", write_algebra(inst.y));
  if (inst.z) put("Z", "Z.alg", write_algebra(*inst.z));
  if (inst.f) put("f", "f.map", write_mapping(*inst.f));
  if (inst.g) put("g", "g.map", write_mapping(*inst.g));
  if (inst.h) put("h", "h.map", write_mapping(*inst.h));
  for (const auto& [key, legend] : legends) put("L" + key, key + ".legend", write_legend(legend));
  write_text_file(dir / "instance.txt", write_manifest(m));
  out << "instance " << (dir / "instance.txt").string() << '\n';
  return kYes;
}

// ---------------------------------------------------------------- decide

struct DecideOptions {
  std::string instance, witness, order = "mrv", strategy = "combined";
  std::optional<std::uint64_t> node_limit;
};

// Decodes a witness to a graph map when both sides carry graph legends.
void report_decoded(std::ostream& out, const std::string& name, const Mapping& psi, const FiniteAlgebra& a,
                    const FiniteAlgebra& b, const LoadedInstance& li, const char* ka, const char* kb) {
  const auto la = li.legends.find(ka), lb = li.legends.find(kb);
  if (la == li.legends.end() || lb == li.legends.end()) return;
  const LegendKind k = la->second.kind;
  if (k != lb->second.kind || k == LegendKind::gadget || k == LegendKind::semilattice) return;
  try {
    const VertexMap phi = decode_hom(psi, Encoded{a, la->second}, Encoded{b, lb->second});
    out << "decoded " << name << ' ' << join(phi) << '\n';
  } catch (const Error& e) {
    out << "decoded " << name << " none (" << e.what() << ")\n";
  }
}

int cmd_decide(const DecideOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const LoadedInstance li = load_instance(o.instance);
  const auto& inst = li.instance;
  SearchConfig cfg;
  cfg.order = o.order == "lex" ? VariableOrder::lexicographic : VariableOrder::mrv;
  cfg.strategy = o.strategy == "enumerate" ? FactorStrategy::enumerate_left : FactorStrategy::combined;
  cfg.node_limit = o.node_limit;
  const SolveResult res = solve(inst, cfg);

  out << "kind " << to_string(inst.kind) << '\n';
  out << "answer " << to_string(res.outcome) << '\n';
  out << "nodes " << res.nodes << '\n';
  if (res.found()) {
    if (!verify_witness(inst, res.g, res.h)) throw Error("internal: witness failed verification");
    if (!o.witness.empty()) {
      if (res.g) {
        write_text_file(o.witness + ".g.map", write_mapping(*res.g));
        out << "witness g " << o.witness << ".g.map\n";
      }
      if (res.h) {
        write_text_file(o.witness + ".h.map", write_mapping(*res.h));
        out << "witness h " << o.witness << ".h.map\n";
      }
    }
    switch (inst.kind) {
      case ProblemKind::hom:
      case ProblemKind::right_factor:
      case ProblemKind::isomorphism: report_decoded(out, "g", *res.g, inst.x, inst.y, li, "X", "Y"); break;
      case ProblemKind::left_factor: report_decoded(out, "h", *res.h, inst.y, *inst.z, li, "Y", "Z"); break;
      case ProblemKind::retraction:
        report_decoded(out, "g", *res.g, inst.x, inst.y, li, "X", "Y");
        report_decoded(out, "h", *res.h, inst.y, inst.x, li, "Y", "X");
        break;
      case ProblemKind::full_factor: break;
    }
  }
  err << "time_ms " << ms_since(t0) << '\n';
  switch (res.outcome) {
    case Outcome::yes: return kYes;
    case Outcome::no: return kNo;
    case Outcome::unknown: return kUnknown;
  }
  return kError;
}

// ---------------------------------------------------------------- fcore

struct FCoreOptions {
  std::string algebra, f, method = "brute", group, target, retraction_out, core_out, report_out;
  bool verify = false;
  std::optional<std::uint64_t> node_limit;
};

int cmd_fcore(const FCoreOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const FiniteAlgebra x = read_algebra(o.algebra);
  const Mapping f = read_mapping(o.f);
  if (f.dom_size() != x.size()) throw Error("f has " + std::to_string(f.dom_size()) + " entries, X has size " +
                                            std::to_string(x.size()));
  if (!o.target.empty()) {
    const FiniteAlgebra z = read_algebra(o.target);
    if (!is_homomorphism(f, x, z)) throw Error("f is not a homomorphism into the target");
  }
  const auto method = parse_fcore_method(o.method);
  if (!method) throw Error("unknown method '" + o.method + "'");
  std::optional<FiniteAlgebra> group;
  if (!o.group.empty()) group = read_algebra(o.group);
  if (*method == FCoreMethod::gset && !group) throw Error("--group is required for method gset");
  SearchConfig cfg;
  cfg.node_limit = o.node_limit;

  const FCoreResult res = compute_fcore(*method, x, f, group ? &*group : nullptr, cfg);
  std::ostringstream rep;
  rep << "method " << to_string(*method) << '\n';
  rep << "applicable " << (res.applicable ? "yes" : "no") << '\n';
  rep << "size " << x.size() << '\n';
  rep << "core_size " << res.image.size() << '\n';
  rep << "certified " << (res.certified_minimal ? "yes" : "no") << '\n';
  rep << "image " << join(res.image) << '\n';
  rep << "detail " << res.detail << '\n';
  int code = kYes;
  if (o.verify) {
    const FCoreResult oracle = brute_fcore(x, f, cfg);
    const bool agree = oracle.image.size() == res.image.size();
    rep << "oracle brute core_size " << oracle.image.size() << " certified "
        << (oracle.certified_minimal ? "yes" : "no") << " agree " << (agree ? "yes" : "no") << '\n';
    if (!agree) code = kNo;
  }
  if (!o.retraction_out.empty()) write_text_file(o.retraction_out, write_mapping(res.retraction));
  if (!o.core_out.empty()) write_text_file(o.core_out, write_algebra(res.core_algebra));
  if (!o.report_out.empty()) write_text_file(o.report_out, rep.str());
  out << rep.str();
  err << "time_ms " << ms_since(t0) << '\n';
  return code;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string instance, g, h;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const LoadedInstance li = load_instance(o.instance);
  const auto report = validate_instance(li.instance);
  if (!report.empty()) throw Error("invalid instance: " + report.front());
  std::optional<Mapping> g, h;
  if (!o.g.empty()) g = read_mapping(o.g);
  if (!o.h.empty()) h = read_mapping(o.h);
  const bool ok = verify_witness(li.instance, g, h);
  out << "valid " << (ok ? "yes" : "no") << '\n';
  return ok ? kYes : kNo;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string suite, out;
  int max_size = 0;
  int jobs = 1;
  std::optional<std::uint64_t> node_limit;
};

struct BenchRow {
  std::string id, kind;
  int x = 0, y = 0, z = 0;
  std::string answer, oracle;
  std::uint64_t nodes = 0;
  double ms = 0;
};

using BenchTask = std::function<BenchRow()>;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string answer_of(const SolveResult& r) { return to_string(r.outcome); }

std::vector<Graph> catalog_range(int lo, int hi, bool directed, bool connected) {
  std::vector<Graph> out;
  for (int n = lo; n <= hi; ++n) {
    for (auto& g : graph_catalog(n, directed, connected)) out.push_back(std::move(g));
  }
  return out;
}

BenchRow sized(const FactorizationInstance& inst, const SolveResult& r, bool oracle) {
  BenchRow row;
  row.x = inst.x.size();
  row.y = inst.y.size();
  row.z = inst.z ? inst.z->size() : 0;
  row.answer = answer_of(r);
  row.oracle = yes_no(oracle);
  row.nodes = r.nodes;
  return row;
}

FactorizationInstance hom_instance(FiniteAlgebra x, FiniteAlgebra y) {
  FactorizationInstance inst;
  inst.kind = ProblemKind::hom;
  inst.x = std::move(x);
  inst.y = std::move(y);
  return inst;
}

std::vector<BenchTask> reduction_tasks(int k, const SearchConfig& cfg) {
  std::vector<BenchTask> tasks;
  auto pairs = [&](const std::string& kind, const std::vector<Graph>& gs,
                   std::function<BenchRow(const Graph&, const Graph&)> fn) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = 0; j < gs.size(); ++j) {
        tasks.push_back([=, g = gs[i], h = gs[j]] {
          BenchRow row = fn(g, h);
          row.id = kind + "-" + std::to_string(i) + "-" + std::to_string(j);
          row.kind = kind;
          return row;
        });
      }
    }
  };

  pairs("unary-hom", catalog_range(2, std::min(k, 3), true, true), [cfg](const Graph& g, const Graph& h) {
    const auto inst = hom_instance(encode_unary(g).algebra, encode_unary(h).algebra);
    return sized(inst, find_homomorphism(inst.x, inst.y, cfg), graph_hom(g, h).has_value());
  });
  // The magma encoding tracks injective strong homomorphisms.
  pairs("magma-hom", catalog_range(2, k, false, false), [cfg](const Graph& g, const Graph& h) {
    const auto inst = hom_instance(encode_magma(g).algebra, encode_magma(h).algebra);
    return sized(inst, find_homomorphism(inst.x, inst.y, cfg), strong_graph_hom(g, h, true).has_value());
  });
  pairs("right-factor", catalog_range(1, k, false, false), [cfg](const Graph& g, const Graph& h) {
    const auto inst = make_rf_instance(g, h);
    return sized(inst, find_right_factor(inst, cfg), graph_hom(g, h).has_value());
  });
  pairs("left-factor", catalog_range(2, k, false, true), [cfg](const Graph& g, const Graph& h) {
    const auto inst = make_lf_instance(g, h);
    return sized(inst, find_left_factor(inst, cfg), graph_hom(h, g).has_value());
  });
  pairs("retraction", catalog_range(2, k, false, false), [cfg](const Graph& g, const Graph& h) {
    const auto inst = make_retraction_instance(encode_semigroup(g).algebra, encode_semigroup(h).algebra);
    return sized(inst, decide_retraction(inst.x, inst.y, cfg), graph_retract(g, h).has_value());
  });
  return tasks;
}

// Homomorphisms X -> Z spread over the full enumeration, at most `take`.
std::vector<Mapping> sample_homs(const FiniteAlgebra& x, const FiniteAlgebra& z, std::size_t take) {
  const auto all = enumerate_homomorphisms(x, z, 4096);
  if (all.size() <= take) return all;
  std::vector<Mapping> out;
  for (std::size_t i = 0; i < take; ++i) out.push_back(all[i * all.size() / take]);
  return out;
}

std::vector<BenchTask> fcore_tasks(int k, const SearchConfig& cfg) {
  struct Family {
    std::string kind;
    FCoreMethod method;
    std::vector<FiniteAlgebra> xs, zs;
    std::optional<FiniteAlgebra> group;
  };
  std::vector<Family> families;
  {
    Family fam{"abelian", FCoreMethod::abelian, {}, {}, std::nullopt};
    for (const auto& orders : std::vector<std::vector<int>>{
             {2}, {3}, {4}, {2, 2}, {5}, {6}, {8}, {2, 4}, {2, 2, 2}, {9}, {3, 3}, {12}, {2, 6}, {16}, {4, 4}, {2, 8}}) {
      fam.xs.push_back(cyclic_product(orders));
    }
    for (const auto& orders : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) fam.zs.push_back(cyclic_product(orders));
    families.push_back(std::move(fam));
  }
  {
    Family fam{"vspace", FCoreMethod::vspace, {}, {}, std::nullopt};
    for (const auto& [p, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}}) {
      fam.xs.push_back(vector_space(p, d));
    }
    families.push_back(std::move(fam));
  }
  {
    Family fam{"boolean", FCoreMethod::boolean, {}, {}, std::nullopt};
    for (int a = 1; a <= 4; ++a) fam.xs.push_back(boolean_algebra(a));
    for (int a = 0; a <= 2; ++a) fam.zs.push_back(boolean_algebra(a));
    families.push_back(std::move(fam));
  }
  for (int m : {2, 3, 4}) {
    Family fam{"gset", FCoreMethod::gset, {}, {}, cyclic_group(m)};
    std::vector<std::vector<int>> shapes = {{m}, {1, m}, {m, m}, {1, 1, m}, {m, m, 1}};
    if (m == 4) shapes.push_back({2, 4, 2});
    for (const auto& s : shapes) fam.xs.push_back(cyclic_gset(m, s));
    fam.zs = {cyclic_gset(m, {1}), cyclic_gset(m, {m}), cyclic_gset(m, {1, m})};
    families.push_back(std::move(fam));
  }

  std::vector<BenchTask> tasks;
  for (const auto& fam : families) {
    for (std::size_t i = 0; i < fam.xs.size(); ++i) {
      const FiniteAlgebra& x = fam.xs[i];
      if (x.size() > k) continue;
      // Vector spaces map into their own coordinate subspaces.
      std::vector<FiniteAlgebra> zs = fam.zs;
      if (fam.method == FCoreMethod::vspace) {
        const int p = vector_space_prime(x);
        for (int e = 0; vector_space(p, e).size() <= x.size(); ++e) zs.push_back(vector_space(p, e));
      }
      for (std::size_t j = 0; j < zs.size(); ++j) {
        if (!(zs[j].signature() == x.signature())) continue;
        const auto homs = sample_homs(x, zs[j], 4);
        for (std::size_t t = 0; t < homs.size(); ++t) {
          const std::string id = fam.kind + "-" + std::to_string(x.size()) + "-" + std::to_string(i) + "-" +
                                 std::to_string(j) + "-" + std::to_string(t);
          tasks.push_back([=, &cfg, group = fam.group, method = fam.method, kind = fam.kind, f = homs[t],
                           z = zs[j]] {
            const FCoreResult res = compute_fcore(method, x, f, group ? &*group : nullptr, cfg);
            const FCoreResult oracle = brute_fcore(x, f, cfg);
            BenchRow row;
            row.id = id;
            row.kind = res.applicable ? kind : kind + "-inapplicable";
            row.x = x.size();
            row.y = static_cast<int>(res.image.size());
            row.z = z.size();
            row.answer = std::to_string(res.image.size());
            row.oracle = std::to_string(oracle.image.size());
            return row;
          });
        }
      }
    }
  }
  return tasks;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  int budget = 0;
  if (o.suite == "reductions") budget = 4;
  else if (o.suite == "fcores") budget = 16;
  else throw Error("unknown suite '" + o.suite + "' (reductions, fcores)");
  if (o.max_size < 1 || o.max_size > budget) {
    throw Error("--max-size must be in [1, " + std::to_string(budget) + "] for suite " + o.suite);
  }
  if (o.jobs < 1) throw Error("--jobs must be positive");
  SearchConfig cfg;
  cfg.node_limit = o.node_limit;
  const auto tasks = o.suite == "reductions" ? reduction_tasks(o.max_size, cfg) : fcore_tasks(o.max_size, cfg);

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> failures(tasks.size());
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const auto start = Clock::now();
      try {
        rows[i] = tasks[i]();
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
      rows[i].ms = ms_since(start);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < o.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& msg : failures) {
    if (!msg.empty()) throw Error("bench row failed: " + msg);
  }

  std::ostringstream tsv;
  tsv << "id\tkind\t|X|\t|Y|\t|Z|\tanswer\toracle\tnodes\tms\n";
  int disagreements = 0;
  for (const auto& r : rows) {
    if (r.answer != r.oracle) ++disagreements;
    tsv << r.id << '\t' << r.kind << '\t' << r.x << '\t' << r.y << '\t' << r.z << '\t' << r.answer << '\t' << r.oracle
        << '\t' << r.nodes << '\t' << std::fixed << std::setprecision(3) << r.ms << '\n';
  }
  if (!o.out.empty()) write_text_file(o.out, tsv.str());
  out << "suite " << o.suite << '\n' << "rows " << rows.size() << '\n' << "disagreements " << disagreements << '\n';
  err << "time_ms " << ms_since(t0) << '\n';
  return disagreements == 0 ? kYes : kNo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide homomorphism factorization problems over finite algebras", "hfact"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  app.set_help_all_flag("--help-all");

  EncodeOptions enc;
  auto* encode = app.add_subcommand("encode", "Encode a graph (or lift an algebra) and write the algebra file");
  encode->add_option("--encoding", enc.encoding, "unary | magma | semigroup | nary:k | semilattice:n | gadget:name")
      ->required();
  encode->add_option("--in", enc.in, "input graph (algebra file for nary:k)");
  encode->add_option("--out", enc.out, "output algebra file")->required();
  encode->add_option("--legend", enc.legend, "output legend file");
  encode->add_option("--map", enc.map_out, "semilattice:n only: write f to this file");
  encode->add_option("--target", enc.target_out, "semilattice:n only: write the target semilattice");

  InstanceOptions ins;
  auto* instance = app.add_subcommand("instance", "Build a reduction instance from two graphs");
  instance
      ->add_option("--type", ins.type,
                   "rf | lf | unary-lf | hom-unary | hom-magma | hom-semigroup | retraction-unary | "
                   "retraction-semigroup | isomorphism-semigroup")
      ->required();
  instance->add_option("--g", ins.g, "first graph")->required();
  instance->add_option("--h", ins.h, "second graph")->required();
  instance->add_option("--dir", ins.dir, "output directory")->required();

  DecideOptions dec;
  auto* decide = app.add_subcommand("decide", "Solve an instance manifest");
  decide->add_option("--instance", dec.instance, "instance manifest")->required();
  decide->add_option("--witness", dec.witness, "prefix for witness files");
  decide->add_option("--node-limit", dec.node_limit, "stop with 'unknown' after this many nodes");
  decide->add_option("--order", dec.order, "mrv | lex")->check(CLI::IsMember({"mrv", "lex"}));
  decide->add_option("--strategy", dec.strategy, "full-factor only: combined | enumerate")
      ->check(CLI::IsMember({"combined", "enumerate"}));

  FCoreOptions fco;
  auto* fcore = app.add_subcommand("fcore", "Compute an f-core");
  fcore->add_option("--algebra", fco.algebra, "algebra X")->required();
  fcore->add_option("--f", fco.f, "homomorphism f out of X")->required();
  fcore->add_option("--method", fco.method, "brute | gset | vspace | boolean | abelian");
  fcore->add_option("--group", fco.group, "acting group (gset)");
  fcore->add_option("--target", fco.target, "codomain of f, checked when given");
  fcore->add_option("--retraction", fco.retraction_out, "write the retraction here");
  fcore->add_option("--core", fco.core_out, "write the core algebra here");
  fcore->add_option("--report", fco.report_out, "write the report here as well");
  fcore->add_flag("--verify", fco.verify, "cross-check the size against the brute-force core");
  fcore->add_option("--node-limit", fco.node_limit, "node limit for brute-force searches");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check witness maps against an instance");
  verify->add_option("--instance", ver.instance, "instance manifest")->required();
  verify->add_option("--g", ver.g, "map X -> Y");
  verify->add_option("--h", ver.h, "map Y -> Z (Y -> X for retraction)");

  BenchOptions ben;
  auto* bench = app.add_subcommand("bench", "Run a solver-vs-oracle suite and write a TSV table");
  bench->add_option("--suite", ben.suite, "reductions | fcores")->required();
  bench->add_option("--max-size", ben.max_size, "largest graph order (reductions) or |X| (fcores)")->required();
  bench->add_option("--out", ben.out, "TSV output file");
  bench->add_option("--jobs", ben.jobs, "worker threads");
  bench->add_option("--node-limit", ben.node_limit, "node limit per search");

  std::vector<const char*> argv = {"hfact"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kError;
  }

  try {
    if (*encode) return cmd_encode(enc, out);
    if (*instance) return cmd_instance(ins, out);
    if (*decide) return cmd_decide(dec, out, err);
    if (*fcore) return cmd_fcore(fco, out, err);
    if (*verify) return cmd_verify(ver, out);
    if (*bench) return cmd_bench(ben, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace hfact::cli

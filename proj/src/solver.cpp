#include "hfact/solver.hpp"

#include <algorithm>

#include "csp.hpp"

namespace hfact {

using detail::Csp;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::yes: return "yes";
    case Outcome::no: return "no";
    case Outcome::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::hom: return "hom";
    case ProblemKind::right_factor: return "right-factor";
    case ProblemKind::left_factor: return "left-factor";
    case ProblemKind::full_factor: return "full-factor";
    case ProblemKind::retraction: return "retraction";
    case ProblemKind::isomorphism: return "isomorphism";
  }
  return "hom";
}

std::optional<ProblemKind> parse_problem_kind(const std::string& s) {
  for (auto k : {ProblemKind::hom, ProblemKind::right_factor, ProblemKind::left_factor, ProblemKind::full_factor,
                 ProblemKind::retraction, ProblemKind::isomorphism}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

FactorizationInstance make_retraction_instance(const FiniteAlgebra& x, const FiniteAlgebra& y) {
  FactorizationInstance inst;
  inst.kind = ProblemKind::retraction;
  inst.x = x;
  inst.y = y;
  inst.z = x;
  inst.f = Mapping::identity(x.size());
  return inst;
}

namespace {

void check_signatures(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.signature() == b.signature())) throw Error("signature mismatch");
}

void check_map(std::vector<std::string>& report, const char* name, const std::optional<Mapping>& m,
               const FiniteAlgebra& dom, const FiniteAlgebra* cod) {
  if (!m) return;
  if (m->dom_size() != dom.size() || (cod && m->cod_size() != cod->size())) {
    report.push_back(std::string("map ") + name + " has wrong size");
    return;
  }
  if (cod && !is_homomorphism(*m, dom, *cod)) report.push_back(std::string("map ") + name + " is not a homomorphism");
}

void require_valid(const FactorizationInstance& inst) {
  const auto report = validate_instance(inst);
  if (!report.empty()) throw Error("invalid instance: " + report.front());
}

SolveResult finish(const Csp::Stats& stats, bool found) {
  SolveResult r;
  r.nodes = stats.nodes;
  r.outcome = found ? Outcome::yes : (stats.aborted ? Outcome::unknown : Outcome::no);
  return r;
}

}  // namespace

std::vector<std::string> validate_instance(const FactorizationInstance& inst) {
  std::vector<std::string> report;
  for (const auto& msg : validate_algebra(inst.x)) report.push_back("X: " + msg);
  for (const auto& msg : validate_algebra(inst.y)) report.push_back("Y: " + msg);
  if (inst.z) {
    for (const auto& msg : validate_algebra(*inst.z)) report.push_back("Z: " + msg);
  }
  if (!report.empty()) return report;

  if (!(inst.x.signature() == inst.y.signature()) || (inst.z && !(inst.z->signature() == inst.x.signature()))) {
    report.emplace_back("algebras do not share a signature");
    return report;
  }

  auto need = [&](bool present, bool required, const char* name) {
    if (present && !required) report.push_back(std::string(name) + " must be absent for kind " + to_string(inst.kind));
    if (!present && required) report.push_back(std::string(name) + " is required for kind " + to_string(inst.kind));
  };
  switch (inst.kind) {
    case ProblemKind::hom:
    case ProblemKind::isomorphism:
      need(inst.f.has_value(), false, "f");
      need(inst.g.has_value(), false, "g");
      need(inst.h.has_value(), false, "h");
      break;
    case ProblemKind::right_factor:
      need(inst.z.has_value(), true, "Z");
      need(inst.f.has_value(), true, "f");
      need(inst.h.has_value(), true, "h");
      need(inst.g.has_value(), false, "g");
      break;
    case ProblemKind::left_factor:
      need(inst.z.has_value(), true, "Z");
      need(inst.f.has_value(), true, "f");
      need(inst.g.has_value(), true, "g");
      need(inst.h.has_value(), false, "h");
      break;
    case ProblemKind::full_factor:
      need(inst.z.has_value(), true, "Z");
      need(inst.f.has_value(), true, "f");
      need(inst.g.has_value(), false, "g");
      need(inst.h.has_value(), false, "h");
      break;
    case ProblemKind::retraction:
      need(inst.g.has_value(), false, "g");
      need(inst.h.has_value(), false, "h");
      if (inst.z && !inst.z->same_structure(inst.x)) report.emplace_back("retraction requires Z = X");
      if (inst.f && !inst.f->is_identity()) report.emplace_back("retraction requires f = identity");
      break;
  }
  if (!report.empty()) return report;

  const FiniteAlgebra* z = inst.z ? &*inst.z : nullptr;
  if (inst.kind != ProblemKind::retraction) {
    check_map(report, "f", inst.f, inst.x, z);
  }
  check_map(report, "g", inst.g, inst.x, &inst.y);
  check_map(report, "h", inst.h, inst.y, z);
  return report;
}

bool verify_witness(const FactorizationInstance& inst, const std::optional<Mapping>& g,
                    const std::optional<Mapping>& h) {
  auto require = [](const std::optional<Mapping>& m, const char* name) -> const Mapping& {
    if (!m) throw Error(std::string("witness ") + name + " missing");
    return *m;
  };
  auto sized = [](const Mapping& m, int dom, int cod, const char* name) {
    if (m.dom_size() != dom || m.cod_size() != cod) throw Error(std::string("witness ") + name + " has wrong size");
  };
  switch (inst.kind) {
    case ProblemKind::hom: {
      const Mapping& gg = require(g, "g");
      sized(gg, inst.x.size(), inst.y.size(), "g");
      return is_homomorphism(gg, inst.x, inst.y);
    }
    case ProblemKind::isomorphism: {
      const Mapping& gg = require(g, "g");
      sized(gg, inst.x.size(), inst.y.size(), "g");
      if (inst.x.size() != inst.y.size() || !gg.is_injective() || !is_homomorphism(gg, inst.x, inst.y)) return false;
      std::vector<Element> inv(static_cast<std::size_t>(gg.dom_size()));
      for (Element e = 0; e < gg.dom_size(); ++e) inv[static_cast<std::size_t>(gg(e))] = e;
      return is_homomorphism(Mapping(inst.x.size(), inv), inst.y, inst.x);
    }
    case ProblemKind::right_factor: {
      const Mapping& gg = require(g, "g");
      sized(gg, inst.x.size(), inst.y.size(), "g");
      return is_homomorphism(gg, inst.x, inst.y) && compose(*inst.h, gg) == *inst.f;
    }
    case ProblemKind::left_factor: {
      const Mapping& hh = require(h, "h");
      sized(hh, inst.y.size(), inst.z->size(), "h");
      return is_homomorphism(hh, inst.y, *inst.z) && compose(hh, *inst.g) == *inst.f;
    }
    case ProblemKind::full_factor: {
      const Mapping& gg = require(g, "g");
      const Mapping& hh = require(h, "h");
      sized(gg, inst.x.size(), inst.y.size(), "g");
      sized(hh, inst.y.size(), inst.z->size(), "h");
      return is_homomorphism(gg, inst.x, inst.y) && is_homomorphism(hh, inst.y, *inst.z) && compose(hh, gg) == *inst.f;
    }
    case ProblemKind::retraction: {
      const Mapping& gg = require(g, "g");
      const Mapping& hh = require(h, "h");
      sized(gg, inst.x.size(), inst.y.size(), "g");
      sized(hh, inst.y.size(), inst.x.size(), "h");
      return is_homomorphism(gg, inst.x, inst.y) && is_homomorphism(hh, inst.y, inst.x) &&
             compose(hh, gg).is_identity();
    }
  }
  return false;
}

SolveResult find_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SearchConfig& cfg) {
  check_signatures(a, b);
  Csp csp;
  csp.add_block(a, b);
  std::optional<Mapping> witness;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    witness = Mapping(b.size(), values[0]);
    return true;
  });
  auto r = finish(stats, witness.has_value());
  r.g = std::move(witness);
  return r;
}

namespace {

SolveResult right_factor_search(const FiniteAlgebra& x, const FiniteAlgebra& y, const Mapping& f, const Mapping& h,
                                const SearchConfig& cfg) {
  Csp csp;
  const int block = csp.add_block(x, y);
  std::vector<std::vector<Element>> fibers(static_cast<std::size_t>(f.cod_size()));
  for (Element e = 0; e < y.size(); ++e) fibers[static_cast<std::size_t>(h(e))].push_back(e);
  for (Element e = 0; e < x.size(); ++e) {
    const auto& fib = fibers[static_cast<std::size_t>(f(e))];
    csp.restrict(block, e, fib.empty() ? std::vector<Element>{-1} : fib);
  }
  std::optional<Mapping> witness;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    witness = Mapping(y.size(), values[0]);
    return true;
  });
  auto r = finish(stats, witness.has_value());
  r.g = std::move(witness);
  return r;
}

}  // namespace

SolveResult find_right_factor(const FactorizationInstance& inst, const SearchConfig& cfg) {
  require_valid(inst);
  if (inst.kind != ProblemKind::right_factor) throw Error("find_right_factor: instance kind is " + to_string(inst.kind));
  return right_factor_search(inst.x, inst.y, *inst.f, *inst.h, cfg);
}

SolveResult find_left_factor(const FactorizationInstance& inst, const SearchConfig& cfg) {
  require_valid(inst);
  if (inst.kind != ProblemKind::left_factor) throw Error("find_left_factor: instance kind is " + to_string(inst.kind));
  const Mapping& f = *inst.f;
  const Mapping& g = *inst.g;
  std::vector<Element> seed(static_cast<std::size_t>(inst.y.size()), -1);
  for (Element e = 0; e < inst.x.size(); ++e) {
    Element& s = seed[static_cast<std::size_t>(g(e))];
    if (s >= 0 && s != f(e)) return SolveResult{};  // g(x1) = g(x2) but f(x1) != f(x2)
    s = f(e);
  }
  Csp csp;
  const int block = csp.add_block(inst.y, *inst.z);
  for (Element e = 0; e < inst.y.size(); ++e) {
    if (seed[static_cast<std::size_t>(e)] >= 0) csp.fix(block, e, seed[static_cast<std::size_t>(e)]);
  }
  std::optional<Mapping> witness;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    witness = Mapping(inst.z->size(), values[0]);
    return true;
  });
  auto r = finish(stats, witness.has_value());
  r.h = std::move(witness);
  return r;
}

SolveResult find_factorization(const FactorizationInstance& inst, const SearchConfig& cfg) {
  require_valid(inst);
  if (inst.kind != ProblemKind::full_factor) throw Error("find_factorization: instance kind is " + to_string(inst.kind));
  const FiniteAlgebra& z = *inst.z;

  if (cfg.strategy == FactorStrategy::enumerate_left) {
    SolveResult total;
    Csp outer;
    outer.add_block(inst.y, z);
    SearchConfig inner_cfg = cfg;
    bool aborted = false;
    const auto stats = outer.solve(SearchConfig{VariableOrder::lexicographic, cfg.node_limit}, [&](const auto& values) {
      Mapping h(z.size(), values[0]);
      if (cfg.node_limit) {
        if (total.nodes >= *cfg.node_limit) {
          aborted = true;
          return true;
        }
        inner_cfg.node_limit = *cfg.node_limit - total.nodes;
      }
      auto r = right_factor_search(inst.x, inst.y, *inst.f, h, inner_cfg);
      total.nodes += r.nodes;
      if (r.outcome == Outcome::unknown) {
        aborted = true;
        return true;
      }
      if (r.found()) {
        total.g = std::move(r.g);
        total.h = std::move(h);
        return true;
      }
      return false;
    });
    total.nodes += stats.nodes;
    aborted = aborted || stats.aborted;
    total.outcome = total.g ? Outcome::yes : (aborted ? Outcome::unknown : Outcome::no);
    return total;
  }

  Csp csp;
  const int gb = csp.add_block(inst.x, inst.y);
  const int hb = csp.add_block(inst.y, z);
  csp.add_channel(gb, hb, inst.f->values());
  std::optional<Mapping> g, h;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    g = Mapping(inst.y.size(), values[0]);
    h = Mapping(z.size(), values[1]);
    return true;
  });
  auto r = finish(stats, g.has_value());
  r.g = std::move(g);
  r.h = std::move(h);
  return r;
}

SolveResult decide_retraction(const FiniteAlgebra& x, const FiniteAlgebra& y, const SearchConfig& cfg) {
  check_signatures(x, y);
  if (y.size() < x.size()) return SolveResult{};
  Csp csp;
  const int gb = csp.add_block(x, y);
  const int hb = csp.add_block(y, x);
  csp.add_channel(gb, hb, Mapping::identity(x.size()).values());
  csp.add_injective(gb);
  std::optional<Mapping> g, h;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    g = Mapping(y.size(), values[0]);
    h = Mapping(x.size(), values[1]);
    return true;
  });
  auto r = finish(stats, g.has_value());
  r.g = std::move(g);
  r.h = std::move(h);
  return r;
}

SolveResult decide_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const SearchConfig& cfg) {
  check_signatures(a, b);
  if (a.size() != b.size()) return SolveResult{};
  Csp csp;
  const int block = csp.add_block(a, b);
  csp.add_injective(block);
  std::optional<Mapping> witness;
  const auto stats = csp.solve(cfg, [&](const auto& values) {
    witness = Mapping(b.size(), values[0]);
    return true;
  });
  auto r = finish(stats, witness.has_value());
  r.g = std::move(witness);
  return r;
}

SolveResult solve(const FactorizationInstance& inst, const SearchConfig& cfg) {
  require_valid(inst);
  switch (inst.kind) {
    case ProblemKind::hom: return find_homomorphism(inst.x, inst.y, cfg);
    case ProblemKind::right_factor: return find_right_factor(inst, cfg);
    case ProblemKind::left_factor: return find_left_factor(inst, cfg);
    case ProblemKind::full_factor: return find_factorization(inst, cfg);
    case ProblemKind::retraction: return decide_retraction(inst.x, inst.y, cfg);
    case ProblemKind::isomorphism: return decide_isomorphism(inst.x, inst.y, cfg);
  }
  throw Error("unknown problem kind");
}

std::vector<Mapping> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b, std::size_t limit) {
  check_signatures(a, b);
  if (limit == 0) throw Error("enumerate_homomorphisms: limit must be positive");
  Csp csp;
  csp.add_block(a, b);
  std::vector<Mapping> out;
  SearchConfig cfg;
  cfg.order = VariableOrder::lexicographic;
  csp.solve(cfg, [&](const auto& values) {
    out.emplace_back(b.size(), values[0]);
    return out.size() >= limit;
  });
  return out;
}

SolveResult find_nontrivial_retraction(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg) {
  if (f.dom_size() != x.size()) throw Error("find_nontrivial_retraction: f has wrong domain size");
  std::vector<std::vector<Element>> fibers(static_cast<std::size_t>(f.cod_size()));
  for (Element e = 0; e < x.size(); ++e) fibers[static_cast<std::size_t>(f(e))].push_back(e);

  SolveResult total;
  bool aborted = false;
  for (Element moved = 0; moved < x.size(); ++moved) {
    if (fibers[static_cast<std::size_t>(f(moved))].size() < 2) continue;
    Csp csp;
    const int block = csp.add_block(x, x);
    for (Element e = 0; e < x.size(); ++e) csp.restrict(block, e, fibers[static_cast<std::size_t>(f(e))]);
    csp.forbid(block, moved, moved);
    csp.add_idempotent(block);
    SearchConfig step = cfg;
    if (cfg.node_limit) {
      if (total.nodes >= *cfg.node_limit) {
        aborted = true;
        break;
      }
      step.node_limit = *cfg.node_limit - total.nodes;
    }
    std::optional<Mapping> witness;
    const auto stats = csp.solve(step, [&](const auto& values) {
      witness = Mapping(x.size(), values[0]);
      return true;
    });
    total.nodes += stats.nodes;
    if (witness) {
      total.outcome = Outcome::yes;
      total.g = std::move(witness);
      return total;
    }
    if (stats.aborted) {
      aborted = true;
      break;
    }
  }
  total.outcome = aborted ? Outcome::unknown : Outcome::no;
  return total;
}

}  // namespace hfact

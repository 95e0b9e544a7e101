#include "hfact/fcore.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "hfact/varieties.hpp"

namespace hfact {

namespace {

constexpr std::array<const char*, 5> kMethods = {"brute", "gset", "vspace", "boolean", "abelian"};

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

void require_hom_out_of(const FiniteAlgebra& x, const Mapping& f, const char* who) {
  if (f.dom_size() != x.size()) throw Error(std::string(who) + ": f has wrong domain size");
  if (!image_algebra(x, f)) throw Error(std::string(who) + ": f is not a homomorphism");
}

void require_valid(const std::vector<std::string>& report, const char* who) {
  if (!report.empty()) throw Error(std::string(who) + ": " + report.front());
}

// Fills image and core algebra from the retraction and checks the axioms.
FCoreResult finish(const FiniteAlgebra& x, const Mapping& f, Mapping r, FCoreMethod method, bool certified) {
  if (!is_retraction_respecting(r, x, f)) {
    throw Error(to_string(method) + " f-core: constructed map is not an f-respecting retraction");
  }
  FCoreResult out;
  out.image = r.image();
  out.core_algebra = induced_subalgebra(x, out.image).algebra;
  out.retraction = std::move(r);
  out.method = method;
  out.certified_minimal = certified;
  return out;
}

}  // namespace

std::string to_string(FCoreMethod m) { return kMethods[static_cast<std::size_t>(m)]; }

std::optional<FCoreMethod> parse_fcore_method(const std::string& s) {
  for (std::size_t i = 0; i < kMethods.size(); ++i) {
    if (s == kMethods[i]) return static_cast<FCoreMethod>(i);
  }
  return std::nullopt;
}

FCoreResult brute_fcore(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg) {
  require_hom_out_of(x, f, "brute_fcore");
  FiniteAlgebra current = x;
  std::vector<Element> to_x(sz(x.size()));  // current element -> element of x
  std::iota(to_x.begin(), to_x.end(), 0);
  Mapping total = Mapping::identity(x.size());
  std::uint64_t nodes = 0;
  bool certified = false;
  int rounds = 0;

  while (true) {
    SearchConfig step = cfg;
    if (cfg.node_limit) {
      if (nodes >= *cfg.node_limit) break;
      step.node_limit = *cfg.node_limit - nodes;
    }
    const auto res = find_nontrivial_retraction(current, restrict_domain(f, to_x), step);
    nodes += res.nodes;
    if (res.outcome == Outcome::no) {
      certified = true;
      break;
    }
    if (res.outcome == Outcome::unknown) break;

    const Mapping& r = *res.g;
    const auto keep = r.image();
    const Subalgebra sub = induced_subalgebra(current, keep);
    std::vector<Element> next_to_x(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) next_to_x[i] = to_x[sz(keep[i])];

    // x -> current -> (r) -> current; expressed back in x's indices.
    std::vector<Element> from_x(sz(x.size()), -1);
    for (std::size_t i = 0; i < to_x.size(); ++i) from_x[sz(to_x[i])] = static_cast<Element>(i);
    std::vector<Element> composed(sz(x.size()));
    for (Element e = 0; e < x.size(); ++e) composed[sz(e)] = to_x[sz(r(from_x[sz(total(e))]))];
    total = Mapping(x.size(), composed);
    if (!is_retraction_respecting(total, x, f)) {
      throw Error("brute_fcore: composite of retractions does not respect f");
    }
    current = sub.algebra;
    to_x = next_to_x;
    ++rounds;
  }
  auto out = finish(x, f, total, FCoreMethod::brute, certified);
  out.detail = std::to_string(rounds) + " retraction step(s), " + std::to_string(nodes) + " nodes";
  if (!certified) out.detail += ", node limit reached";
  return out;
}

bool is_fcore(const FiniteAlgebra& x, const Mapping& f, const SearchConfig& cfg) {
  require_hom_out_of(x, f, "is_fcore");
  const auto res = find_nontrivial_retraction(x, f, cfg);
  if (res.outcome == Outcome::unknown) throw Error("is_fcore: node limit reached");
  return res.outcome == Outcome::no;
}

FCoreResult gset_fcore(const FiniteAlgebra& x, const FiniteAlgebra& group, const Mapping& f) {
  require_valid(validate_gset(x, group), "gset_fcore");
  require_hom_out_of(x, f, "gset_fcore");
  const int m = group.size();
  const auto orbits = gset_orbits(x);
  const std::size_t k = orbits.size();

  auto stabilizes = [&](int g, Element v) { return x.apply(sz(g), v) == v; };
  // target[i][j]: least y in orbit j such that x0_i -> y extends to an
  // equivariant map commuting with f, or -1.
  std::vector<std::vector<Element>> target(k, std::vector<Element>(k, -1));
  for (std::size_t i = 0; i < k; ++i) {
    const Element x0 = orbits[i].front();
    for (std::size_t j = 0; j < k; ++j) {
      for (Element y : orbits[j]) {
        if (f(y) != f(x0)) continue;
        bool ok = true;
        for (int g = 0; g < m && ok; ++g) ok = !stabilizes(g, x0) || stabilizes(g, y);
        if (ok) {
          target[i][j] = y;
          break;
        }
      }
    }
  }
  auto reach = [&](std::size_t i, std::size_t j) { return target[i][j] >= 0; };

  // Keep the least orbit of every terminal class of the reachability preorder.
  std::vector<char> kept(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    bool terminal = true, least = true;
    for (std::size_t l = 0; l < k; ++l) {
      if (reach(j, l) && !reach(l, j)) terminal = false;
      if (l < j && reach(j, l) && reach(l, j)) least = false;
    }
    kept[j] = terminal && least;
  }

  std::vector<Element> r(sz(x.size()));
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t dest = i;
    if (!kept[i]) {
      dest = k;
      for (std::size_t j = 0; j < k && dest == k; ++j) {
        if (kept[j] && reach(i, j)) dest = j;
      }
    }
    const Element x0 = orbits[i].front();
    const Element y = dest == i ? x0 : target[i][dest];
    for (int g = 0; g < m; ++g) r[sz(x.apply(sz(g), x0))] = x.apply(sz(g), y);
  }
  auto out = finish(x, f, Mapping(x.size(), r), FCoreMethod::gset, false);
  out.detail = std::to_string(k) + " orbit(s), " +
               std::to_string(std::count(kept.begin(), kept.end(), 1)) + " kept";
  return out;
}

FCoreResult vspace_fcore(const FiniteAlgebra& x, const Mapping& f) {
  require_valid(validate_vector_space(x), "vspace_fcore");
  require_hom_out_of(x, f, "vspace_fcore");
  const int p = vector_space_prime(x);
  const auto add = *x.find_op("add");
  const Element zero = x.apply(*x.find_op("zero"));
  std::vector<std::size_t> scalar;
  for (int c = 0; c < p; ++c) scalar.push_back(*x.find_op("s" + std::to_string(c)));

  std::vector<char> in_span(sz(x.size()), 0);
  std::vector<Element> span = {zero};
  in_span[sz(zero)] = 1;
  auto absorb = [&](Element b) {
    std::vector<Element> grown;
    for (Element s : span) {
      for (int c = 0; c < p; ++c) {
        const Element e = x.apply(add, s, x.apply(scalar[sz(c)], b));
        if (!in_span[sz(e)]) {
          in_span[sz(e)] = 1;
          grown.push_back(e);
        }
      }
    }
    span.insert(span.end(), grown.begin(), grown.end());
  };

  // Basis of ker f first, then its extension to all of X.
  std::vector<Element> kernel_basis, complement_basis;
  for (Element e = 0; e < x.size(); ++e) {
    if (f(e) == f(zero) && !in_span[sz(e)]) {
      kernel_basis.push_back(e);
      absorb(e);
    }
  }
  for (Element e = 0; e < x.size(); ++e) {
    if (!in_span[sz(e)]) {
      complement_basis.push_back(e);
      absorb(e);
    }
  }

  // Walk every combination, tracking the complement component.
  std::vector<std::pair<Element, Element>> combos = {{zero, zero}};
  auto extend = [&](Element b, bool complement) {
    std::vector<std::pair<Element, Element>> next;
    for (const auto& [e, w] : combos) {
      for (int c = 0; c < p; ++c) {
        const Element cb = x.apply(scalar[sz(c)], b);
        next.emplace_back(x.apply(add, e, cb), complement ? x.apply(add, w, cb) : w);
      }
    }
    combos = std::move(next);
  };
  for (Element b : kernel_basis) extend(b, false);
  for (Element b : complement_basis) extend(b, true);
  std::vector<Element> r(sz(x.size()), -1);
  for (const auto& [e, w] : combos) r[sz(e)] = w;

  auto out = finish(x, f, Mapping(x.size(), r), FCoreMethod::vspace, false);
  out.detail = "dim X = " + std::to_string(kernel_basis.size() + complement_basis.size()) +
               ", dim ker f = " + std::to_string(kernel_basis.size());
  return out;
}

FCoreResult boolean_fcore(const FiniteAlgebra& x, const Mapping& f) {
  require_valid(validate_boolean_algebra(x), "boolean_fcore");
  require_hom_out_of(x, f, "boolean_fcore");
  const auto meet = *x.find_op("meet");
  const auto join = *x.find_op("join");
  const Element bot = x.apply(*x.find_op("bot"));
  auto leq = [&](Element a, Element b) { return x.apply(meet, a, b) == a; };

  std::vector<Element> atoms;
  for (Element a = 0; a < x.size(); ++a) {
    if (a == bot) continue;
    bool atom = true;
    for (Element b = 0; b < x.size() && atom; ++b) atom = b == bot || b == a || !leq(b, a);
    if (atom) atoms.push_back(a);
  }

  // Atoms f does not kill stay; the others fold onto the least surviving atom.
  std::vector<Element> alive;
  for (Element a : atoms) {
    if (f(a) != f(bot)) alive.push_back(a);
  }
  if (alive.empty() && !atoms.empty()) alive.push_back(atoms.front());
  auto sigma = [&](Element a) {
    return std::find(alive.begin(), alive.end(), a) != alive.end() ? a : alive.front();
  };

  std::vector<Element> r(sz(x.size()));
  for (Element e = 0; e < x.size(); ++e) {
    Element v = bot;
    for (Element a : atoms) {
      if (leq(sigma(a), e)) v = x.apply(join, v, a);
    }
    r[sz(e)] = v;
  }
  auto out = finish(x, f, Mapping(x.size(), r), FCoreMethod::boolean, false);
  out.detail = std::to_string(atoms.size()) + " atom(s), " + std::to_string(alive.size()) + " kept";
  return out;
}

namespace {

// Generators z_1..z_k with Z = <z_1> ⊕ ... ⊕ <z_k>, found by backtracking.
class CyclicDecomposition {
 public:
  CyclicDecomposition(const FiniteAlgebra& z) : z_(z), add_(*z.find_op("add")), zero_(z.apply(*z.find_op("zero"))) {
    for (Element e = 0; e < z.size(); ++e) order_.push_back(order_of(e));
    candidates_.resize(sz(z.size()));
    std::iota(candidates_.begin(), candidates_.end(), 0);
    std::stable_sort(candidates_.begin(), candidates_.end(),
                     [&](Element a, Element b) { return order_[sz(a)] > order_[sz(b)]; });
  }

  std::optional<std::vector<Element>> find() {
    std::vector<char> sub(sz(z_.size()), 0);
    sub[sz(zero_)] = 1;
    std::vector<Element> gens;
    if (search(sub, 1, gens)) return gens;
    return std::nullopt;
  }

  [[nodiscard]] int order(Element e) const { return order_[sz(e)]; }

 private:
  int order_of(Element e) const {
    int k = 1;
    for (Element acc = e; acc != zero_; acc = z_.apply(add_, acc, e)) ++k;
    return k;
  }

  bool search(const std::vector<char>& sub, int size, std::vector<Element>& gens) {
    if (size == z_.size()) return true;
    for (Element c : candidates_) {
      if (sub[sz(c)]) continue;
      // <c> ∩ sub = 0 exactly when the sumset has |sub| * ord(c) elements.
      std::vector<char> next(sz(z_.size()), 0);
      int count = 0;
      for (Element s = 0; s < z_.size(); ++s) {
        if (!sub[sz(s)]) continue;
        Element e = s;
        for (int i = 0; i < order(c); ++i) {
          if (!next[sz(e)]) {
            next[sz(e)] = 1;
            ++count;
          }
          e = z_.apply(add_, e, c);
        }
      }
      if (count != size * order(c)) continue;
      gens.push_back(c);
      if (search(next, count, gens)) return true;
      gens.pop_back();
    }
    return false;
  }

  const FiniteAlgebra& z_;
  std::size_t add_;
  Element zero_;
  std::vector<int> order_;
  std::vector<Element> candidates_;
};

}  // namespace

FCoreResult abelian_fcore(const FiniteAlgebra& x, const Mapping& f) {
  require_valid(validate_abelian_group(x), "abelian_fcore");
  require_hom_out_of(x, f, "abelian_fcore");
  const auto img = *image_algebra(x, f);
  const FiniteAlgebra& z = img.algebra;
  const auto add = *x.find_op("add");
  const Element zero = x.apply(*x.find_op("zero"));

  CyclicDecomposition decomposition(z);
  const auto gens = decomposition.find();
  if (!gens) throw Error("abelian_fcore: image has no cyclic decomposition");

  auto times = [&](int k, Element e) {
    Element acc = zero;
    for (int i = 0; i < k; ++i) acc = x.apply(add, acc, e);
    return acc;
  };

  // Lift each generator to an element of X of the same order.
  std::vector<Element> lifts;
  for (Element zg : *gens) {
    const int n = decomposition.order(zg);
    std::optional<Element> lift;
    for (Element e = 0; e < x.size() && !lift; ++e) {
      if (img.onto(e) == zg && times(n, e) == zero) lift = e;
    }
    if (!lift) {
      FCoreResult out = brute_fcore(x, f);
      out.method = FCoreMethod::abelian;
      out.applicable = false;
      out.detail = "f does not split: no preimage of a generator of order " + std::to_string(n) +
                   " has order dividing " + std::to_string(n) + "; brute-force core size " +
                   std::to_string(out.image.size());
      return out;
    }
    lifts.push_back(*lift);
  }

  // Section s: sum c_i z_i -> sum c_i x_i, then r = s∘f.
  const auto zadd = *z.find_op("add");
  const Element zzero = z.apply(*z.find_op("zero"));
  std::vector<std::pair<Element, Element>> combos = {{zzero, zero}};
  for (std::size_t i = 0; i < gens->size(); ++i) {
    std::vector<std::pair<Element, Element>> next;
    for (const auto& [ze, xe] : combos) {
      Element zc = ze, xc = xe;
      for (int c = 0; c < decomposition.order((*gens)[i]); ++c) {
        next.emplace_back(zc, xc);
        zc = z.apply(zadd, zc, (*gens)[i]);
        xc = x.apply(add, xc, lifts[i]);
      }
    }
    combos = std::move(next);
  }
  std::vector<Element> section(sz(z.size()), -1);
  for (const auto& [ze, xe] : combos) section[sz(ze)] = xe;
  std::vector<Element> r(sz(x.size()));
  for (Element e = 0; e < x.size(); ++e) r[sz(e)] = section[sz(img.onto(e))];

  auto out = finish(x, f, Mapping(x.size(), r), FCoreMethod::abelian, false);
  out.detail = "image splits as a sum of " + std::to_string(gens->size()) + " cyclic group(s)";
  return out;
}

FCoreResult compute_fcore(FCoreMethod method, const FiniteAlgebra& x, const Mapping& f, const FiniteAlgebra* group,
                          const SearchConfig& cfg) {
  switch (method) {
    case FCoreMethod::brute: return brute_fcore(x, f, cfg);
    case FCoreMethod::gset:
      if (group == nullptr) throw Error("gset f-core needs the acting group");
      return gset_fcore(x, *group, f);
    case FCoreMethod::vspace: return vspace_fcore(x, f);
    case FCoreMethod::boolean: return boolean_fcore(x, f);
    case FCoreMethod::abelian: return abelian_fcore(x, f);
  }
  throw Error("unknown f-core method");
}

SolveResult fixed_z_right_factor(const FactorizationInstance& inst, FCoreMethod method, const FiniteAlgebra* group,
                                 const SearchConfig& cfg) {
  if (inst.kind != ProblemKind::right_factor) throw Error("fixed_z_right_factor: instance must be right-factor");
  const auto report = validate_instance(inst);
  if (!report.empty()) throw Error("invalid instance: " + report.front());
  const Mapping& f = *inst.f;
  const Mapping& h = *inst.h;

  const auto im_h = h.image();
  for (Element v : f.image()) {
    if (!std::binary_search(im_h.begin(), im_h.end(), v)) return SolveResult{};
  }

  const FCoreResult core = compute_fcore(method, inst.x, f, group, cfg);
  const Subalgebra sub = induced_subalgebra(inst.x, core.image);
  FactorizationInstance reduced;
  reduced.kind = ProblemKind::right_factor;
  reduced.x = sub.algebra;
  reduced.y = inst.y;
  reduced.z = inst.z;
  reduced.f = restrict_domain(f, core.image);
  reduced.h = h;
  SolveResult res = find_right_factor(reduced, cfg);
  if (!res.found()) return res;

  std::vector<Element> g(sz(inst.x.size()));
  for (Element e = 0; e < inst.x.size(); ++e) g[sz(e)] = (*res.g)(sub.old_to_new[sz(core.retraction(e))]);
  res.g = Mapping(inst.y.size(), g);
  if (!verify_witness(inst, res.g, std::nullopt)) throw Error("fixed_z_right_factor: reassembled witness fails");
  return res;
}

}  // namespace hfact

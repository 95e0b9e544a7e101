#include "hfact/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hfact {

namespace {

std::size_t table_size(int n, int arity) {
  std::size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

void require_same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (!(a.signature() == b.signature())) throw Error("signature mismatch");
}

}  // namespace

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name == name) return i;
  }
  return std::nullopt;
}

bool Signature::is_rich() const {
  int unary = 0;
  for (const auto& op : ops_) {
    if (op.arity >= 2) return true;
    if (op.arity == 1) ++unary;
  }
  return unary >= 2;
}

FiniteAlgebra::FiniteAlgebra(Signature signature, int size, std::vector<std::vector<Element>> tables,
                             std::vector<std::string> labels)
    : signature_(std::move(signature)),
      size_(size),
      tables_(std::move(tables)),
      labels_(std::move(labels)) {}

std::string FiniteAlgebra::label(Element x) const {
  if (static_cast<std::size_t>(x) < labels_.size()) return labels_[static_cast<std::size_t>(x)];
  return std::to_string(x);
}

std::size_t FiniteAlgebra::tuple_index(std::span<const Element> args) const {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
  return idx;
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
  return signature_ == other.signature_ && size_ == other.size_ && tables_ == other.tables_;
}

Mapping::Mapping(int cod_size, std::vector<Element> values) : cod_(cod_size), values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] >= cod_) {
      throw Error("mapping value " + std::to_string(values_[i]) + " at " + std::to_string(i) +
                  " outside [0, " + std::to_string(cod_) + ")");
    }
  }
}

Mapping Mapping::identity(int n) {
  std::vector<Element> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return Mapping(n, std::move(v));
}

Mapping Mapping::constant(int dom, int cod, Element value) {
  return Mapping(cod, std::vector<Element>(static_cast<std::size_t>(dom), value));
}

bool Mapping::is_injective() const {
  std::vector<char> seen(static_cast<std::size_t>(cod_), 0);
  for (Element v : values_) {
    if (seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

bool Mapping::is_surjective() const { return static_cast<int>(image().size()) == cod_; }

bool Mapping::is_identity() const {
  if (cod_ != dom_size()) return false;
  for (int i = 0; i < dom_size(); ++i) {
    if (values_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

std::vector<Element> Mapping::image() const {
  std::vector<Element> img(values_);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

std::vector<std::string> validate_algebra(const FiniteAlgebra& alg) {
  std::vector<std::string> report;
  const int n = alg.size();
  if (n <= 0) report.push_back("carrier size must be positive, got " + std::to_string(n));

  std::set<std::string> names;
  for (const auto& op : alg.signature().ops()) {
    if (!names.insert(op.name).second) report.push_back("duplicate operation name '" + op.name + "'");
    if (op.arity < 0) report.push_back("operation '" + op.name + "' has negative arity");
  }

  const auto& sig = alg.signature();
  if (alg.tables().size() != sig.size()) {
    report.push_back("expected " + std::to_string(sig.size()) + " tables, found " +
                     std::to_string(alg.tables().size()));
  }
  const std::size_t common = std::min(alg.tables().size(), sig.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& op = sig[i];
    if (op.arity < 0 || n <= 0) continue;
    const auto& t = alg.table(i);
    const std::size_t expected = table_size(n, op.arity);
    if (t.size() != expected) {
      report.push_back("table '" + op.name + "' incomplete: expected " + std::to_string(expected) +
                       " entries, found " + std::to_string(t.size()));
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < 0 || t[j] >= n) {
        report.push_back("table '" + op.name + "' entry " + std::to_string(j) + " = " +
                         std::to_string(t[j]) + " out of range [0, " + std::to_string(n) + ")");
      }
    }
  }

  const auto& labels = alg.labels();
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != n) {
      report.push_back("expected " + std::to_string(n) + " labels, found " + std::to_string(labels.size()));
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) report.push_back("duplicate label '" + l + "'");
    }
  }
  return report;
}

bool is_homomorphism(const Mapping& m, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  require_same_signature(a, b);
  if (m.dom_size() != a.size() || m.cod_size() != b.size()) {
    throw Error("mapping is " + std::to_string(m.dom_size()) + "->" + std::to_string(m.cod_size()) +
                " but algebras have sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  std::vector<Element> image_args;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const int arity = a.signature()[op].arity;
    image_args.resize(static_cast<std::size_t>(arity));
    bool ok = true;
    for_each_tuple(a.size(), arity, [&](std::span<const Element> args) {
      if (!ok) return;
      for (std::size_t i = 0; i < args.size(); ++i) image_args[i] = m(args[i]);
      if (m(a.apply(op, args)) != b.apply(op, image_args)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

Mapping compose(const Mapping& outer, const Mapping& inner) {
  if (inner.cod_size() != outer.dom_size()) {
    throw Error("cannot compose: inner codomain " + std::to_string(inner.cod_size()) +
                " != outer domain " + std::to_string(outer.dom_size()));
  }
  std::vector<Element> v(static_cast<std::size_t>(inner.dom_size()));
  for (int x = 0; x < inner.dom_size(); ++x) v[static_cast<std::size_t>(x)] = outer(inner(x));
  return Mapping(outer.cod_size(), std::move(v));
}

bool is_retraction_respecting(const Mapping& r, const FiniteAlgebra& x, const Mapping& f) {
  if (r.dom_size() != x.size() || r.cod_size() != x.size() || f.dom_size() != x.size()) {
    throw Error("retraction check: size mismatch");
  }
  if (!is_homomorphism(r, x, x)) return false;
  if (!(compose(r, r) == r)) return false;
  return compose(f, r) == f;
}

ClosureError::ClosureError(std::string op, std::vector<Element> args, Element result)
    : Error([&] {
        std::ostringstream os;
        os << "subset not closed under '" << op << "': (";
        for (std::size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i];
        os << ") -> " << result;
        return os.str();
      }()),
      op_(std::move(op)),
      args_(std::move(args)),
      result_(result) {}

Subalgebra induced_subalgebra(const FiniteAlgebra& a, std::span<const Element> subset) {
  Subalgebra sub;
  sub.old_to_new.assign(static_cast<std::size_t>(a.size()), -1);
  std::vector<Element> members(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Element x : members) {
    if (x < 0 || x >= a.size()) throw Error("subset element " + std::to_string(x) + " out of range");
  }
  if (members.empty()) throw Error("empty subset");
  for (std::size_t i = 0; i < members.size(); ++i) {
    sub.old_to_new[static_cast<std::size_t>(members[i])] = static_cast<Element>(i);
  }
  sub.new_to_old = members;

  const int m = static_cast<int>(members.size());
  std::vector<std::vector<Element>> tables;
  std::vector<Element> old_args;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const int arity = a.signature()[op].arity;
    std::vector<Element> t;
    t.reserve(table_size(m, arity));
    old_args.resize(static_cast<std::size_t>(arity));
    for_each_tuple(m, arity, [&](std::span<const Element> args) {
      for (std::size_t i = 0; i < args.size(); ++i) old_args[i] = members[static_cast<std::size_t>(args[i])];
      const Element r = a.apply(op, old_args);
      const Element nr = sub.old_to_new[static_cast<std::size_t>(r)];
      if (nr < 0) throw ClosureError(a.signature()[op].name, old_args, r);
      t.push_back(nr);
    });
    tables.push_back(std::move(t));
  }
  std::vector<std::string> labels;
  if (!a.labels().empty()) {
    for (Element x : members) labels.push_back(a.labels()[static_cast<std::size_t>(x)]);
  }
  sub.algebra = FiniteAlgebra(a.signature(), m, std::move(tables), std::move(labels));
  return sub;
}

PropertyReport check_properties(const FiniteAlgebra& a, std::string_view op_name) {
  const auto op = a.find_op(op_name);
  if (!op) throw Error("no operation named '" + std::string(op_name) + "'");
  if (a.signature()[*op].arity != 2) throw Error("operation '" + std::string(op_name) + "' is not binary");
  const int n = a.size();
  PropertyReport rep;
  rep.associative = true;
  rep.commutative = true;
  rep.idempotent = true;
  for (Element x = 0; x < n; ++x) {
    if (a.apply(*op, x, x) != x) rep.idempotent = false;
    for (Element y = 0; y < n; ++y) {
      const Element xy = a.apply(*op, x, y);
      if (xy != a.apply(*op, y, x)) rep.commutative = false;
      if (!rep.associative) continue;
      for (Element z = 0; z < n; ++z) {
        if (a.apply(*op, xy, z) != a.apply(*op, x, a.apply(*op, y, z))) {
          rep.associative = false;
          break;
        }
      }
    }
  }
  rep.meet_semilattice = rep.associative && rep.commutative && rep.idempotent;
  return rep;
}

std::optional<ImageAlgebra> image_algebra(const FiniteAlgebra& x, const Mapping& f) {
  if (f.dom_size() != x.size()) throw Error("image_algebra: mapping domain does not match algebra");
  ImageAlgebra out;
  out.image_to_cod = f.image();
  const int m = static_cast<int>(out.image_to_cod.size());
  std::vector<Element> cod_to_image(static_cast<std::size_t>(f.cod_size()), -1);
  for (int i = 0; i < m; ++i) cod_to_image[static_cast<std::size_t>(out.image_to_cod[static_cast<std::size_t>(i)])] = i;
  std::vector<Element> onto(static_cast<std::size_t>(x.size()));
  for (Element e = 0; e < x.size(); ++e) onto[static_cast<std::size_t>(e)] = cod_to_image[static_cast<std::size_t>(f(e))];
  out.onto = Mapping(m, onto);

  std::vector<std::vector<Element>> tables;
  std::vector<Element> img_args;
  for (std::size_t op = 0; op < x.signature().size(); ++op) {
    const int arity = x.signature()[op].arity;
    std::vector<Element> t(table_size(m, arity), -1);
    img_args.resize(static_cast<std::size_t>(arity));
    bool ok = true;
    for_each_tuple(x.size(), arity, [&](std::span<const Element> args) {
      if (!ok) return;
      std::size_t idx = 0;
      for (std::size_t i = 0; i < args.size(); ++i) {
        idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(onto[static_cast<std::size_t>(args[i])]);
      }
      const Element r = onto[static_cast<std::size_t>(x.apply(op, args))];
      if (t[idx] == -1) {
        t[idx] = r;
      } else if (t[idx] != r) {
        ok = false;
      }
    });
    if (!ok) return std::nullopt;
    tables.push_back(std::move(t));
  }
  out.algebra = FiniteAlgebra(x.signature(), m, std::move(tables));
  return out;
}

Mapping restrict_domain(const Mapping& f, std::span<const Element> elements) {
  std::vector<Element> v;
  v.reserve(elements.size());
  for (Element e : elements) v.push_back(f(e));
  return Mapping(f.cod_size(), std::move(v));
}

}  // namespace hfact

#include "hfact/varieties.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace hfact {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

std::optional<std::size_t> require_op(const FiniteAlgebra& a, const std::string& name, int arity,
                                      std::vector<std::string>& report) {
  const auto op = a.find_op(name);
  if (!op) {
    report.push_back("missing operation " + name);
    return std::nullopt;
  }
  if (a.signature()[*op].arity != arity) {
    report.push_back("operation " + name + " must have arity " + std::to_string(arity));
    return std::nullopt;
  }
  return op;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

// Appends the first failed group axiom, if any.
void check_abelian_core(const FiniteAlgebra& a, std::size_t add, std::size_t neg, std::size_t zero,
                        std::vector<std::string>& report) {
  const int n = a.size();
  const Element e = a.apply(zero);
  for (int x = 0; x < n; ++x) {
    if (a.apply(add, x, e) != x) {
      report.push_back("zero is not neutral at " + std::to_string(x));
      return;
    }
    if (a.apply(add, x, a.apply(neg, x)) != e) {
      report.push_back("neg is not an inverse at " + std::to_string(x));
      return;
    }
    for (int y = 0; y < n; ++y) {
      if (a.apply(add, x, y) != a.apply(add, y, x)) {
        report.push_back("add is not commutative");
        return;
      }
      for (int z = 0; z < n; ++z) {
        if (a.apply(add, a.apply(add, x, y), z) != a.apply(add, x, a.apply(add, y, z))) {
          report.push_back("add is not associative");
          return;
        }
      }
    }
  }
}

void require_exact_signature(const FiniteAlgebra& a, std::size_t count, std::vector<std::string>& report) {
  if (a.signature().size() != count) report.emplace_back("unexpected extra operations");
}

}  // namespace

std::vector<std::string> validate_abelian_group(const FiniteAlgebra& a) {
  std::vector<std::string> report = validate_algebra(a);
  if (!report.empty()) return report;
  const auto add = require_op(a, "add", 2, report);
  const auto neg = require_op(a, "neg", 1, report);
  const auto zero = require_op(a, "zero", 0, report);
  require_exact_signature(a, 3, report);
  if (!report.empty()) return report;
  check_abelian_core(a, *add, *neg, *zero, report);
  return report;
}

int vector_space_prime(const FiniteAlgebra& a) {
  int p = 0;
  while (a.find_op("s" + std::to_string(p))) ++p;
  return p;
}

std::vector<std::string> validate_vector_space(const FiniteAlgebra& a) {
  std::vector<std::string> report = validate_algebra(a);
  if (!report.empty()) return report;
  const auto add = require_op(a, "add", 2, report);
  const auto neg = require_op(a, "neg", 1, report);
  const auto zero = require_op(a, "zero", 0, report);
  const int p = vector_space_prime(a);
  if (!is_prime(p)) report.push_back("scalar count " + std::to_string(p) + " is not prime");
  std::vector<std::size_t> s;
  for (int k = 0; k < p; ++k) {
    if (auto op = require_op(a, "s" + std::to_string(k), 1, report)) s.push_back(*op);
  }
  require_exact_signature(a, 3 + sz(p), report);
  if (!report.empty()) return report;
  check_abelian_core(a, *add, *neg, *zero, report);
  if (!report.empty()) return report;

  const Element e = a.apply(*zero);
  for (int x = 0; x < a.size(); ++x) {
    if (a.apply(s[0], x) != e || a.apply(s[1], x) != x) {
      report.push_back("s0 or s1 misbehaves at " + std::to_string(x));
      return report;
    }
    for (int k = 0; k < p; ++k) {
      for (int l = 0; l < p; ++l) {
        // (k + l) x = kx + lx and (k l) x = k (l x)
        const Element sum = a.apply(s[sz((k + l) % p)], x);
        if (sum != a.apply(*add, a.apply(s[sz(k)], x), a.apply(s[sz(l)], x))) {
          report.push_back("scalar addition does not distribute at " + std::to_string(x));
          return report;
        }
        if (a.apply(s[sz((k * l) % p)], x) != a.apply(s[sz(k)], a.apply(s[sz(l)], x))) {
          report.push_back("scalar multiplication is not associative at " + std::to_string(x));
          return report;
        }
      }
      for (int y = 0; y < a.size(); ++y) {
        if (a.apply(s[sz(k)], a.apply(*add, x, y)) != a.apply(*add, a.apply(s[sz(k)], x), a.apply(s[sz(k)], y))) {
          report.push_back("scalar multiplication is not additive");
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<std::string> validate_boolean_algebra(const FiniteAlgebra& a) {
  std::vector<std::string> report = validate_algebra(a);
  if (!report.empty()) return report;
  const auto meet = require_op(a, "meet", 2, report);
  const auto join = require_op(a, "join", 2, report);
  const auto neg = require_op(a, "not", 1, report);
  const auto bot = require_op(a, "bot", 0, report);
  const auto top = require_op(a, "top", 0, report);
  require_exact_signature(a, 5, report);
  if (!report.empty()) return report;

  const int n = a.size();
  const Element b0 = a.apply(*bot), b1 = a.apply(*top);
  auto m = [&](int x, int y) { return a.apply(*meet, x, y); };
  auto j = [&](int x, int y) { return a.apply(*join, x, y); };
  for (int x = 0; x < n; ++x) {
    if (m(x, x) != x || j(x, x) != x) report.push_back("idempotence fails at " + std::to_string(x));
    if (m(x, b1) != x || j(x, b0) != x) report.push_back("bounds fail at " + std::to_string(x));
    const Element c = a.apply(*neg, x);
    if (m(x, c) != b0 || j(x, c) != b1) report.push_back("complement fails at " + std::to_string(x));
    for (int y = 0; y < n && report.empty(); ++y) {
      if (m(x, y) != m(y, x) || j(x, y) != j(y, x)) report.emplace_back("meet or join is not commutative");
      if (m(x, j(x, y)) != x || j(x, m(x, y)) != x) report.emplace_back("absorption fails");
      for (int z = 0; z < n && report.empty(); ++z) {
        if (m(m(x, y), z) != m(x, m(y, z)) || j(j(x, y), z) != j(x, j(y, z))) {
          report.emplace_back("meet or join is not associative");
        }
        if (m(x, j(y, z)) != j(m(x, y), m(x, z))) report.emplace_back("distributivity fails");
      }
    }
    if (!report.empty()) return report;
  }
  return report;
}

std::vector<std::string> validate_group(const FiniteAlgebra& group) {
  std::vector<std::string> report = validate_algebra(group);
  if (!report.empty()) return report;
  const auto mul = require_op(group, "mul", 2, report);
  require_exact_signature(group, 1, report);
  if (!report.empty()) return report;
  const int n = group.size();
  const auto props = check_properties(group, "mul");
  if (!props.associative) report.emplace_back("group operation is not associative");
  std::optional<Element> e;
  for (int x = 0; x < n && !e; ++x) {
    bool neutral = true;
    for (int y = 0; y < n && neutral; ++y) neutral = group.apply(*mul, x, y) == y && group.apply(*mul, y, x) == y;
    if (neutral) e = x;
  }
  if (!e) {
    report.emplace_back("group has no identity");
    return report;
  }
  for (int x = 0; x < n; ++x) {
    bool has_inverse = false;
    for (int y = 0; y < n && !has_inverse; ++y) has_inverse = group.apply(*mul, x, y) == *e;
    if (!has_inverse) report.push_back("element " + std::to_string(x) + " has no inverse");
  }
  return report;
}

std::vector<std::string> validate_gset(const FiniteAlgebra& x, const FiniteAlgebra& group) {
  std::vector<std::string> report = validate_group(group);
  for (auto& msg : report) msg = "group: " + msg;
  if (!report.empty()) return report;
  for (const auto& msg : validate_algebra(x)) report.push_back(msg);
  if (!report.empty()) return report;
  const int m = group.size();
  if (static_cast<int>(x.signature().size()) != m) {
    report.emplace_back("G-set needs one unary operation per group element");
    return report;
  }
  for (const auto& op : x.signature().ops()) {
    if (op.arity != 1) {
      report.push_back("operation " + op.name + " is not unary");
      return report;
    }
  }
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h) {
      const auto gh = sz(group.apply(0, g, h));
      for (int v = 0; v < x.size(); ++v) {
        if (x.apply(gh, v) != x.apply(sz(g), x.apply(sz(h), v))) {
          report.push_back("action is not compatible with mul at (" + std::to_string(g) + ", " + std::to_string(h) +
                           ")");
          return report;
        }
      }
    }
  }
  // Compatibility makes the identity's action idempotent; a group acts by bijections.
  for (int g = 0; g < m; ++g) {
    std::vector<Element> vals = x.table(sz(g));
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
      report.push_back("operation " + x.signature()[sz(g)].name + " is not a bijection");
      return report;
    }
  }
  return report;
}

FiniteAlgebra cyclic_product(const std::vector<int>& orders) {
  int n = 1;
  for (int k : orders) {
    if (k < 1) throw Error("cyclic_product: orders must be positive");
    n *= k;
  }
  auto decode = [&](int x) {
    std::vector<int> c(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      c[i] = x % orders[i];
      x /= orders[i];
    }
    return c;
  };
  auto encode = [&](const std::vector<int>& c) {
    int x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + c[i];
    return x;
  };
  std::vector<Element> add(sz(n * n)), neg(sz(n));
  for (int x = 0; x < n; ++x) {
    const auto cx = decode(x);
    std::vector<int> cn(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) cn[i] = (orders[i] - cx[i]) % orders[i];
    neg[sz(x)] = encode(cn);
    for (int y = 0; y < n; ++y) {
      const auto cy = decode(y);
      std::vector<int> cs(orders.size());
      for (std::size_t i = 0; i < orders.size(); ++i) cs[i] = (cx[i] + cy[i]) % orders[i];
      add[sz(x * n + y)] = encode(cs);
    }
  }
  return FiniteAlgebra(Signature({{"add", 2}, {"neg", 1}, {"zero", 0}}), n, {add, neg, {0}});
}

FiniteAlgebra vector_space(int p, int d) {
  if (!is_prime(p)) throw Error("vector_space: p must be prime");
  if (d < 0) throw Error("vector_space: negative dimension");
  const FiniteAlgebra group = cyclic_product(std::vector<int>(sz(d), p));
  const int n = group.size();
  std::vector<OpSymbol> ops = group.signature().ops();
  std::vector<std::vector<Element>> tables = group.tables();
  for (int k = 0; k < p; ++k) {
    ops.push_back({"s" + std::to_string(k), 1});
    std::vector<Element> t(sz(n));
    for (int x = 0; x < n; ++x) {
      // Scale each base-p digit.
      int y = 0, place = 1, rest = x;
      for (int i = 0; i < d; ++i) {
        y += ((rest % p) * k % p) * place;
        rest /= p;
        place *= p;
      }
      t[sz(x)] = y;
    }
    tables.push_back(t);
  }
  return FiniteAlgebra(Signature(ops), n, tables);
}

FiniteAlgebra boolean_algebra(int atoms) {
  if (atoms < 0 || atoms > 10) throw Error("boolean_algebra: atom count out of range");
  const int n = 1 << atoms;
  std::vector<Element> meet(sz(n * n)), join(sz(n * n)), neg(sz(n));
  for (int x = 0; x < n; ++x) {
    neg[sz(x)] = (n - 1) & ~x;
    for (int y = 0; y < n; ++y) {
      meet[sz(x * n + y)] = x & y;
      join[sz(x * n + y)] = x | y;
    }
  }
  return FiniteAlgebra(Signature({{"meet", 2}, {"join", 2}, {"not", 1}, {"bot", 0}, {"top", 0}}), n,
                       {meet, join, neg, {0}, {n - 1}});
}

FiniteAlgebra cyclic_group(int m) {
  if (m < 1) throw Error("cyclic_group: order must be positive");
  std::vector<Element> t(sz(m * m));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) t[sz(x * m + y)] = (x + y) % m;
  }
  return FiniteAlgebra(Signature({{"mul", 2}}), m, {t});
}

FiniteAlgebra cyclic_gset(int m, const std::vector<int>& orbit_sizes) {
  if (m < 1) throw Error("cyclic_gset: group order must be positive");
  int n = 0;
  for (int k : orbit_sizes) {
    if (k < 1 || m % k != 0) throw Error("cyclic_gset: orbit sizes must divide the group order");
    n += k;
  }
  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  for (int g = 0; g < m; ++g) {
    ops.push_back({"g" + std::to_string(g), 1});
    std::vector<Element> t;
    int base = 0;
    for (int k : orbit_sizes) {
      for (int i = 0; i < k; ++i) t.push_back(base + (i + g) % k);
      base += k;
    }
    tables.push_back(t);
  }
  return FiniteAlgebra(Signature(ops), n, tables);
}

std::vector<std::vector<Element>> gset_orbits(const FiniteAlgebra& x) {
  std::vector<int> parent(sz(x.size()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[sz(v)] != v) v = parent[sz(v)] = parent[sz(parent[sz(v)])];
    return v;
  };
  for (std::size_t op = 0; op < x.signature().size(); ++op) {
    for (int v = 0; v < x.size(); ++v) {
      const int a = find(v), b = find(x.apply(op, v));
      if (a != b) parent[sz(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<std::vector<Element>> orbits;
  std::vector<int> slot(sz(x.size()), -1);
  for (int v = 0; v < x.size(); ++v) {
    const int r = find(v);
    if (slot[sz(r)] < 0) {
      slot[sz(r)] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[sz(slot[sz(r)])].push_back(v);
  }
  return orbits;
}

}  // namespace hfact

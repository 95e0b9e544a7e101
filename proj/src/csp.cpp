#include "csp.hpp"

#include <algorithm>
#include <bit>

namespace hfact::detail {

namespace {

struct State {
  std::vector<std::uint64_t> bits;
  std::vector<int> count;
};

Element single_value(const State& s, int words, int var) {
  if (s.count[static_cast<std::size_t>(var)] != 1) return -1;
  const std::size_t base = static_cast<std::size_t>(var) * static_cast<std::size_t>(words);
  for (int w = 0; w < words; ++w) {
    const std::uint64_t bits = s.bits[base + static_cast<std::size_t>(w)];
    if (bits) return w * 64 + std::countr_zero(bits);
  }
  return -1;
}

}  // namespace

class Propagation {
 public:
  Propagation(const Csp& csp, State& s) : csp_(csp), s_(s), queued_(s.count.size(), 0) {}

  [[nodiscard]] bool has(int var, Element v) const {
    return (word(var, v) >> (v & 63)) & 1u;
  }
  [[nodiscard]] Element single(int var) const { return single_value(s_, csp_.words_, var); }

  // Each returns false when a domain becomes empty.
  bool remove(int var, Element v) {
    if (!has(var, v)) return true;
    word(var, v) &= ~(std::uint64_t{1} << (v & 63));
    return changed(var);
  }

  bool assign(int var, Element v) {
    if (!has(var, v)) return wipe(var);
    if (s_.count[static_cast<std::size_t>(var)] == 1) return true;
    const std::size_t base = static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_);
    for (int w = 0; w < csp_.words_; ++w) s_.bits[base + static_cast<std::size_t>(w)] = 0;
    word(var, v) = std::uint64_t{1} << (v & 63);
    return changed(var);
  }

  template <typename Keep>
  bool filter(int var, Keep&& keep) {
    bool any = false;
    const std::size_t base = static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_);
    for (int w = 0; w < csp_.words_; ++w) {
      std::uint64_t bitsw = s_.bits[base + static_cast<std::size_t>(w)];
      std::uint64_t rest = bitsw;
      while (rest) {
        const int b = std::countr_zero(rest);
        rest &= rest - 1;
        if (!keep(w * 64 + b)) {
          bitsw &= ~(std::uint64_t{1} << b);
          any = true;
        }
      }
      s_.bits[base + static_cast<std::size_t>(w)] = bitsw;
    }
    return any ? changed(var) : true;
  }

  bool run_all() {
    for (std::size_t v = 0; v < s_.count.size(); ++v) enqueue(static_cast<int>(v));
    return drain();
  }

  bool run_from(int var) {
    enqueue(var);
    return drain();
  }

 private:
  std::uint64_t& word(int var, Element v) {
    return s_.bits[static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_) + static_cast<std::size_t>(v >> 6)];
  }
  [[nodiscard]] std::uint64_t word(int var, Element v) const {
    return s_.bits[static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_) + static_cast<std::size_t>(v >> 6)];
  }

  bool wipe(int var) {
    s_.count[static_cast<std::size_t>(var)] = 0;
    return false;
  }

  bool changed(int var) {
    int c = 0;
    const std::size_t base = static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_);
    for (int w = 0; w < csp_.words_; ++w) c += std::popcount(s_.bits[base + static_cast<std::size_t>(w)]);
    s_.count[static_cast<std::size_t>(var)] = c;
    if (c == 0) return false;
    enqueue(var);
    return true;
  }

  void enqueue(int var) {
    if (queued_[static_cast<std::size_t>(var)]) return;
    queued_[static_cast<std::size_t>(var)] = 1;
    queue_.push_back(var);
  }

  bool drain() {
    while (head_ < queue_.size()) {
      const int var = queue_[head_++];
      queued_[static_cast<std::size_t>(var)] = 0;
      if (!process(var)) return false;
    }
    return true;
  }

  bool check_tuple(const Csp::Block& b, int op, std::uint32_t t) {
    const FiniteAlgebra& src = *b.src;
    const FiniteAlgebra& dst = *b.dst;
    const int arity = src.signature()[static_cast<std::size_t>(op)].arity;
    const int n = src.size();
    args_.resize(static_cast<std::size_t>(arity));
    vals_.resize(static_cast<std::size_t>(arity));
    std::uint32_t rest = t;
    for (int i = arity - 1; i >= 0; --i) {
      args_[static_cast<std::size_t>(i)] = static_cast<Element>(rest % static_cast<std::uint32_t>(n));
      rest /= static_cast<std::uint32_t>(n);
    }
    int free_var = -1;
    for (int i = 0; i < arity; ++i) {
      const int var = b.offset + args_[static_cast<std::size_t>(i)];
      const Element v = single(var);
      if (v >= 0) {
        vals_[static_cast<std::size_t>(i)] = v;
      } else if (free_var == -1 || free_var == var) {
        free_var = var;
        vals_[static_cast<std::size_t>(i)] = -1;
      } else {
        return true;  // two or more unassigned arguments
      }
    }
    const int result_var = b.offset + src.table(static_cast<std::size_t>(op))[t];
    const auto& dst_table = dst.table(static_cast<std::size_t>(op));
    if (free_var == -1) return assign(result_var, dst.apply(static_cast<std::size_t>(op), vals_));

    // One unassigned argument (possibly repeated): keep the values whose
    // product lands inside the result's domain.
    const int m = dst.size();
    return filter(free_var, [&](Element a) {
      std::size_t idx = 0;
      for (int i = 0; i < arity; ++i) {
        const Element v = vals_[static_cast<std::size_t>(i)] < 0 ? a : vals_[static_cast<std::size_t>(i)];
        idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(v);
      }
      return has(result_var, dst_table[idx]);
    });
  }

  bool process(int var) {
    const int bi = csp_.var_block_[static_cast<std::size_t>(var)];
    const Csp::Block& b = csp_.blocks_[static_cast<std::size_t>(bi)];
    const Element x = var - b.offset;

    for (std::size_t k = 0; k < b.unary_ops.size(); ++k) {
      const auto op = static_cast<std::size_t>(b.unary_ops[k]);
      const auto& st = b.src->table(op);
      const auto& dt = b.dst->table(op);
      const int res = b.offset + st[static_cast<std::size_t>(x)];
      // Image of the domain of x.
      support_.assign(static_cast<std::size_t>(b.dst->size()), 0);
      forEach(var, [&](Element a) { support_[static_cast<std::size_t>(dt[static_cast<std::size_t>(a)])] = 1; });
      if (!filter(res, [&](Element a) { return support_[static_cast<std::size_t>(a)] != 0; })) return false;
      // Preimages of x must map into the domain of x.
      for (Element y : b.unary_inverse[k][static_cast<std::size_t>(x)]) {
        if (!filter(b.offset + y, [&](Element a) { return has(var, dt[static_cast<std::size_t>(a)]); })) return false;
      }
    }

    for (const auto& ref : b.occurrences[static_cast<std::size_t>(x)]) {
      if (!check_tuple(b, ref.op, ref.tuple)) return false;
    }

    const Element value = single(var);
    for (const auto& ch : csp_.channels_) {
      if (ch.g_block == bi && value >= 0) {
        const int hvar = csp_.blocks_[static_cast<std::size_t>(ch.h_block)].offset + value;
        if (!assign(hvar, ch.target[static_cast<std::size_t>(x)])) return false;
      }
      if (ch.h_block == bi) {
        const Csp::Block& gb = csp_.blocks_[static_cast<std::size_t>(ch.g_block)];
        for (Element xs = 0; xs < gb.src->size(); ++xs) {
          const int gvar = gb.offset + xs;
          if (has(gvar, x) && !has(var, ch.target[static_cast<std::size_t>(xs)])) {
            if (!remove(gvar, x)) return false;
          }
        }
      }
    }

    if (b.idempotent) {
      if (value >= 0 && !assign(b.offset + value, value)) return false;
      if (!has(var, x)) {
        for (Element w = 0; w < b.src->size(); ++w) {
          if (!remove(b.offset + w, x)) return false;
        }
      }
    }

    if (b.injective && value >= 0) {
      for (Element w = 0; w < b.src->size(); ++w) {
        if (w != x && !remove(b.offset + w, value)) return false;
      }
    }
    return true;
  }

  template <typename Fn>
  void forEach(int var, Fn&& fn) const {
    const std::size_t base = static_cast<std::size_t>(var) * static_cast<std::size_t>(csp_.words_);
    for (int w = 0; w < csp_.words_; ++w) {
      std::uint64_t rest = s_.bits[base + static_cast<std::size_t>(w)];
      while (rest) {
        const int b = std::countr_zero(rest);
        rest &= rest - 1;
        fn(w * 64 + b);
      }
    }
  }

  const Csp& csp_;
  State& s_;
  std::vector<char> queued_;
  std::vector<int> queue_;
  std::size_t head_ = 0;
  std::vector<Element> args_;
  std::vector<Element> vals_;
  std::vector<char> support_;
};

int Csp::add_block(const FiniteAlgebra& src, const FiniteAlgebra& dst) {
  Block b;
  b.src = &src;
  b.dst = &dst;
  b.offset = static_cast<int>(var_block_.size());
  const int n = src.size();
  b.occurrences.resize(static_cast<std::size_t>(n));
  for (std::size_t op = 0; op < src.signature().size(); ++op) {
    const int arity = src.signature()[op].arity;
    const auto& t = src.table(op);
    if (arity == 1) {
      b.unary_ops.push_back(static_cast<int>(op));
      std::vector<std::vector<Element>> inv(static_cast<std::size_t>(n));
      for (Element y = 0; y < n; ++y) inv[static_cast<std::size_t>(t[static_cast<std::size_t>(y)])].push_back(y);
      b.unary_inverse.push_back(std::move(inv));
    } else if (arity >= 2) {
      std::uint32_t idx = 0;
      for_each_tuple(n, arity, [&](std::span<const Element> args) {
        std::vector<Element> seen;
        for (Element a : args) {
          if (std::find(seen.begin(), seen.end(), a) == seen.end()) {
            seen.push_back(a);
            b.occurrences[static_cast<std::size_t>(a)].push_back({static_cast<int>(op), idx});
          }
        }
        const Element r = t[idx];
        if (std::find(seen.begin(), seen.end(), r) == seen.end()) {
          b.occurrences[static_cast<std::size_t>(r)].push_back({static_cast<int>(op), idx});
        }
        ++idx;
      });
    }
  }
  const int id = static_cast<int>(blocks_.size());
  for (int i = 0; i < n; ++i) var_block_.push_back(id);
  restrictions_.resize(var_block_.size());
  forbidden_.resize(var_block_.size());
  words_ = std::max(words_, (dst.size() + 63) / 64);
  blocks_.push_back(std::move(b));

  // Constants are forced outright.
  for (std::size_t op = 0; op < src.signature().size(); ++op) {
    if (src.signature()[op].arity == 0) fix(id, src.apply(op), dst.apply(op));
  }
  return id;
}

void Csp::restrict(int block, Element x, const std::vector<Element>& allowed) {
  auto& r = restrictions_[static_cast<std::size_t>(blocks_[static_cast<std::size_t>(block)].offset + x)];
  std::vector<Element> sorted(allowed);
  std::sort(sorted.begin(), sorted.end());
  if (r.empty() && !sorted.empty()) {
    r = std::move(sorted);
    return;
  }
  std::vector<Element> both;
  std::set_intersection(r.begin(), r.end(), sorted.begin(), sorted.end(), std::back_inserter(both));
  // An empty intersection is recorded with a sentinel so the domain starts empty.
  r = both.empty() ? std::vector<Element>{-1} : std::move(both);
}

void Csp::forbid(int block, Element x, Element value) {
  forbidden_[static_cast<std::size_t>(blocks_[static_cast<std::size_t>(block)].offset + x)].push_back(value);
}

void Csp::add_channel(int g_block, int h_block, std::vector<Element> target) {
  channels_.push_back({g_block, h_block, std::move(target)});
}

void Csp::add_idempotent(int block) { blocks_[static_cast<std::size_t>(block)].idempotent = true; }
void Csp::add_injective(int block) { blocks_[static_cast<std::size_t>(block)].injective = true; }

Csp::Stats Csp::solve(const SearchConfig& cfg,
                      const std::function<bool(const std::vector<std::vector<Element>>&)>& on_solution) const {
  const std::size_t nvars = var_block_.size();
  State root;
  root.bits.assign(nvars * static_cast<std::size_t>(words_), 0);
  root.count.assign(nvars, 0);
  for (std::size_t v = 0; v < nvars; ++v) {
    const Block& b = blocks_[static_cast<std::size_t>(var_block_[v])];
    const int m = b.dst->size();
    auto set = [&](Element a) {
      if (a < 0 || a >= m) return;
      auto& w = root.bits[v * static_cast<std::size_t>(words_) + static_cast<std::size_t>(a >> 6)];
      w |= std::uint64_t{1} << (a & 63);
    };
    if (restrictions_[v].empty()) {
      for (Element a = 0; a < m; ++a) set(a);
    } else {
      for (Element a : restrictions_[v]) set(a);
    }
    for (Element a : forbidden_[v]) {
      if (a >= 0 && a < m) root.bits[v * static_cast<std::size_t>(words_) + static_cast<std::size_t>(a >> 6)] &= ~(std::uint64_t{1} << (a & 63));
    }
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount(root.bits[v * static_cast<std::size_t>(words_) + static_cast<std::size_t>(w)]);
    root.count[v] = c;
  }

  Stats stats;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (root.count[v] == 0) return stats;
  }
  if (nvars > 0) {
    Propagation p(*this, root);
    if (!p.run_all()) return stats;
  }

  std::vector<std::vector<Element>> values(blocks_.size());
  auto emit = [&](const State& s) {
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
      const Block& b = blocks_[bi];
      values[bi].resize(static_cast<std::size_t>(b.src->size()));
      for (Element x = 0; x < b.src->size(); ++x) values[bi][static_cast<std::size_t>(x)] = single_value(s, words_, b.offset + x);
    }
    return on_solution(values);
  };

  // Returns true to stop.
  std::function<bool(const State&)> dfs = [&](const State& s) -> bool {
    int chosen = -1;
    for (std::size_t v = 0; v < nvars; ++v) {
      const int c = s.count[v];
      if (c <= 1) continue;
      if (cfg.order == VariableOrder::lexicographic) {
        chosen = static_cast<int>(v);
        break;
      }
      if (chosen == -1 || c < s.count[static_cast<std::size_t>(chosen)]) chosen = static_cast<int>(v);
      if (c == 2) break;
    }
    if (chosen == -1) return emit(s);

    const std::size_t base = static_cast<std::size_t>(chosen) * static_cast<std::size_t>(words_);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t rest = s.bits[base + static_cast<std::size_t>(w)];
      while (rest) {
        const int bit = std::countr_zero(rest);
        rest &= rest - 1;
        if (cfg.node_limit && stats.nodes >= *cfg.node_limit) {
          stats.aborted = true;
          return true;
        }
        ++stats.nodes;
        State child = s;
        Propagation p(*this, child);
        if (p.assign(chosen, w * 64 + bit) && p.run_from(chosen)) {
          if (dfs(child)) return true;
        }
      }
    }
    return false;
  };
  dfs(root);
  return stats;
}

}  // namespace hfact::detail

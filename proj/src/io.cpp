#include "hfact/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hfact {

namespace {

struct Token {
  std::string text;
  int line = 0;
};

class Tokens {
 public:
  explicit Tokens(std::string_view text) {
    int line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char ch = text[i];
      if (ch == '\n') {
        ++line;
        ++i;
      } else if (ch == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
      } else {
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') ++i;
        tokens_.push_back(Token{std::string(text.substr(start, i - start)), line});
      }
    }
  }

  [[nodiscard]] bool done() const { return pos_ >= tokens_.size(); }
  [[nodiscard]] const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const int line = done() ? (tokens_.empty() ? 1 : tokens_.back().line) : tokens_[pos_].line;
    throw ParseError("line " + std::to_string(line) + ": " + msg);
  }

  std::string word(const char* what) {
    if (done()) fail(std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++].text;
  }

  void expect(const std::string& keyword) {
    if (done() || tokens_[pos_].text != keyword) fail("expected '" + keyword + "'");
    ++pos_;
  }

  long long integer(const char* what, long long lo, long long hi) {
    if (done()) fail(std::string("unexpected end of input, expected ") + what);
    const std::string& s = tokens_[pos_].text;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(std::string("expected integer ") + what + ", got '" + s + "'");
    if (v < lo || v > hi) {
      fail(std::string(what) + " " + s + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    ++pos_;
    return v;
  }

  void finish() {
    if (!done()) fail("unexpected trailing token '" + tokens_[pos_].text + "'");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

constexpr long long kMaxSize = 1 << 20;
constexpr long long kMaxTable = 1LL << 26;

}  // namespace

std::string write_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  const int n = a.size();
  out << "algebra " << n << '\n';
  if (!a.labels().empty()) {
    out << "labels";
    for (const auto& l : a.labels()) out << ' ' << l;
    out << '\n';
  }
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const auto& sym = a.signature()[op];
    out << "op " << sym.name << ' ' << sym.arity << '\n';
    const auto& t = a.table(op);
    const std::size_t row = sym.arity == 0 ? 1 : static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < t.size(); ++i) {
      out << t[i] << ((i + 1) % row == 0 ? '\n' : ' ');
    }
  }
  return out.str();
}

FiniteAlgebra parse_algebra(std::string_view text) {
  Tokens tk(text);
  tk.expect("algebra");
  const int n = static_cast<int>(tk.integer("size", 1, kMaxSize));
  std::vector<std::string> labels;
  if (tk.peek() && tk.peek()->text == "labels") {
    tk.word("labels");
    for (int i = 0; i < n; ++i) labels.push_back(tk.word("label"));
  }
  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  while (!tk.done()) {
    tk.expect("op");
    OpSymbol sym;
    sym.name = tk.word("operation name");
    for (const auto& other : ops) {
      if (other.name == sym.name) tk.fail("duplicate operation " + sym.name);
    }
    sym.arity = static_cast<int>(tk.integer("arity", 0, 16));
    long long entries = 1;
    for (int i = 0; i < sym.arity; ++i) {
      entries *= n;
      if (entries > kMaxTable) tk.fail("table of " + sym.name + " too large");
    }
    std::vector<Element> t;
    t.reserve(static_cast<std::size_t>(entries));
    for (long long i = 0; i < entries; ++i) {
      if (!tk.peek() || tk.peek()->text == "op") tk.fail("table of " + sym.name + " has too few entries");
      t.push_back(static_cast<Element>(tk.integer("table entry", 0, n - 1)));
    }
    ops.push_back(sym);
    tables.push_back(std::move(t));
  }
  FiniteAlgebra a(Signature(ops), n, std::move(tables), std::move(labels));
  const auto report = validate_algebra(a);
  if (!report.empty()) throw ParseError("invalid algebra: " + report.front());
  return a;
}

std::string write_mapping(const Mapping& m) {
  std::ostringstream out;
  out << "map " << m.dom_size() << ' ' << m.cod_size() << '\n';
  for (std::size_t i = 0; i < m.values().size(); ++i) {
    out << m.values()[i] << (i + 1 == m.values().size() ? "\n" : " ");
  }
  return out.str();
}

Mapping parse_mapping(std::string_view text) {
  Tokens tk(text);
  tk.expect("map");
  const int dom = static_cast<int>(tk.integer("domain size", 1, kMaxSize));
  const int cod = static_cast<int>(tk.integer("codomain size", 1, kMaxSize));
  std::vector<Element> values;
  for (int i = 0; i < dom; ++i) values.push_back(static_cast<Element>(tk.integer("value", 0, cod - 1)));
  tk.finish();
  return Mapping(cod, values);
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << (g.directed() ? "directed" : "undirected") << ' ' << g.order() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph(std::string_view text) {
  Tokens tk(text);
  tk.expect("graph");
  const std::string kind = tk.word("directed or undirected");
  if (kind != "directed" && kind != "undirected") tk.fail("graph kind must be directed or undirected");
  const int n = static_cast<int>(tk.integer("vertex count", 0, 4096));
  std::vector<Edge> edges;
  while (!tk.done()) {
    tk.expect("e");
    const int u = static_cast<int>(tk.integer("endpoint", 0, n - 1));
    const int v = static_cast<int>(tk.integer("endpoint", 0, n - 1));
    edges.emplace_back(u, v);
  }
  return Graph(kind == "directed", n, edges);
}

std::string write_legend(const Legend& legend) {
  std::ostringstream out;
  out << "legend " << to_string(legend.kind) << ' ' << legend.entries.size() << '\n';
  for (std::size_t i = 0; i < legend.entries.size(); ++i) {
    const auto& e = legend.entries[i];
    out << "elem " << i << ' ' << to_string(e.role);
    if (e.role == Role::dist || e.role == Role::chain) out << ' ' << e.name;
    for (int p : e.params) out << ' ' << p;
    out << '\n';
  }
  return out.str();
}

Legend parse_legend(std::string_view text) {
  Tokens tk(text);
  tk.expect("legend");
  Legend legend;
  const std::string kind = tk.word("legend kind");
  const auto k = parse_legend_kind(kind);
  if (!k) tk.fail("unknown legend kind '" + kind + "'");
  legend.kind = *k;
  const int n = static_cast<int>(tk.integer("element count", 1, kMaxSize));
  for (int i = 0; i < n; ++i) {
    tk.expect("elem");
    tk.integer("element index", i, i);
    const std::string role = tk.word("role");
    const auto r = parse_role(role);
    if (!r) tk.fail("unknown role '" + role + "'");
    LegendEntry e;
    e.role = *r;
    if (e.role == Role::dist || e.role == Role::chain) e.name = tk.word("name");
    while (tk.peek() && tk.peek()->text != "elem") e.params.push_back(static_cast<int>(tk.integer("parameter", 0, kMaxSize)));
    legend.entries.push_back(std::move(e));
  }
  tk.finish();
  const auto report = validate_legend(legend);
  if (!report.empty()) throw ParseError("invalid legend: " + report.front());
  return legend;
}

std::string write_manifest(const Manifest& m) {
  std::ostringstream out;
  out << "instance " << to_string(m.kind) << '\n';
  for (const char* key : {"X", "Y", "Z", "f", "g", "h", "LX", "LY", "LZ"}) {
    if (auto it = m.paths.find(key); it != m.paths.end()) out << key << ' ' << it->second << '\n';
  }
  return out.str();
}

Manifest parse_manifest(std::string_view text) {
  Tokens tk(text);
  tk.expect("instance");
  Manifest m;
  const std::string kind = tk.word("problem kind");
  const auto k = parse_problem_kind(kind);
  if (!k) tk.fail("unknown problem kind '" + kind + "'");
  m.kind = *k;
  static const std::vector<std::string> keys = {"X", "Y", "Z", "f", "g", "h", "LX", "LY", "LZ"};
  while (!tk.done()) {
    const std::string key = tk.word("key");
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) tk.fail("unknown manifest key '" + key + "'");
    if (m.paths.count(key)) tk.fail("duplicate manifest key '" + key + "'");
    m.paths[key] = tk.word("path");
  }
  if (!m.paths.count("X") || !m.paths.count("Y")) throw ParseError("manifest must name X and Y");
  return m;
}

LoadedInstance load_instance(const std::filesystem::path& manifest) {
  const Manifest m = parse_manifest(read_text_file(manifest));
  const auto base = manifest.parent_path();
  auto path = [&](const std::string& key) { return base / m.paths.at(key); };
  LoadedInstance out;
  out.instance.kind = m.kind;
  out.instance.x = read_algebra(path("X"));
  out.instance.y = read_algebra(path("Y"));
  if (m.paths.count("Z")) out.instance.z = read_algebra(path("Z"));
  if (m.paths.count("f")) out.instance.f = read_mapping(path("f"));
  if (m.paths.count("g")) out.instance.g = read_mapping(path("g"));
  if (m.paths.count("h")) out.instance.h = read_mapping(path("h"));
  for (const char* key : {"X", "Y", "Z"}) {
    const std::string lkey = std::string("L") + key;
    if (m.paths.count(lkey)) out.legends[key] = read_legend(path(lkey));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

namespace {

template <typename Parse>
auto read_with(const std::filesystem::path& path, Parse parse) {
  try {
    return parse(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

FiniteAlgebra read_algebra(const std::filesystem::path& path) { return read_with(path, parse_algebra); }
Mapping read_mapping(const std::filesystem::path& path) { return read_with(path, parse_mapping); }
Graph read_graph(const std::filesystem::path& path) { return read_with(path, parse_graph); }
Legend read_legend(const std::filesystem::path& path) { return read_with(path, parse_legend); }

}  // namespace hfact

#pragma once

// Plain-text formats. Tokens are whitespace separated; '#' starts a comment
// that runs to the end of the line. Writers emit a trailing newline.
//
//   algebra <n>
//   labels <l0> ... <l{n-1}>             (optional)
//   op <name> <arity> <n^arity entries>  (one per operation, lexicographic tuples)
//
//   map <dom> <cod> <dom entries>
//
//   graph <directed|undirected> <n>
//   e <u> <v>                            (undirected edges listed once)
//
//   legend <kind> <n>
//   elem <i> <role> [name] [params]      (name only for dist and chain roles)
//
//   instance <kind>
//   X <path>  Y <path>  Z <path>  f <path>  g <path>  h <path>
//   LX <path> LY <path> LZ <path>        (optional legends)
//
// Manifest paths are relative to the manifest's directory.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hfact/algebra.hpp"
#include "hfact/encodings.hpp"
#include "hfact/graph.hpp"
#include "hfact/solver.hpp"

namespace hfact {

/// Parse failures carry the offending line number in the message.
class ParseError : public Error {
 public:
  using Error::Error;
};

std::string write_algebra(const FiniteAlgebra& a);
FiniteAlgebra parse_algebra(std::string_view text);

std::string write_mapping(const Mapping& m);
Mapping parse_mapping(std::string_view text);

std::string write_graph(const Graph& g);
Graph parse_graph(std::string_view text);

std::string write_legend(const Legend& legend);
Legend parse_legend(std::string_view text);

struct Manifest {
  ProblemKind kind = ProblemKind::hom;
  std::map<std::string, std::string> paths;  // key -> path as written
};

std::string write_manifest(const Manifest& m);
Manifest parse_manifest(std::string_view text);

struct LoadedInstance {
  FactorizationInstance instance;
  std::map<std::string, Legend> legends;  // "X", "Y", "Z" when present
};

/// Reads a manifest and every file it names. Throws ParseError or Error.
LoadedInstance load_instance(const std::filesystem::path& manifest);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

FiniteAlgebra read_algebra(const std::filesystem::path& path);
Mapping read_mapping(const std::filesystem::path& path);
Graph read_graph(const std::filesystem::path& path);
Legend read_legend(const std::filesystem::path& path);

}  // namespace hfact

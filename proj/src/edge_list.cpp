#include "resnet/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace resnet {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

RootedGraph EdgeListFile::rooted() const {
  if (!root) throw std::invalid_argument("edge list declares no root");
  return RootedGraph(graph, *root);
}

namespace {

std::uint64_t parse_count(const std::string& token, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, "expected a nonnegative integer, got '" + token + "'");
  return value;
}

}  // namespace

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  bool have_n = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;

    if (words[0] == "n") {
      if (have_n) throw ParseError(line, "duplicate 'n' header");
      if (words.size() != 2) throw ParseError(line, "expected 'n <count>'");
      file.graph = Multigraph(parse_count(words[1], line));
      have_n = true;
      continue;
    }
    if (!have_n) throw ParseError(line, "missing 'n <count>' header before edges");
    if (words[0] == "root") {
      if (words.size() != 2) throw ParseError(line, "expected 'root <id>'");
      if (file.root) throw ParseError(line, "duplicate 'root' line");
      const Vertex r = parse_count(words[1], line);
      if (r >= file.graph.num_vertices()) throw ParseError(line, "root id out of range");
      file.root = r;
      continue;
    }
    if (words.size() != 2 && words.size() != 3)
      throw ParseError(line, "expected 'u v [mult]'");
    const Vertex u = parse_count(words[0], line);
    const Vertex v = parse_count(words[1], line);
    const std::uint64_t k = words.size() == 3 ? parse_count(words[2], line) : 1;
    if (k == 0) throw ParseError(line, "multiplicity must be positive");
    if (k > UINT32_MAX) throw ParseError(line, "multiplicity too large");
    if (u >= file.graph.num_vertices() || v >= file.graph.num_vertices())
      throw ParseError(line, "vertex id out of range");
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    file.graph.add_edge(u, v, static_cast<Multiplicity>(k));
  }
  if (!have_n) throw ParseError(line == 0 ? 1 : line, "missing 'n <count>' header");
  return file;
}

EdgeListFile read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Multigraph& g, std::optional<Vertex> root) {
  out << "n " << g.num_vertices() << '\n';
  if (root) out << "root " << *root << '\n';
  for (const auto& [uv, k] : g.pairs()) out << uv.first << ' ' << uv.second << ' ' << k << '\n';
}

void write_edge_list(std::ostream& out, const RootedGraph& g) {
  write_edge_list(out, g.graph(), g.root());
}

}  // namespace resnet

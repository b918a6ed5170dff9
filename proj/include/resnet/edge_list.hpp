#ifndef RESNET_EDGE_LIST_HPP
#define RESNET_EDGE_LIST_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "resnet/multigraph.hpp"

namespace resnet {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what);
  /// 1-based line number of the offending input line.
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct EdgeListFile {
  Multigraph graph;
  std::optional<Vertex> root;

  RootedGraph rooted() const;
};

/// Reads the text format:
///
///   # comment
///   n 4
///   root 0        (optional)
///   0 1 2         (u v multiplicity; multiplicity defaults to 1)
///
/// Repeated pairs accumulate.
EdgeListFile read_edge_list(std::istream& in);
EdgeListFile read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Multigraph& g,
                     std::optional<Vertex> root = std::nullopt);
void write_edge_list(std::ostream& out, const RootedGraph& g);

}  // namespace resnet

#endif  // RESNET_EDGE_LIST_HPP

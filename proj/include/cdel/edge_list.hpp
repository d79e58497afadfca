#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cdel/graph.hpp"

namespace cdel {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Edge-list text: optional `p <n> <m>` header, one `u v` pair per line,
// `#` starts a comment, vertices 0-based. Without a header n = max id + 1.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_string(const std::string& text);
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment = {});
std::string format_edge_list(const Graph& g, const std::string& comment = {});

}  // namespace cdel

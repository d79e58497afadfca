#include "cdel/edge_list.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace cdel {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

long long parse_count(const std::string& token, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  }
  if (used != token.size() || value < 0) throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::optional<long long> declared_n;
  long long declared_m = 0;
  int header_line = 0;
  std::vector<std::pair<Edge, int>> edges;
  long long max_id = -1;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    if (tokens[0] == "p") {
      if (declared_n || !edges.empty()) throw ParseError(line, "header must precede all edges and appear once");
      if (tokens.size() != 3) throw ParseError(line, "header must be 'p <n> <m>'");
      declared_n = parse_count(tokens[1], line);
      declared_m = parse_count(tokens[2], line);
      header_line = line;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line, "expected 'u v', got " + std::to_string(tokens.size()) + " fields");
    const long long a = parse_count(tokens[0], line);
    const long long b = parse_count(tokens[1], line);
    if (a == b) throw ParseError(line, "self-loop on vertex " + std::to_string(a));
    if (declared_n && (a >= *declared_n || b >= *declared_n))
      throw ParseError(line, "vertex id exceeds declared n = " + std::to_string(*declared_n));
    if (std::max(a, b) > 1'000'000) throw ParseError(line, "vertex id too large");
    max_id = std::max({max_id, a, b});
    edges.emplace_back(Edge(static_cast<VertexId>(a), static_cast<VertexId>(b)), line);
  }

  const long long n = declared_n ? *declared_n : max_id + 1;
  Graph g(static_cast<int>(n));
  for (const auto& [e, at] : edges) {
    if (g.has_edge(e)) throw ParseError(at, "duplicate edge " + to_string(e));
    g.add_edge(e.a, e.b);
  }
  if (declared_n && static_cast<long long>(g.edge_count()) != declared_m)
    throw ParseError(header_line, "header declares " + std::to_string(declared_m) + " edges, file lists " +
                                      std::to_string(g.edge_count()));
  return g;
}

Graph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment) {
  std::istringstream lines(comment);
  for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
}

std::string format_edge_list(const Graph& g, const std::string& comment) {
  std::ostringstream out;
  write_edge_list(out, g, comment);
  return out.str();
}

}  // namespace cdel

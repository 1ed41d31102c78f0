#include "flipwide/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "flipwide/errors.hpp"

namespace flipwide {

namespace {

// Strips comments and surrounding whitespace; returns false for blank lines.
bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::string at_line(std::size_t line_no) { return " (line " + std::to_string(line_no) + ")"; }

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw InputError("edge list: missing header");

  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0)
      throw InputError("edge list: header must be \"n m\"" + at_line(line_no));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<Edge> seen;
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra))
      throw InputError("edge list: expected \"u v\"" + at_line(line_no));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge list: vertex id out of range" + at_line(line_no));
    if (u == v) throw InputError("edge list: self-loop" + at_line(line_no));
    Edge e{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
    if (!seen.insert(e).second) throw InputError("edge list: duplicate edge" + at_line(line_no));
    edges.push_back(e);
  }
  if (static_cast<long long>(edges.size()) != m)
    throw InputError("edge list: header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

std::uint64_t graph_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<Vertex> read_id_list(std::istream& in) {
  std::vector<Vertex> ids;
  std::string line;
  std::size_t line_no = 0;
  while (next_content_line(in, line, line_no)) {
    std::istringstream row(line);
    long long id = -1;
    while (row >> id) {
      if (id < 0) throw InputError("id list: negative id" + at_line(line_no));
      ids.push_back(static_cast<Vertex>(id));
    }
    if (!row.eof()) throw InputError("id list: malformed entry" + at_line(line_no));
  }
  return ids;
}

}  // namespace flipwide

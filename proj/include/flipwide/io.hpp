#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "flipwide/graph.hpp"

namespace flipwide {

/// Reads the edge-list text format: a header line "n m" followed by m lines
/// "u v" with 0-based ids. Blank lines and '#' comments are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

/// Writes the canonical form: header, then edges (u < v) in lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

/// 64-bit FNV-1a digest of the canonical edge-list text.
std::uint64_t graph_digest(const Graph& g);

/// Reads a newline-separated list of vertex ids (comments allowed).
std::vector<Vertex> read_id_list(std::istream& in);

}  // namespace flipwide

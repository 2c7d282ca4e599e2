#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "m2wis/graph.hpp"

namespace m2wis {

// Malformed graph or solution text. The message names the line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node-weighted METIS: header "n m [fmt]" with fmt 10 (weights) or 0 / absent
// (unit weights), then one line per vertex listing its weight (fmt 10) and its
// 1-indexed neighbors. Lines starting with '%' are comments.
WeightedGraph parse_metis(std::string_view text);
WeightedGraph read_metis_file(const std::string& path);

// Writes the live part of the graph with fmt 10. Alive vertices are renumbered
// in increasing id order; `mapping`, when given, receives the old id of every
// written vertex.
std::string write_metis(const WeightedGraph& g, std::vector<VertexId>* mapping = nullptr);

// One 0-indexed vertex id per line, ascending.
std::string write_solution(const VertexSet& solution);

// Parses a solution file. Order and duplicates are preserved so callers can
// report them.
std::vector<VertexId> parse_solution(std::string_view text);
std::vector<VertexId> read_solution_file(const std::string& path);

std::string read_text_file(const std::string& path);

// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace m2wis

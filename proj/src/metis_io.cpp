#include "m2wis/metis_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace m2wis {
namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next line that is not a comment. Returns false at end of input.
  bool next(std::string_view& line) {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) {
        // A trailing newline does not start another line.
        return false;
      }
      const std::size_t end = std::min(text_.find('\n', pos_), text_.size());
      line = text_.substr(pos_, end - pos_);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      pos_ = end + 1;
      ++number_;
      if (!line.empty() && line.front() == '%') continue;
      return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

std::vector<std::int64_t> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    std::int64_t value = 0;
    const auto* first = line.data() + i;
    const auto* last = line.data() + j;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw FormatError("line " + std::to_string(line_no) + ": non-integer token '" +
                        std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace

WeightedGraph parse_metis(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<std::int64_t> header;
  while (header.empty()) {
    if (!reader.next(line)) throw FormatError("missing header line");
    header = tokenize(line, reader.number());
  }
  if (header.size() < 2 || header.size() > 3) {
    throw FormatError("line " + std::to_string(reader.number()) +
                      ": header must be 'n m [fmt]'");
  }
  const std::int64_t n = header[0];
  const std::int64_t m = header[1];
  const std::int64_t fmt = header.size() == 3 ? header[2] : 0;
  if (n < 0 || m < 0) throw FormatError("header: negative vertex or edge count");
  if (fmt != 0 && fmt != 10) {
    throw FormatError("header: unsupported fmt " + std::to_string(fmt) +
                      " (only 0 and 10 are accepted)");
  }
  const bool weighted = fmt == 10;

  std::vector<Weight> weights(static_cast<std::size_t>(n), 1);
  std::vector<std::vector<VertexId>> lists(static_cast<std::size_t>(n));
  std::size_t entries = 0;
  for (std::int64_t v = 0; v < n; ++v) {
    if (!reader.next(line)) {
      throw FormatError("expected " + std::to_string(n) + " vertex lines, found " +
                        std::to_string(v));
    }
    const auto tokens = tokenize(line, reader.number());
    std::size_t first = 0;
    if (weighted) {
      if (tokens.empty()) {
        throw FormatError("line " + std::to_string(reader.number()) + ": missing vertex weight");
      }
      if (tokens[0] < 0) {
        throw FormatError("line " + std::to_string(reader.number()) + ": negative weight");
      }
      weights[v] = tokens[0];
      first = 1;
    }
    for (std::size_t t = first; t < tokens.size(); ++t) {
      const std::int64_t u = tokens[t];
      if (u < 1 || u > n) {
        throw FormatError("line " + std::to_string(reader.number()) + ": neighbor " +
                          std::to_string(u) + " out of range");
      }
      if (u - 1 == v) {
        throw FormatError("line " + std::to_string(reader.number()) + ": self-loop");
      }
      lists[v].push_back(static_cast<VertexId>(u - 1));
    }
    entries += lists[v].size();
  }
  while (reader.next(line)) {
    if (!tokenize(line, reader.number()).empty()) {
      throw FormatError("line " + std::to_string(reader.number()) +
                        ": content after the last vertex line");
    }
  }

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(entries / 2);
  for (std::size_t v = 0; v < lists.size(); ++v) {
    auto& list = lists[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw FormatError("vertex " + std::to_string(v + 1) + ": duplicate neighbor entry");
    }
  }
  for (std::size_t v = 0; v < lists.size(); ++v) {
    for (VertexId u : lists[v]) {
      const auto& back = lists[u];
      if (!std::binary_search(back.begin(), back.end(), static_cast<VertexId>(v))) {
        throw FormatError("asymmetric adjacency: " + std::to_string(v + 1) + " lists " +
                          std::to_string(u + 1) + " but not vice versa");
      }
      if (v < u) edges.emplace_back(static_cast<VertexId>(v), u);
    }
  }
  if (static_cast<std::int64_t>(edges.size()) != m) {
    throw FormatError("wrong edge count: header says " + std::to_string(m) + ", found " +
                      std::to_string(edges.size()));
  }
  return WeightedGraph::build(edges, weights);
}

WeightedGraph read_metis_file(const std::string& path) { return parse_metis(read_text_file(path)); }

std::string write_metis(const WeightedGraph& g, std::vector<VertexId>* mapping) {
  const auto live = g.live_vertices();
  std::vector<VertexId> new_id(g.capacity(), kInvalidVertex);
  for (std::size_t i = 0; i < live.size(); ++i) new_id[live[i]] = static_cast<VertexId>(i);

  std::string out;
  out.reserve(16 * (live.size() + 2 * g.live_edges()));
  out += std::to_string(live.size()) + ' ' + std::to_string(g.live_edges()) + " 10\n";
  std::vector<VertexId> row;
  for (VertexId v : live) {
    out += std::to_string(g.weight(v));
    row.clear();
    g.for_each_neighbor(v, [&](VertexId u) { row.push_back(new_id[u]); });
    std::sort(row.begin(), row.end());
    for (VertexId u : row) {
      out += ' ';
      out += std::to_string(u + 1);
    }
    out += '\n';
  }
  if (mapping) *mapping = live;
  return out;
}

std::string write_solution(const VertexSet& solution) {
  VertexSet sorted = solution;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (VertexId v : sorted) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::vector<VertexId> parse_solution(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<VertexId> out;
  while (reader.next(line)) {
    for (std::int64_t id : tokenize(line, reader.number())) {
      if (id < 0 || id > static_cast<std::int64_t>(kInvalidVertex - 1)) {
        throw FormatError("line " + std::to_string(reader.number()) + ": invalid vertex id " +
                          std::to_string(id));
      }
      out.push_back(static_cast<VertexId>(id));
    }
  }
  return out;
}

std::vector<VertexId> read_solution_file(const std::string& path) {
  return parse_solution(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace m2wis

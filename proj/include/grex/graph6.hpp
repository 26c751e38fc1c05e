#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grex/graph.hpp"

namespace grex {

/// Malformed graph6 input; `offset` is the byte position within the line.
class Graph6Error : public std::runtime_error {
public:
    Graph6Error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Decodes one graph6 line (short or 4-byte header form). A leading
/// ">>graph6<<" marker is tolerated and skipped.
Graph parse_graph6(std::string_view line);

/// Canonical short-form graph6 encoding.
std::string write_graph6(const Graph& g);

/// One graph per line; blank lines and the optional format header are skipped.
std::vector<Graph> read_graph6_file(const std::string& path);

/// Lines 2i-1 and 2i form pair i.
std::vector<std::pair<Graph, Graph>> read_pair_file(const std::string& path);

void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs);
void write_pair_file(const std::string& path, const std::vector<std::pair<Graph, Graph>>& pairs);

}  // namespace grex

#pragma once

#include <functional>
#include <vector>

#include "grex/graph.hpp"

namespace grex {

/// All non-isomorphic graphs on n nodes, one representative per class, in a
/// deterministic order. Built level by level: every representative on k-1
/// nodes is extended by one node with each possible neighborhood, then
/// deduplicated by invariant bucket plus exact isomorphism. Counts follow
/// 1, 2, 4, 11, 34, 156, 1044, 12346 for n = 1..8.
///
/// n > 8 is rejected; pipe a graph6 stream from an external enumerator
/// instead (the CLI accepts catalog files everywhere).
std::vector<Graph> enumerate_nonisomorphic(int n);

void for_each_nonisomorphic(int n, const std::function<void(const Graph&)>& fn);

}  // namespace grex

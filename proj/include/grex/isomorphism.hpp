#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grex/graph.hpp"

namespace grex {

/// Exact isomorphism via color-refinement-pruned backtracking
/// (individualize a node, re-refine, recurse). Deterministic. Size or
/// degree-sequence mismatch returns false. Intended for graphs up to a few
/// dozen nodes; CFI-style symmetric instances around 60 nodes are still fine.
bool is_isomorphic(const Graph& g, const Graph& h);

/// Same search with per-node initial colors that any bijection must preserve
/// (color vectors are 0-based, one entry per node).
bool is_isomorphic_colored(const Graph& g, const Graph& h, const std::vector<int>& colors_g,
                           const std::vector<int>& colors_h);

/// Rooted variant: node 1 of g must map to node 1 of h.
bool is_rooted_isomorphic(const Graph& g, const Graph& h);

/// Budgeted variant for audits over large instances; nullopt when the search
/// exceeds `max_nodes` backtracking states.
std::optional<bool> is_isomorphic_budgeted(const Graph& g, const Graph& h,
                                           std::uint64_t max_nodes);

}  // namespace grex

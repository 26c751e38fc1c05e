#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grex/graph.hpp"

namespace grex {

// ---------------------------------------------------------------------------
// circulant skip-link graphs

struct CslParams {
    int m = 0;  // cycle length
    int r = 0;  // skip length, co-prime with m, r < m-1
};

/// 4-regular graph on m nodes: the m-cycle plus the skip cycle built from
/// s_1 = 1 and repeated jumps of r (nodes stay in 1..m). Invalid parameters
/// (non-coprime, r out of range, or a skip cycle that collapses onto the
/// base cycle) are rejected.
Graph gen_csl(const CslParams& p);

/// The ten classic 41-node instances, r in {2,3,4,5,6,9,11,12,13,16}.
std::vector<Graph> csl_standard_set(int m = 41);

// ---------------------------------------------------------------------------
// CFI construction

struct CfiSpec {
    Graph backbone;        // connected, minimum degree >= 2, small (3..7 nodes)
    bool twisted = false;
    int twist_edge = 0;    // index into the lexicographically sorted edge list
};

/// Gadget replacement: each backbone edge e becomes the node pair {e0, e1};
/// each backbone vertex v becomes one node per even subset Z of its incident
/// edges, wired to e1 for e in Z and to e0 otherwise. The twisted variant
/// swaps the e0/e1 connections at the smaller endpoint of the twist edge.
/// The twisted and untwisted graphs are 1-WL-equivalent but never
/// isomorphic.
Graph gen_cfi(const CfiSpec& spec);

/// Node count the construction yields: sum over v of 2^(deg(v)-1), plus 2|E|.
int cfi_node_count(const Graph& backbone);

// ---------------------------------------------------------------------------
// regular-family verifiers

std::optional<int> verify_regular(const Graph& g);

struct SrgParams {
    int v = 0, k = 0, lambda = 0, mu = 0;
    friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

/// srg(v,k,lambda,mu) parameters when adjacent pairs share exactly lambda
/// and non-adjacent pairs exactly mu common neighbors. Graphs without both
/// kinds of pairs (complete/empty) are not certified.
std::optional<SrgParams> verify_srg(const Graph& g);

/// 4-vertex condition: strongly regular, and the edge count among the
/// common neighbors of a pair depends only on whether the pair is adjacent.
bool verify_4vc(const Graph& g);

struct IntersectionArray {
    std::vector<int> b;  // b_0 .. b_{D-1}
    std::vector<int> c;  // c_1 .. c_D
    friend bool operator==(const IntersectionArray&, const IntersectionArray&) = default;
};

/// Distance-regularity via the full (j, k, d) condition: the number of nodes
/// at distance j from v and k from w may depend only on j, k and d(v, w).
/// Connected graphs only; returns the intersection array when it holds.
std::optional<IntersectionArray> verify_drg(const Graph& g);

/// Everything the verifiers can say about one graph.
struct RegularityCertificate {
    std::optional<int> regular_degree;
    std::optional<SrgParams> srg;
    bool four_vertex_condition = false;
    std::optional<IntersectionArray> drg;
};

RegularityCertificate classify_regularity(const Graph& g);

// ---------------------------------------------------------------------------
// built-in strongly regular catalog

Graph shrikhande_graph();      // srg(16,6,2,2)
Graph rook_graph_4x4();        // srg(16,6,2,2), satisfies the 4-vertex condition
Graph triangular_graph(int m); // line graph of K_m; T(8) = srg(28,12,6,4)
Graph petersen_graph();        // srg(10,3,0,1)

/// Seidel switching of g with respect to the node set s (1-based):
/// edges between s and its complement are complemented.
Graph seidel_switch(const Graph& g, const std::vector<int>& s);

/// The three Chang graphs: switching T(8) along 4K2, C8 and C3+C5.
std::vector<Graph> chang_graphs();

struct CatalogEntry {
    std::string name;
    Graph graph;
};

/// Built-in strongly regular graphs with same-parameter partners.
std::vector<CatalogEntry> builtin_srg_catalog();

// ---------------------------------------------------------------------------
// exact treewidth (small n) for CFI difficulty tags

int treewidth(const Graph& g);  // n <= 20

/// Difficulty tag of a CFI pair over this backbone: the strongest WL order
/// that still fails. With Morris-convention k-WL, the pair over a backbone
/// of treewidth t defeats every k-WL with k <= t.
std::string cfi_difficulty_tag(const Graph& backbone);

}  // namespace grex

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grex/graph.hpp"
#include "grex/hash.hpp"

namespace grex {

enum class WlMethod { WL1, WLk, FWLk };

/// Configuration for one refinement run.
///
/// Colors are 128-bit structural hashes: a node's (or tuple's) color is a
/// deterministic function of its rooted unfolding, so colors from separate
/// runs over different graphs are directly comparable. `exact_colors`
/// replaces hashing with exact interned identifiers for small-graph
/// cross-validation; interned colors are only meaningful within one run.
struct WlConfig {
    WlMethod method = WlMethod::WL1;
    int k = 1;  // tuple order, >= 2 for WLk / FWLk
    std::optional<int> max_iterations;
    std::optional<std::vector<Digest128>> initial_colors;  // node-level methods only
    std::uint64_t op_budget = 100'000'000;  // tuple updates per refinement call
    bool exact_colors = false;
    int workers = 1;

    static WlConfig wl1() { return {}; }
    static WlConfig wlk(int k) { return {.method = WlMethod::WLk, .k = k}; }
    static WlConfig fwlk(int k) { return {.method = WlMethod::FWLk, .k = k}; }
};

struct ColorRefinementResult {
    /// Digest of the sorted multiset of final colors. The final coloring is
    /// the one at the first round whose partition matched the previous
    /// round's (never earlier than round 1), or at the iteration cap.
    Digest128 stable_histogram_hash;
    /// Productive refinement rounds behind the final coloring.
    int iterations_used = 0;
    /// Histogram digest per round, index 0 = initial coloring. When the run
    /// reached a stable coloring the final digest is repeated once; rounds
    /// past stability would keep repeating it.
    std::vector<Digest128> per_round_hashes;
    bool stable = false;
};

ColorRefinementResult refine_1wl(const Graph& g, const WlConfig& cfg);
ColorRefinementResult refine_kwl(const Graph& g, const WlConfig& cfg);
ColorRefinementResult refine_kfwl(const Graph& g, const WlConfig& cfg);
ColorRefinementResult refine(const Graph& g, const WlConfig& cfg);  // dispatch on cfg.method

/// True iff the method tells g and h apart. Refinement runs on the disjoint
/// union of g and h so color identifiers are directly comparable; the
/// verdict compares the per-graph color histograms (for tuple methods, over
/// the tuples drawn entirely from one graph). Exits early on the first
/// round where the histograms split.
bool distinguishes(const WlConfig& cfg, const Graph& g, const Graph& h);

/// Same, with per-graph initial node colors (the extension baselines feed
/// their initial colorings through here). Node-level methods only.
bool distinguishes_with_initial(const WlConfig& cfg, const Graph& g, const Graph& h,
                                const std::vector<Digest128>& init_g,
                                const std::vector<Digest128>& init_h);

/// Stable histogram hash of a stand-alone run; equal signatures mean the
/// method cannot tell the graphs apart (hash mode only). Used for bucketing
/// large graph streams without pairwise runs.
Digest128 wl_signature(const Graph& g, const WlConfig& cfg);

bool distinguishes_separate(const WlConfig& cfg, const Graph& g, const Graph& h);

}  // namespace grex

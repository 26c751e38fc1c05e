#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "grex/graph.hpp"
#include "grex/hash.hpp"

namespace grex {

enum class ExtensionKind { Sk, Nk, M1 };

struct ExtensionConfig {
    ExtensionKind kind = ExtensionKind::M1;
    int k = 1;  // substructure order for Sk (3 or 4), radius for Nk (>= 1)
    std::uint64_t subgraph_budget = 50'000'000;  // enumeration steps for Sk
    int max_ego_nodes = 128;                     // per-ego-net guard for Nk
    int workers = 1;

    static ExtensionConfig s(int k) { return {.kind = ExtensionKind::Sk, .k = k}; }
    static ExtensionConfig n(int k) { return {.kind = ExtensionKind::Nk, .k = k}; }
    static ExtensionConfig m1() { return {.kind = ExtensionKind::M1}; }
};

/// Per-node color: the count vector, indexed by rooted isomorphism type, of
/// connected induced subgraphs on exactly k nodes containing the node.
/// Fed into 1-WL as the initial coloring. k in {3, 4}.
std::vector<Digest128> substructure_init_colors(const Graph& g, int k,
                                                std::uint64_t budget = 50'000'000);

/// Session pool of rooted ego-net isomorphism classes. Class indices are
/// only comparable against the same pool instance.
class EgoNetClassifier {
public:
    int classify(const Graph& rooted);
    std::size_t class_count() const { return reps_.size(); }

private:
    std::vector<Graph> reps_;
    std::unordered_map<Digest128, std::vector<int>, Digest128Hash> buckets_;
};

/// Per-node color: index of the rooted isomorphism class of the radius-k
/// ego-net, classes drawn from the shared pool.
std::vector<Digest128> egonet_init_colors(const Graph& g, int k, EgoNetClassifier& pool,
                                          int max_ego_nodes = 128);

/// Marking baseline: for each node, rerun 1-WL with that node uniquely
/// marked; the digest hashes the sorted multiset of the n per-mark stable
/// hashes. Isomorphism-invariant and comparable across graphs.
Digest128 marking_signature(const Graph& g, int workers = 1);

/// Verdict for one pair under the chosen baseline, evaluated like the WL
/// engine: initial colors per graph, refinement over the disjoint union.
bool extension_distinguishes(const ExtensionConfig& cfg, const Graph& g, const Graph& h);

/// Graph signature for bucketing streams. For Nk a shared pool must be
/// passed; its class indices make signatures comparable within the session.
Digest128 extension_signature(const ExtensionConfig& cfg, const Graph& g,
                              EgoNetClassifier* pool = nullptr);

}  // namespace grex

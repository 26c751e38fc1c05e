#include "grex/extensions.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "grex/isomorphism.hpp"
#include "grex/parallel.hpp"
#include "grex/wl.hpp"

namespace grex {

namespace {

// Canonical code of a rooted <=4-node subgraph: minimal adjacency bits over
// permutations of the non-root members, root pinned first.
int rooted_code(const Graph& g, const int* members, int k, int root_pos) {
    std::array<int, 4> order{};
    order[0] = members[root_pos];
    std::array<int, 3> rest{};
    int r = 0;
    for (int i = 0; i < k; ++i)
        if (i != root_pos) rest[r++] = members[i];
    std::sort(rest.begin(), rest.begin() + r);

    int best = 1 << 30;
    do {
        for (int i = 0; i < r; ++i) order[i + 1] = rest[i];
        int bits = 0;
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i) bits = (bits << 1) | int(g.adj0(order[i], order[j]));
        best = std::min(best, bits);
    } while (std::next_permutation(rest.begin(), rest.begin() + r));
    return best;
}

// ESU-style enumeration of all connected induced k-node subgraphs, each
// exactly once; visit() receives the 0-based member array.
template <class Visit>
void for_each_connected_subset(const Graph& g, int k, std::uint64_t budget, Visit&& visit) {
    const int n = g.node_count();
    std::vector<int> sub;
    std::uint64_t steps = 0;

    // in_ext/in_sub/neighbor-of-sub flags per node
    std::vector<char> in_sub(n, 0), in_nbr(n, 0);

    struct Frame {
        std::vector<int> ext;
    };

    auto step = [&]() {
        if (++steps > budget)
            throw ResourceError("substructure enumeration exceeded its budget");
    };

    std::function<void(std::vector<int>&, int)> extend = [&](std::vector<int>& ext, int anchor) {
        step();
        if (static_cast<int>(sub.size()) == k) {
            visit(sub.data());
            return;
        }
        while (!ext.empty()) {
            int w = ext.back();
            ext.pop_back();
            // exclusive neighborhood of w: fresh nodes beyond anchor
            std::vector<int> next = ext;
            g.for_neighbors0(w, [&](int u) {
                if (u > anchor && !in_sub[u] && !in_nbr[u]) next.push_back(u);
            });
            sub.push_back(w);
            in_sub[w] = 1;
            std::vector<int> marked;
            g.for_neighbors0(w, [&](int u) {
                if (!in_nbr[u]) {
                    in_nbr[u] = 1;
                    marked.push_back(u);
                }
            });
            extend(next, anchor);
            for (int u : marked) in_nbr[u] = 0;
            in_sub[w] = 0;
            sub.pop_back();
        }
    };

    for (int v = 0; v < n; ++v) {
        sub.assign(1, v);
        in_sub[v] = 1;
        std::vector<int> ext, marked;
        g.for_neighbors0(v, [&](int u) {
            if (u > v) ext.push_back(u);
            in_nbr[u] = 1;
            marked.push_back(u);
        });
        extend(ext, v);
        for (int u : marked) in_nbr[u] = 0;
        in_sub[v] = 0;
    }
}

const Digest128 kMarkRoot = hash_string("m1-marked-node");
const Digest128 kMarkRest = hash_string("m1-plain-node");

}  // namespace

std::vector<Digest128> substructure_init_colors(const Graph& g, int k, std::uint64_t budget) {
    if (k != 3 && k != 4)
        throw std::invalid_argument("substructure_init_colors: k must be 3 or 4");
    const int n = g.node_count();
    // counts[node][rooted type code]; codes fit 6 bits for k <= 4
    std::vector<std::array<std::uint32_t, 64>> counts(n);
    for (auto& c : counts) c.fill(0);

    for_each_connected_subset(g, k, budget, [&](const int* members) {
        for (int i = 0; i < k; ++i)
            ++counts[members[i]][std::size_t(rooted_code(g, members, k, i))];
    });

    std::vector<Digest128> colors(n);
    ByteSink sink;
    for (int v = 0; v < n; ++v) {
        sink.clear();
        sink.put_u8('S');
        sink.put_u8(static_cast<std::uint8_t>(k));
        for (int code = 0; code < 64; ++code)
            if (counts[v][code]) {
                sink.put_u32(static_cast<std::uint32_t>(code));
                sink.put_u32(counts[v][code]);
            }
        colors[v] = sink.digest();
    }
    return colors;
}

int EgoNetClassifier::classify(const Graph& rooted) {
    ByteSink sink;
    sink.put_u32(static_cast<std::uint32_t>(rooted.node_count()));
    sink.put_u32(static_cast<std::uint32_t>(rooted.edge_count()));
    std::vector<Digest128> init(rooted.node_count(), kMarkRest);
    if (!init.empty()) init[0] = kMarkRoot;
    WlConfig cfg = WlConfig::wl1();
    cfg.initial_colors = init;
    sink.put_digest(refine(rooted, cfg).stable_histogram_hash);
    const Digest128 key = sink.digest();

    auto& members = buckets_[key];
    for (int idx : members)
        if (is_rooted_isomorphic(rooted, reps_[idx])) return idx;
    int idx = static_cast<int>(reps_.size());
    reps_.push_back(rooted);
    members.push_back(idx);
    return idx;
}

std::vector<Digest128> egonet_init_colors(const Graph& g, int k, EgoNetClassifier& pool,
                                          int max_ego_nodes) {
    if (k < 1) throw std::invalid_argument("egonet_init_colors: radius must be >= 1");
    const int n = g.node_count();
    std::vector<Digest128> colors(n);
    ByteSink sink;
    for (int v = 1; v <= n; ++v) {
        Graph ego = ego_net(g, v, k);
        if (ego.node_count() > max_ego_nodes)
            throw ResourceError("egonet_init_colors: ego-net exceeds the node budget");
        sink.clear();
        sink.put_u8('E');
        sink.put_u64(static_cast<std::uint64_t>(pool.classify(ego)));
        colors[v - 1] = sink.digest();
    }
    return colors;
}

Digest128 marking_signature(const Graph& g, int workers) {
    const int n = g.node_count();
    std::vector<Digest128> per_mark(n);
    parallel_for(std::max(1, workers), n, [&](std::int64_t b, std::int64_t e, int) {
        for (std::int64_t u = b; u < e; ++u) {
            std::vector<Digest128> init(n, kMarkRest);
            init[u] = kMarkRoot;
            WlConfig cfg = WlConfig::wl1();
            cfg.initial_colors = std::move(init);
            per_mark[u] = refine(g, cfg).stable_histogram_hash;
        }
    });
    std::sort(per_mark.begin(), per_mark.end());
    ByteSink sink;
    sink.put_u8('M');
    sink.put_digests(per_mark);
    return sink.digest();
}

bool extension_distinguishes(const ExtensionConfig& cfg, const Graph& g, const Graph& h) {
    switch (cfg.kind) {
        case ExtensionKind::Sk: {
            auto ig = substructure_init_colors(g, cfg.k, cfg.subgraph_budget);
            auto ih = substructure_init_colors(h, cfg.k, cfg.subgraph_budget);
            return distinguishes_with_initial(WlConfig::wl1(), g, h, ig, ih);
        }
        case ExtensionKind::Nk: {
            EgoNetClassifier pool;
            auto ig = egonet_init_colors(g, cfg.k, pool, cfg.max_ego_nodes);
            auto ih = egonet_init_colors(h, cfg.k, pool, cfg.max_ego_nodes);
            return distinguishes_with_initial(WlConfig::wl1(), g, h, ig, ih);
        }
        case ExtensionKind::M1:
            return marking_signature(g, cfg.workers) != marking_signature(h, cfg.workers);
    }
    throw std::logic_error("extension_distinguishes: bad kind");
}

Digest128 extension_signature(const ExtensionConfig& cfg, const Graph& g,
                              EgoNetClassifier* pool) {
    switch (cfg.kind) {
        case ExtensionKind::Sk: {
            WlConfig wl = WlConfig::wl1();
            wl.initial_colors = substructure_init_colors(g, cfg.k, cfg.subgraph_budget);
            return refine(g, wl).stable_histogram_hash;
        }
        case ExtensionKind::Nk: {
            if (!pool)
                throw std::invalid_argument("extension_signature: Nk needs a shared pool");
            WlConfig wl = WlConfig::wl1();
            wl.initial_colors = egonet_init_colors(g, cfg.k, *pool, cfg.max_ego_nodes);
            return refine(g, wl).stable_histogram_hash;
        }
        case ExtensionKind::M1:
            return marking_signature(g, cfg.workers);
    }
    throw std::logic_error("extension_signature: bad kind");
}

}  // namespace grex

#include "grex/enumerate.hpp"

#include <algorithm>
#include <unordered_map>

#include "grex/hash.hpp"
#include "grex/isomorphism.hpp"
#include "grex/wl.hpp"

namespace grex {

namespace {

// Invariant bucket key: cheap to compute, isomorphism-invariant, and fine
// enough that in-bucket exact checks stay rare (1-WL separates almost all
// small graphs; the leftovers are the regular families).
Digest128 bucket_key(const Graph& g) {
    ByteSink sink;
    sink.put_u32(static_cast<std::uint32_t>(g.node_count()));
    sink.put_u32(static_cast<std::uint32_t>(g.edge_count()));
    sink.put_digest(wl_signature(g, WlConfig::wl1()));
    return sink.digest();
}

std::vector<Graph> extend_level(const std::vector<Graph>& prev, int n) {
    std::vector<Graph> out;
    std::unordered_map<Digest128, std::vector<int>, Digest128Hash> buckets;
    for (const auto& base : prev) {
        const int full = 1 << (n - 1);
        for (int mask = 0; mask < full; ++mask) {
            Graph cand(n);
            for (auto [u, v] : base.edges()) cand.add_edge(u, v);
            for (int j = 0; j < n - 1; ++j)
                if ((mask >> j) & 1) cand.add_edge(j + 1, n);

            auto& bucket = buckets[bucket_key(cand)];
            bool known = false;
            for (int idx : bucket)
                if (is_isomorphic(cand, out[idx])) {
                    known = true;
                    break;
                }
            if (!known) {
                bucket.push_back(static_cast<int>(out.size()));
                out.push_back(std::move(cand));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Graph> enumerate_nonisomorphic(int n) {
    if (n < 1)
        throw std::invalid_argument("enumerate_nonisomorphic: n must be >= 1");
    if (n > 8)
        throw std::invalid_argument(
            "enumerate_nonisomorphic: internal enumeration is capped at n <= 8; "
            "pipe a graph6 stream from an external enumerator for larger n");
    std::vector<Graph> level{Graph(1)};
    for (int k = 2; k <= n; ++k) level = extend_level(level, k);
    return level;
}

void for_each_nonisomorphic(int n, const std::function<void(const Graph&)>& fn) {
    for (const auto& g : enumerate_nonisomorphic(n)) fn(g);
}

}  // namespace grex

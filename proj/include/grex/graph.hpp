#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace grex {

/// Thrown when a refinement, enumeration or search exceeds its configured
/// operation budget. Callers report the affected item as skipped instead of
/// silently truncating.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph. Nodes are the indices 1..n in the public
/// interface; adjacency is stored as 0-based bit rows, which is the layout
/// the serialization and the refinement kernels work on. No self-loops,
/// no parallel edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

    int node_count() const { return n_; }
    int edge_count() const;

    /// 1-based accessors.
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const;  // sorted, u < v

    /// 0-based raw accessors for algorithm kernels.
    bool adj0(int i, int j) const { return (bits_[std::size_t(i) * words_ + (j >> 6)] >> (j & 63)) & 1; }
    void add_edge0(int i, int j);
    std::span<const std::uint64_t> row0(int i) const {
        return {bits_.data() + std::size_t(i) * words_, std::size_t(words_)};
    }
    int words_per_row() const { return words_; }
    int degree0(int i) const;
    template <class F>
    void for_neighbors0(int i, F f) const {
        const std::uint64_t* row = bits_.data() + std::size_t(i) * words_;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const Graph&) const = default;

private:
    void check_node(int v) const;

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Bijection on [n]; image[v-1] is the image of node v.
struct Permutation {
    std::vector<int> image;

    static Permutation identity(int n);
    static Permutation random(int n, std::mt19937_64& rng);

    int size() const { return static_cast<int>(image.size()); }
    int map(int v) const { return image[std::size_t(v) - 1]; }
    bool is_valid() const;
    Permutation inverse() const;

    /// first q, then p: (p * q)(v) = p(q(v))
    friend Permutation operator*(const Permutation& p, const Permutation& q);
};

/// Relabels g so that (u,v) is an edge iff (p(u), p(v)) is an edge of the result.
Graph apply_permutation(const Graph& g, const Permutation& p);

/// Hop distances from BFS; -1 marks unreachable pairs. diameter is the
/// largest finite entry.
struct DistanceMatrix {
    int n = 0;
    std::vector<int> dist;  // n*n, row-major, 0-based
    int diameter = 0;
    bool connected = true;

    int at(int u, int v) const { return dist[std::size_t(u - 1) * n + (v - 1)]; }
};

DistanceMatrix all_pairs_distances(const Graph& g);

/// Induced subgraph on every node within distance k of v. The root becomes
/// node 1; remaining nodes follow in (distance, original index) order.
Graph ego_net(const Graph& g, int v, int k);

Graph disjoint_union(const Graph& g, const Graph& h);
Graph complement(const Graph& g);

/// g plus one extra node adjacent to every original node.
Graph with_apex(const Graph& g);

bool is_connected(const Graph& g);
int min_degree(const Graph& g);

/// Degree if all nodes share it (n >= 1), otherwise nullopt.
std::optional<int> regular_degree(const Graph& g);

// Small named families used all over the generators and tests.
Graph make_cycle(int n);
Graph make_path(int n);
Graph make_complete(int n);
Graph make_star(int leaves);  // leaves + 1 nodes, center is node 1

}  // namespace grex

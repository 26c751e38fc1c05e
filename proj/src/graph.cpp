#include "grex/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <string>

namespace grex {

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative node count");
    words_ = (n + 63) / 64;
    bits_.assign(std::size_t(n) * words_, 0);
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_node(int v) const {
    if (v < 1 || v > n_)
        throw std::invalid_argument("graph: node " + std::to_string(v) + " out of range 1.." +
                                    std::to_string(n_));
}

bool Graph::has_edge(int u, int v) const {
    check_node(u);
    check_node(v);
    return adj0(u - 1, v - 1);
}

void Graph::add_edge(int u, int v) {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("graph: self-loop rejected");
    add_edge0(u - 1, v - 1);
}

void Graph::add_edge0(int i, int j) {
    bits_[std::size_t(i) * words_ + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    bits_[std::size_t(j) * words_ + (i >> 6)] |= std::uint64_t(1) << (i & 63);
}

int Graph::edge_count() const {
    std::size_t total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return static_cast<int>(total / 2);
}

int Graph::degree(int v) const {
    check_node(v);
    return degree0(v - 1);
}

int Graph::degree0(int i) const {
    int d = 0;
    for (auto w : row0(i)) d += std::popcount(w);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    check_node(v);
    std::vector<int> out;
    for_neighbors0(v - 1, [&](int j) { out.push_back(j + 1); });
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for_neighbors0(i, [&](int j) {
            if (j > i) out.emplace_back(i + 1, j + 1);
        });
    return out;
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(n);
    std::iota(p.image.begin(), p.image.end(), 1);
    return p;
}

Permutation Permutation::random(int n, std::mt19937_64& rng) {
    Permutation p = identity(n);
    for (int i = n - 1; i > 0; --i) {
        auto j = static_cast<int>(rng() % std::uint64_t(i + 1));
        std::swap(p.image[i], p.image[j]);
    }
    return p;
}

bool Permutation::is_valid() const {
    std::vector<char> seen(image.size(), 0);
    for (int v : image) {
        if (v < 1 || v > size() || seen[v - 1]) return false;
        seen[v - 1] = 1;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.image.resize(image.size());
    for (int v = 1; v <= size(); ++v) inv.image[std::size_t(map(v)) - 1] = v;
    return inv;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("permutation compose: size mismatch");
    Permutation out;
    out.image.resize(p.image.size());
    for (int v = 1; v <= p.size(); ++v) out.image[std::size_t(v) - 1] = p.map(q.map(v));
    return out;
}

Graph apply_permutation(const Graph& g, const Permutation& p) {
    if (p.size() != g.node_count()) throw std::invalid_argument("apply_permutation: size mismatch");
    if (!p.is_valid()) throw std::invalid_argument("apply_permutation: not a bijection");
    Graph out(g.node_count());
    for (auto [u, v] : g.edges()) out.add_edge(p.map(u), p.map(v));
    return out;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
    const int n = g.node_count();
    DistanceMatrix dm;
    dm.n = n;
    dm.dist.assign(std::size_t(n) * n, -1);
    std::vector<int> queue;
    queue.reserve(n);
    for (int s = 0; s < n; ++s) {
        int* row = dm.dist.data() + std::size_t(s) * n;
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            g.for_neighbors0(u, [&](int w) {
                if (row[w] < 0) {
                    row[w] = row[u] + 1;
                    queue.push_back(w);
                }
            });
        }
    }
    dm.diameter = 0;
    for (int d : dm.dist) {
        if (d < 0)
            dm.connected = false;
        else
            dm.diameter = std::max(dm.diameter, d);
    }
    if (n == 0) dm.connected = true;
    return dm;
}

Graph ego_net(const Graph& g, int v, int k) {
    if (v < 1 || v > g.node_count()) throw std::invalid_argument("ego_net: root out of range");
    if (k < 0) throw std::invalid_argument("ego_net: negative radius");
    const int n = g.node_count();
    std::vector<int> dist(n, -1);
    dist[v - 1] = 0;
    std::vector<int> order{v - 1};
    for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        if (dist[u] == k) continue;
        g.for_neighbors0(u, [&](int w) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                order.push_back(w);
            }
        });
    }
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::pair(dist[a], a) < std::pair(dist[b], b); });
    std::vector<int> newid(n, -1);
    for (std::size_t i = 0; i < order.size(); ++i) newid[order[i]] = static_cast<int>(i);
    Graph out(static_cast<int>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i)
        g.for_neighbors0(order[i], [&](int w) {
            if (newid[w] >= 0 && newid[w] > static_cast<int>(i))
                out.add_edge0(static_cast<int>(i), newid[w]);
        });
    return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
    Graph out(g.node_count() + h.node_count());
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    const int off = g.node_count();
    for (auto [u, v] : h.edges()) out.add_edge(u + off, v + off);
    return out;
}

Graph complement(const Graph& g) {
    const int n = g.node_count();
    Graph out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adj0(i, j)) out.add_edge0(i, j);
    return out;
}

Graph with_apex(const Graph& g) {
    const int n = g.node_count();
    Graph out(n + 1);
    for (auto [u, v] : g.edges()) out.add_edge(u, v);
    for (int v = 1; v <= n; ++v) out.add_edge(v, n + 1);
    return out;
}

bool is_connected(const Graph& g) {
    const int n = g.node_count();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int found = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        g.for_neighbors0(u, [&](int w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++found;
                stack.push_back(w);
            }
        });
    }
    return found == n;
}

int min_degree(const Graph& g) {
    int md = g.node_count() == 0 ? 0 : g.degree0(0);
    for (int i = 1; i < g.node_count(); ++i) md = std::min(md, g.degree0(i));
    return md;
}

std::optional<int> regular_degree(const Graph& g) {
    if (g.node_count() == 0) return std::nullopt;
    int d = g.degree0(0);
    for (int i = 1; i < g.node_count(); ++i)
        if (g.degree0(i) != d) return std::nullopt;
    return d;
}

Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("make_cycle: n >= 3");
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
    g.add_edge(n, 1);
    return g;
}

Graph make_path(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph make_complete(int n) {
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
}

Graph make_star(int leaves) {
    Graph g(leaves + 1);
    for (int v = 2; v <= leaves + 1; ++v) g.add_edge(1, v);
    return g;
}

}  // namespace grex

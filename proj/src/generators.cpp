#include "grex/generators.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace grex {

// ---------------------------------------------------------------------------
// CSL

Graph gen_csl(const CslParams& p) {
    if (p.m < 4) throw std::invalid_argument("gen_csl: m too small");
    if (p.r < 1 || p.r >= p.m - 1) throw std::invalid_argument("gen_csl: need 1 <= r < m-1");
    if (std::gcd(p.m, p.r) != 1) throw std::invalid_argument("gen_csl: m and r must be co-prime");

    Graph g(p.m);
    for (int j = 1; j < p.m; ++j) g.add_edge(j, j + 1);
    g.add_edge(p.m, 1);

    // Skip cycle: starts at node 1 and jumps by r until it returns. Since
    // gcd(m, r) = 1 it visits every node exactly once.
    int s = 1;
    do {
        int t = (s - 1 + p.r) % p.m + 1;
        if (g.has_edge(s, t))
            throw std::invalid_argument("gen_csl: skip links collapse onto the cycle");
        g.add_edge(s, t);
        s = t;
    } while (s != 1);

    if (regular_degree(g) != 4)
        throw std::invalid_argument("gen_csl: parameters do not give a 4-regular graph");
    return g;
}

std::vector<Graph> csl_standard_set(int m) {
    std::vector<Graph> out;
    for (int r : {2, 3, 4, 5, 6, 9, 11, 12, 13, 16}) out.push_back(gen_csl({m, r}));
    return out;
}

// ---------------------------------------------------------------------------
// CFI

int cfi_node_count(const Graph& backbone) {
    int total = 2 * backbone.edge_count();
    for (int v = 1; v <= backbone.node_count(); ++v)
        total += 1 << (backbone.degree(v) - 1);
    return total;
}

Graph gen_cfi(const CfiSpec& spec) {
    const Graph& bb = spec.backbone;
    if (bb.node_count() < 2 || !is_connected(bb) || min_degree(bb) < 2)
        throw std::invalid_argument("gen_cfi: backbone must be connected with min degree >= 2");

    auto edges = bb.edges();  // sorted (u < v)
    const int m = static_cast<int>(edges.size());
    if (spec.twist_edge < 0 || spec.twist_edge >= m)
        throw std::invalid_argument("gen_cfi: twist edge index out of range");

    Graph out(cfi_node_count(bb));
    // Edge nodes come first: edge i occupies nodes 2i+1 (level 0) and
    // 2i+2 (level 1).
    auto edge_node = [](int edge_idx, int level) { return 2 * edge_idx + 1 + level; };

    const auto twist_edge = edges[std::size_t(spec.twist_edge)];
    const int twist_side = twist_edge.first;

    int next_node = 2 * m + 1;
    for (int v = 1; v <= bb.node_count(); ++v) {
        std::vector<int> incident;
        for (int i = 0; i < m; ++i)
            if (edges[i].first == v || edges[i].second == v) incident.push_back(i);
        const int d = static_cast<int>(incident.size());
        for (int mask = 0; mask < (1 << d); ++mask) {
            if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
            const int gadget = next_node++;
            for (int j = 0; j < d; ++j) {
                int level = (mask >> j) & 1;
                if (spec.twisted && v == twist_side && incident[j] == spec.twist_edge)
                    level ^= 1;
                out.add_edge(gadget, edge_node(incident[j], level));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// exact treewidth via the elimination-order subset recursion

namespace {

// Number of nodes outside S u {v} reachable from v through S.
int q_value(const Graph& g, std::uint32_t s, int v) {
    std::uint32_t seen = std::uint32_t(1) << v;
    std::vector<int> stack{v};
    std::uint32_t reached = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        g.for_neighbors0(u, [&](int w) {
            if (seen & (std::uint32_t(1) << w)) return;
            seen |= std::uint32_t(1) << w;
            if (s & (std::uint32_t(1) << w))
                stack.push_back(w);
            else
                reached |= std::uint32_t(1) << w;
        });
    }
    return std::popcount(reached);
}

}  // namespace

int treewidth(const Graph& g) {
    const int n = g.node_count();
    if (n > 20) throw std::invalid_argument("treewidth: exact computation capped at n <= 20");
    if (n == 0) return 0;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    std::vector<int> tw(full + 1, 0);
    // tw[S]: width of the best elimination order of S as a prefix.
    for (std::uint32_t s = 1; s <= full; ++s) {
        int best = n;
        for (int v = 0; v < n; ++v) {
            if (!(s & (std::uint32_t(1) << v))) continue;
            std::uint32_t rest = s & ~(std::uint32_t(1) << v);
            best = std::min(best, std::max(tw[rest], q_value(g, rest, v)));
        }
        tw[s] = best;
    }
    return tw[full];
}

std::string cfi_difficulty_tag(const Graph& backbone) {
    int tw = treewidth(backbone);
    if (tw <= 2) return "1WL";
    if (tw == 3) return "3WL";
    if (tw == 4) return "4WL";
    return "beyond4WL";
}

// ---------------------------------------------------------------------------
// verifiers

std::optional<int> verify_regular(const Graph& g) { return regular_degree(g); }

namespace {

int common_neighbors(const Graph& g, int i, int j) {
    auto ri = g.row0(i);
    auto rj = g.row0(j);
    int c = 0;
    for (std::size_t w = 0; w < ri.size(); ++w) c += std::popcount(ri[w] & rj[w]);
    return c;
}

}  // namespace

std::optional<SrgParams> verify_srg(const Graph& g) {
    auto k = regular_degree(g);
    if (!k) return std::nullopt;
    const int n = g.node_count();
    int lambda = -1, mu = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int c = common_neighbors(g, i, j);
            int& slot = g.adj0(i, j) ? lambda : mu;
            if (slot < 0)
                slot = c;
            else if (slot != c)
                return std::nullopt;
        }
    }
    if (lambda < 0 || mu < 0) return std::nullopt;  // complete or empty
    return SrgParams{n, *k, lambda, mu};
}

bool verify_4vc(const Graph& g) {
    if (!verify_srg(g)) return false;
    const int n = g.node_count();
    const int words = g.words_per_row();
    std::vector<std::uint64_t> common(words);
    int edge_val = -1, nonedge_val = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto ri = g.row0(i);
            auto rj = g.row0(j);
            for (int w = 0; w < words; ++w) common[w] = ri[w] & rj[w];
            // edges inside the common neighborhood
            int edges_within = 0;
            for (int x = 0; x < n; ++x) {
                if (!((common[x >> 6] >> (x & 63)) & 1)) continue;
                auto rx = g.row0(x);
                for (int w = 0; w < words; ++w)
                    edges_within += std::popcount(rx[w] & common[w]);
            }
            edges_within /= 2;
            int& slot = g.adj0(i, j) ? edge_val : nonedge_val;
            if (slot < 0)
                slot = edges_within;
            else if (slot != edges_within)
                return false;
        }
    }
    return true;
}

std::optional<IntersectionArray> verify_drg(const Graph& g) {
    const int n = g.node_count();
    if (n == 0) return std::nullopt;
    if (!regular_degree(g)) return std::nullopt;
    auto dm = all_pairs_distances(g);
    if (!dm.connected) return std::nullopt;
    const int diam = dm.diameter;

    // profile[d][j*(diam+1)+k] = count of nodes at distance j from v and k
    // from w, for any pair (v, w) at distance d; -1 until seen.
    const int width = (diam + 1) * (diam + 1);
    std::vector<std::vector<int>> profile(diam + 1, std::vector<int>(width, -1));
    std::vector<int> counts(width);
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            int d = dm.dist[std::size_t(v) * n + w];
            std::fill(counts.begin(), counts.end(), 0);
            for (int u = 0; u < n; ++u) {
                int j = dm.dist[std::size_t(v) * n + u];
                int k = dm.dist[std::size_t(w) * n + u];
                ++counts[j * (diam + 1) + k];
            }
            auto& slot = profile[d];
            if (slot[0] < 0)
                slot = counts;
            else if (slot != counts)
                return std::nullopt;
        }
    }

    IntersectionArray arr;
    for (int i = 0; i < diam; ++i) arr.b.push_back(profile[i][(i + 1) * (diam + 1) + 1]);
    for (int i = 1; i <= diam; ++i) arr.c.push_back(profile[i][(i - 1) * (diam + 1) + 1]);
    return arr;
}

RegularityCertificate classify_regularity(const Graph& g) {
    RegularityCertificate cert;
    cert.regular_degree = verify_regular(g);
    if (!cert.regular_degree) return cert;
    cert.srg = verify_srg(g);
    if (cert.srg) cert.four_vertex_condition = verify_4vc(g);
    cert.drg = verify_drg(g);
    return cert;
}

// ---------------------------------------------------------------------------
// built-in catalog

Graph shrikhande_graph() {
    // Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}.
    Graph g(16);
    auto id = [](int a, int b) { return ((a & 3) * 4 + (b & 3)) + 1; };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            g.add_edge(id(a, b), id(a + 1, b));
            g.add_edge(id(a, b), id(a, b + 1));
            g.add_edge(id(a, b), id(a + 1, b + 1));
        }
    return g;
}

Graph rook_graph_4x4() {
    Graph g(16);
    auto id = [](int a, int b) { return a * 4 + b + 1; };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            for (int a2 = a + 1; a2 < 4; ++a2) g.add_edge(id(a, b), id(a2, b));
            for (int b2 = b + 1; b2 < 4; ++b2) g.add_edge(id(a, b), id(a, b2));
        }
    return g;
}

Graph triangular_graph(int m) {
    // Vertices are the 2-subsets of [m], adjacent when they intersect.
    std::vector<std::pair<int, int>> subsets;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) subsets.emplace_back(a, b);
    Graph g(static_cast<int>(subsets.size()));
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            auto [a, b] = subsets[i];
            auto [c, d] = subsets[j];
            if (a == c || a == d || b == c || b == d)
                g.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
        }
    return g;
}

Graph petersen_graph() {
    // Kneser graph K(5,2): 2-subsets of [5], adjacent when disjoint.
    return complement(triangular_graph(5));
}

Graph seidel_switch(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in_s(g.node_count() + 1, 0);
    for (int v : s) {
        if (v < 1 || v > g.node_count())
            throw std::invalid_argument("seidel_switch: node out of range");
        in_s[v] = 1;
    }
    Graph out(g.node_count());
    for (int u = 1; u <= g.node_count(); ++u)
        for (int v = u + 1; v <= g.node_count(); ++v) {
            bool crossing = in_s[u] != in_s[v];
            bool edge = g.has_edge(u, v);
            if (crossing ? !edge : edge) out.add_edge(u, v);
        }
    return out;
}

std::vector<Graph> chang_graphs() {
    // T(8) vertices are the edges of K8 in lexicographic order; the three
    // switching sets are a perfect matching, an 8-cycle and a C3 + C5.
    const int m = 8;
    std::vector<std::pair<int, int>> subsets;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) subsets.emplace_back(a, b);
    auto vertex_of = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (std::size_t i = 0; i < subsets.size(); ++i)
            if (subsets[i] == std::pair<int, int>(a, b)) return static_cast<int>(i) + 1;
        throw std::logic_error("chang_graphs: bad pair");
    };
    Graph t8 = triangular_graph(8);

    auto to_set = [&](std::vector<std::pair<int, int>> pairs) {
        std::vector<int> s;
        for (auto [a, b] : pairs) s.push_back(vertex_of(a, b));
        return s;
    };
    std::vector<std::vector<int>> sets{
        to_set({{0, 1}, {2, 3}, {4, 5}, {6, 7}}),
        to_set({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}}),
        to_set({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 7}}),
    };
    std::vector<Graph> out;
    for (const auto& s : sets) out.push_back(seidel_switch(t8, s));
    return out;
}

std::vector<CatalogEntry> builtin_srg_catalog() {
    std::vector<CatalogEntry> cat;
    cat.push_back({"shrikhande", shrikhande_graph()});
    cat.push_back({"rook_4x4", rook_graph_4x4()});
    cat.push_back({"triangular_T8", triangular_graph(8)});
    auto chang = chang_graphs();
    for (std::size_t i = 0; i < chang.size(); ++i)
        cat.push_back({"chang_" + std::to_string(i + 1), chang[i]});
    return cat;
}

}  // namespace grex

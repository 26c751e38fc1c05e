#include "grex/isomorphism.hpp"

#include <algorithm>
#include <unordered_map>

#include "grex/hash.hpp"

namespace grex {

namespace {

struct VecIntHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        Digest128 d = murmur3_128(v.data(), v.size() * sizeof(int));
        return static_cast<std::size_t>(d.lo);
    }
};

struct BudgetHit {};

// Backtracking isomorphism search over a pair of graphs sharing one color
// dictionary, refined jointly until stable. Individualized nodes get a fresh
// color beyond the interned range.
class IsoSearch {
public:
    IsoSearch(const Graph& g, const Graph& h, std::uint64_t budget)
        : g_(g), h_(h), budget_(budget) {}

    bool run(std::vector<int> cg, std::vector<int> ch) {
        return search(std::move(cg), std::move(ch));
    }

private:
    // One joint refinement round; returns the number of distinct colors.
    int round(std::vector<int>& cg, std::vector<int>& ch) {
        std::unordered_map<std::vector<int>, int, VecIntHash> dict;
        auto relabel = [&](const Graph& gr, const std::vector<int>& old, std::vector<int>& next) {
            const int n = gr.node_count();
            next.resize(n);
            std::vector<int> key;
            for (int i = 0; i < n; ++i) {
                key.clear();
                key.push_back(old[i]);
                gr.for_neighbors0(i, [&](int w) { key.push_back(old[w]); });
                std::sort(key.begin() + 1, key.end());
                auto [it, fresh] = dict.try_emplace(key, static_cast<int>(dict.size()));
                (void)fresh;
                next[i] = it->second;
            }
        };
        std::vector<int> ng, nh;
        relabel(g_, cg, ng);
        relabel(h_, ch, nh);
        cg = std::move(ng);
        ch = std::move(nh);
        return static_cast<int>(dict.size());
    }

    static bool histograms_match(const std::vector<int>& cg, const std::vector<int>& ch,
                                 int ncolors) {
        std::vector<int> count(ncolors, 0);
        for (int c : cg) ++count[c];
        for (int c : ch) --count[c];
        for (int c : count)
            if (c != 0) return false;
        return true;
    }

    // Refine both graphs to joint stability; false once histograms diverge.
    bool refine(std::vector<int>& cg, std::vector<int>& ch, int& ncolors) {
        // Normalize incoming colors through the dictionary once.
        int prev = -1;
        while (true) {
            int cur = round(cg, ch);
            if (!histograms_match(cg, ch, cur)) return false;
            if (cur == prev) {
                ncolors = cur;
                return true;
            }
            prev = cur;
        }
    }

    bool discrete(const std::vector<int>& cg, int ncolors) const {
        return ncolors == static_cast<int>(cg.size());
    }

    bool verify(const std::vector<int>& cg, const std::vector<int>& ch) const {
        const int n = g_.node_count();
        std::vector<int> where(n, -1);
        for (int i = 0; i < n; ++i) where[ch[i]] = i;
        std::vector<int> map(n);
        for (int i = 0; i < n; ++i) map[i] = where[cg[i]];
        for (int i = 0; i < n; ++i) {
            bool ok = true;
            g_.for_neighbors0(i, [&](int j) {
                if (!h_.adj0(map[i], map[j])) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    bool search(std::vector<int> cg, std::vector<int> ch) {
        if (++nodes_ > budget_) throw BudgetHit{};
        int ncolors = 0;
        if (!refine(cg, ch, ncolors)) return false;
        if (discrete(cg, ncolors)) return verify(cg, ch);

        // Smallest non-singleton cell, lowest color id on ties.
        std::vector<int> count(ncolors, 0);
        for (int c : cg) ++count[c];
        int cell = -1;
        for (int c = 0; c < ncolors; ++c)
            if (count[c] >= 2 && (cell < 0 || count[c] < count[cell])) cell = c;

        int v = -1;
        for (int i = 0; i < g_.node_count(); ++i)
            if (cg[i] == cell) {
                v = i;
                break;
            }
        const int fresh = ncolors;
        for (int w = 0; w < h_.node_count(); ++w) {
            if (ch[w] != cell) continue;
            std::vector<int> cg2 = cg;
            std::vector<int> ch2 = ch;
            cg2[v] = fresh;
            ch2[w] = fresh;
            if (search(std::move(cg2), std::move(ch2))) return true;
        }
        return false;
    }

    const Graph& g_;
    const Graph& h_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

std::optional<bool> iso_impl(const Graph& g, const Graph& h, const std::vector<int>& colors_g,
                             const std::vector<int>& colors_h, std::uint64_t budget) {
    if (g.node_count() != h.node_count()) return false;
    if (g.edge_count() != h.edge_count()) return false;
    IsoSearch searcher(g, h, budget);
    try {
        return searcher.run(colors_g, colors_h);
    } catch (const BudgetHit&) {
        return std::nullopt;
    }
}

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
    std::vector<int> cg(g.node_count(), 0), ch(h.node_count(), 0);
    return *iso_impl(g, h, cg, ch, UINT64_MAX);
}

bool is_isomorphic_colored(const Graph& g, const Graph& h, const std::vector<int>& colors_g,
                           const std::vector<int>& colors_h) {
    if (colors_g.size() != std::size_t(g.node_count()) ||
        colors_h.size() != std::size_t(h.node_count()))
        throw std::invalid_argument("is_isomorphic_colored: color vector size mismatch");
    return *iso_impl(g, h, colors_g, colors_h, UINT64_MAX);
}

bool is_rooted_isomorphic(const Graph& g, const Graph& h) {
    if (g.node_count() == 0 || h.node_count() == 0)
        return g.node_count() == h.node_count();
    std::vector<int> cg(g.node_count(), 0), ch(h.node_count(), 0);
    cg[0] = 1;
    ch[0] = 1;
    return *iso_impl(g, h, cg, ch, UINT64_MAX);
}

std::optional<bool> is_isomorphic_budgeted(const Graph& g, const Graph& h,
                                           std::uint64_t max_nodes) {
    std::vector<int> cg(g.node_count(), 0), ch(h.node_count(), 0);
    return iso_impl(g, h, cg, ch, max_nodes);
}

}  // namespace grex

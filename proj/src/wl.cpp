#include "grex/wl.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "grex/parallel.hpp"

namespace grex {

namespace {

// Update-record tags keep the encodings of different color kinds disjoint.
constexpr std::uint8_t kTagNode = 'N';
constexpr std::uint8_t kTagTupleInit = 'I';
constexpr std::uint8_t kTagTupleUpdate = 'U';
constexpr std::uint8_t kTagFwlInner = 'F';

const Digest128 kUniformInit = hash_string("wl-uniform-initial-color");

struct HashCombine {
    Digest128 operator()(const ByteSink& sink) const { return sink.digest(); }
};

// Exact interned identifiers; only meaningful within one run.
struct InternCombine {
    std::unordered_map<std::string, std::uint64_t>* dict;

    Digest128 operator()(const ByteSink& sink) const {
        std::string key(sink.bytes().begin(), sink.bytes().end());
        auto [it, inserted] = dict->try_emplace(std::move(key), dict->size());
        (void)inserted;
        return Digest128{0, it->second};
    }
};

struct Scratch {
    ByteSink sink;
    ByteSink inner_sink;
    std::vector<Digest128> buf;
    std::vector<Digest128> inner;
};

struct RoundStats {
    Digest128 histogram;
    std::size_t distinct = 0;
};

RoundStats summarize(const std::vector<Digest128>& colors, std::vector<Digest128>& scratch) {
    scratch = colors;
    std::sort(scratch.begin(), scratch.end());
    RoundStats st;
    st.distinct = 0;
    for (std::size_t i = 0; i < scratch.size(); ++i)
        if (i == 0 || scratch[i] != scratch[i - 1]) ++st.distinct;
    st.histogram = murmur3_128(scratch.data(), scratch.size() * sizeof(Digest128));
    return st;
}

// ---------------------------------------------------------------------------
// node-level refinement (1-WL)

template <class Combine>
void node_update_range(const Graph& g, const std::vector<Digest128>& prev,
                       std::vector<Digest128>& next, std::int64_t b, std::int64_t e,
                       Combine& comb, Scratch& s) {
    for (std::int64_t i = b; i < e; ++i) {
        s.sink.clear();
        s.sink.put_u8(kTagNode);
        s.sink.put_digest(prev[i]);
        s.buf.clear();
        g.for_neighbors0(static_cast<int>(i), [&](int w) { s.buf.push_back(prev[w]); });
        std::sort(s.buf.begin(), s.buf.end());
        s.sink.put_digests(s.buf);
        next[i] = comb(s.sink);
    }
}

// ---------------------------------------------------------------------------
// tuple-level refinement (k-WL and k-FWL)

struct TupleContext {
    const Graph* g = nullptr;
    int n = 0;
    int k = 0;
    bool folklore = false;
    std::size_t count = 0;
    std::vector<std::size_t> stride;  // stride[j] moves position j by one node

    void decode(std::size_t idx, int* u) const {
        for (int j = 0; j < k; ++j) u[j] = static_cast<int>((idx / stride[j]) % n);
    }
};

TupleContext make_tuple_context(const Graph& g, int k, bool folklore, std::uint64_t budget) {
    TupleContext ctx;
    ctx.g = &g;
    ctx.n = g.node_count();
    ctx.k = k;
    ctx.folklore = folklore;
    ctx.stride.assign(k, 1);
    std::size_t count = 1;
    for (int j = k - 1; j >= 0; --j) {
        ctx.stride[j] = count;
        if (ctx.n > 0 && count > budget / ctx.n)
            throw ResourceError("k-WL: n^k tuple table exceeds the operation budget");
        count *= std::size_t(ctx.n);
    }
    ctx.count = count;
    return ctx;
}

template <class Combine>
void tuple_init_range(const TupleContext& ctx, std::vector<Digest128>& colors, std::int64_t b,
                      std::int64_t e, Combine& comb, Scratch& s) {
    int u[8];
    const Graph& g = *ctx.g;
    for (std::int64_t idx = b; idx < e; ++idx) {
        ctx.decode(std::size_t(idx), u);
        s.sink.clear();
        s.sink.put_u8(kTagTupleInit);
        s.sink.put_u8(static_cast<std::uint8_t>(ctx.k));
        // Ordered isomorphism type: equality and adjacency pattern.
        for (int i = 0; i < ctx.k; ++i)
            for (int j = i + 1; j < ctx.k; ++j) {
                std::uint8_t eq = u[i] == u[j];
                std::uint8_t adj = eq ? 0 : static_cast<std::uint8_t>(g.adj0(u[i], u[j]));
                s.sink.put_u8(static_cast<std::uint8_t>((eq << 1) | adj));
            }
        colors[idx] = comb(s.sink);
    }
}

template <class Combine>
void tuple_update_range(const TupleContext& ctx, const std::vector<Digest128>& prev,
                        std::vector<Digest128>& next, std::int64_t b, std::int64_t e,
                        Combine& comb, Scratch& s) {
    int u[8];
    const int n = ctx.n;
    for (std::int64_t idx = b; idx < e; ++idx) {
        ctx.decode(std::size_t(idx), u);
        s.sink.clear();
        s.sink.put_u8(kTagTupleUpdate);
        s.sink.put_digest(prev[idx]);
        if (!ctx.folklore) {
            // Position-j neighborhood: multiset over all single-node
            // replacements at position j; positions stay distinguished.
            for (int j = 0; j < ctx.k; ++j) {
                const std::size_t base = std::size_t(idx) - std::size_t(u[j]) * ctx.stride[j];
                s.buf.resize(n);
                for (int w = 0; w < n; ++w) s.buf[w] = prev[base + std::size_t(w) * ctx.stride[j]];
                std::sort(s.buf.begin(), s.buf.end());
                s.sink.put_digests(s.buf);
            }
        } else {
            // Folklore neighborhood: one multiset over nodes w of the
            // ordered tuple of colors after substituting w at each position.
            s.inner.resize(n);
            for (int w = 0; w < n; ++w) {
                s.inner_sink.clear();
                s.inner_sink.put_u8(kTagFwlInner);
                for (int j = 0; j < ctx.k; ++j) {
                    const std::size_t base = std::size_t(idx) - std::size_t(u[j]) * ctx.stride[j];
                    s.inner_sink.put_digest(prev[base + std::size_t(w) * ctx.stride[j]]);
                }
                s.inner[w] = comb(s.inner_sink);
            }
            std::sort(s.inner.begin(), s.inner.end());
            s.sink.put_digests(s.inner);
        }
        next[idx] = comb(s.sink);
    }
}

// ---------------------------------------------------------------------------
// shared driver: runs rounds with freeze-on-stability semantics.
//
// The final coloring is the one at round t-1, where t >= 2 is the first
// round whose color-class count matches round t-1's. Round 1 always runs,
// so the final colors carry at least one aggregation step and separate-run
// digests of non-equivalent graphs differ.

struct DriverResult {
    std::vector<Digest128> colors;
    ColorRefinementResult summary;
};

template <class UpdateFn, class SideCheck>
DriverResult run_rounds(std::size_t count, std::vector<Digest128> colors, const WlConfig& cfg,
                        std::uint64_t ops_used, UpdateFn&& update, SideCheck&& side_check) {
    if (cfg.max_iterations && *cfg.max_iterations < 1)
        throw std::invalid_argument("wl: max_iterations must be >= 1");

    std::vector<Digest128> scratch;
    std::vector<Digest128> next(count);
    RoundStats prev_stats = summarize(colors, scratch);
    std::size_t last_distinct = prev_stats.distinct;

    DriverResult out;
    out.summary.per_round_hashes.push_back(prev_stats.histogram);
    if (side_check(colors)) {  // verdict callbacks may stop the run early
        out.colors = std::move(colors);
        out.summary.stable_histogram_hash = prev_stats.histogram;
        return out;
    }

    int iterations = 0;
    for (int t = 1;; ++t) {
        if (cfg.max_iterations && iterations >= *cfg.max_iterations) break;
        if (ops_used + count > cfg.op_budget)
            throw ResourceError("wl: operation budget exhausted after " +
                                std::to_string(iterations) + " rounds");
        ops_used += count;
        update(colors, next);
        RoundStats stats = summarize(next, scratch);
        colors.swap(next);
        prev_stats = stats;
        out.summary.per_round_hashes.push_back(stats.histogram);
        ++iterations;
        if (t >= 2 && stats.distinct == last_distinct) {
            // The partition stopped refining; this round's colors absorb the
            // stable quotient and are the final coloring. Later rounds
            // would return it unchanged, hence the echoed digest.
            out.summary.stable = true;
            out.summary.per_round_hashes.push_back(stats.histogram);
            break;
        }
        last_distinct = stats.distinct;
        if (side_check(colors)) break;
    }

    out.summary.iterations_used = iterations;
    out.summary.stable_histogram_hash = prev_stats.histogram;
    out.colors = std::move(colors);
    return out;
}

const auto no_side_check = [](const std::vector<Digest128>&) { return false; };

// ---------------------------------------------------------------------------

template <class Combine>
DriverResult refine_nodes(const Graph& g, const WlConfig& cfg, Combine comb,
                          const std::vector<Digest128>* init,
                          const std::function<bool(const std::vector<Digest128>&)>& side_check) {
    const std::size_t n = std::size_t(g.node_count());
    std::vector<Digest128> colors;
    if (init) {
        if (init->size() != n)
            throw std::invalid_argument("wl: initial_colors size mismatch");
        colors = *init;
    } else {
        colors.assign(n, kUniformInit);
    }
    const int workers = cfg.exact_colors ? 1 : std::max(1, cfg.workers);
    std::vector<Scratch> scratches(std::max(workers, 1));
    auto update = [&](const std::vector<Digest128>& prev, std::vector<Digest128>& next) {
        parallel_for(workers, static_cast<std::int64_t>(n),
                     [&](std::int64_t b, std::int64_t e, int w) {
                         node_update_range(g, prev, next, b, e, comb, scratches[w]);
                     });
    };
    return run_rounds(n, std::move(colors), cfg, n, update, side_check);
}

template <class Combine>
DriverResult refine_tuples(const Graph& g, const WlConfig& cfg, bool folklore, Combine comb,
                           const std::function<bool(const std::vector<Digest128>&)>& side_check) {
    if (cfg.k < 2) throw std::invalid_argument("wl: tuple methods need k >= 2");
    if (cfg.k > 8) throw std::invalid_argument("wl: k > 8 unsupported");
    if (cfg.initial_colors)
        throw std::invalid_argument("wl: initial_colors apply to node-level methods only");
    TupleContext ctx = make_tuple_context(g, cfg.k, folklore, cfg.op_budget);

    const int workers = cfg.exact_colors ? 1 : std::max(1, cfg.workers);
    std::vector<Scratch> scratches(std::max(workers, 1));
    std::vector<Digest128> colors(ctx.count);
    parallel_for(workers, static_cast<std::int64_t>(ctx.count),
                 [&](std::int64_t b, std::int64_t e, int w) {
                     tuple_init_range(ctx, colors, b, e, comb, scratches[w]);
                 });
    auto update = [&](const std::vector<Digest128>& prev, std::vector<Digest128>& next) {
        parallel_for(workers, static_cast<std::int64_t>(ctx.count),
                     [&](std::int64_t b, std::int64_t e, int w) {
                         tuple_update_range(ctx, prev, next, b, e, comb, scratches[w]);
                     });
    };
    return run_rounds(ctx.count, std::move(colors), cfg, ctx.count, update, side_check);
}

DriverResult refine_dispatch(const Graph& g, const WlConfig& cfg,
                             const std::vector<Digest128>* init_override,
                             const std::function<bool(const std::vector<Digest128>&)>& side_check) {
    const std::vector<Digest128>* init = init_override;
    if (!init && cfg.initial_colors) init = &*cfg.initial_colors;

    std::unordered_map<std::string, std::uint64_t> dict;
    if (cfg.method == WlMethod::WL1) {
        if (cfg.exact_colors) return refine_nodes(g, cfg, InternCombine{&dict}, init, side_check);
        return refine_nodes(g, cfg, HashCombine{}, init, side_check);
    }
    const bool folklore = cfg.method == WlMethod::FWLk;
    if (cfg.exact_colors) return refine_tuples(g, cfg, folklore, InternCombine{&dict}, side_check);
    return refine_tuples(g, cfg, folklore, HashCombine{}, side_check);
}

// Side histograms for union-based verdicts. side[] holds 0 (g), 1 (h) or
// 2 (mixed tuples, ignored).
bool sides_differ(const std::vector<Digest128>& colors, const std::vector<std::uint8_t>& side,
                  std::size_t size_g, std::size_t size_h) {
    if (size_g != size_h) return true;
    std::vector<Digest128> a, b;
    a.reserve(size_g);
    b.reserve(size_h);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (side[i] == 0)
            a.push_back(colors[i]);
        else if (side[i] == 1)
            b.push_back(colors[i]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a != b;
}

}  // namespace

ColorRefinementResult refine(const Graph& g, const WlConfig& cfg) {
    return refine_dispatch(g, cfg, nullptr, no_side_check).summary;
}

ColorRefinementResult refine_1wl(const Graph& g, const WlConfig& cfg) {
    if (cfg.method != WlMethod::WL1) throw std::invalid_argument("refine_1wl: wrong method");
    return refine(g, cfg);
}

ColorRefinementResult refine_kwl(const Graph& g, const WlConfig& cfg) {
    if (cfg.method != WlMethod::WLk) throw std::invalid_argument("refine_kwl: wrong method");
    return refine(g, cfg);
}

ColorRefinementResult refine_kfwl(const Graph& g, const WlConfig& cfg) {
    if (cfg.method != WlMethod::FWLk) throw std::invalid_argument("refine_kfwl: wrong method");
    return refine(g, cfg);
}

bool distinguishes_with_initial(const WlConfig& cfg, const Graph& g, const Graph& h,
                                const std::vector<Digest128>& init_g,
                                const std::vector<Digest128>& init_h) {
    if (cfg.method != WlMethod::WL1)
        throw std::invalid_argument("distinguishes_with_initial: node-level methods only");
    Graph u = disjoint_union(g, h);
    std::vector<Digest128> init = init_g;
    init.insert(init.end(), init_h.begin(), init_h.end());

    const std::size_t ng = std::size_t(g.node_count());
    std::vector<std::uint8_t> side(u.node_count());
    for (std::size_t i = 0; i < side.size(); ++i) side[i] = i < ng ? 0 : 1;

    bool differ = false;
    auto check = [&](const std::vector<Digest128>& colors) {
        differ = sides_differ(colors, side, ng, side.size() - ng);
        return differ;
    };
    refine_dispatch(u, cfg, &init, check);
    return differ;
}

bool distinguishes(const WlConfig& cfg, const Graph& g, const Graph& h) {
    if (cfg.initial_colors)
        throw std::invalid_argument("distinguishes: pass per-graph colors via "
                                    "distinguishes_with_initial");
    if (cfg.method == WlMethod::WL1) {
        std::vector<Digest128> ig(g.node_count(), kUniformInit);
        std::vector<Digest128> ih(h.node_count(), kUniformInit);
        return distinguishes_with_initial(cfg, g, h, ig, ih);
    }

    Graph u = disjoint_union(g, h);
    const int ng = g.node_count();
    TupleContext ctx =
        make_tuple_context(u, cfg.k, cfg.method == WlMethod::FWLk, cfg.op_budget);
    std::vector<std::uint8_t> side(ctx.count);
    std::size_t size_g = 0, size_h = 0;
    {
        int u_coords[8];
        for (std::size_t idx = 0; idx < ctx.count; ++idx) {
            ctx.decode(idx, u_coords);
            bool any_g = false, any_h = false;
            for (int j = 0; j < cfg.k; ++j) (u_coords[j] < ng ? any_g : any_h) = true;
            side[idx] = any_g && any_h ? 2 : (any_g ? 0 : 1);
            if (side[idx] == 0) ++size_g;
            if (side[idx] == 1) ++size_h;
        }
    }

    bool differ = false;
    auto check = [&](const std::vector<Digest128>& colors) {
        differ = sides_differ(colors, side, size_g, size_h);
        return differ;
    };
    refine_dispatch(u, cfg, nullptr, check);
    return differ;
}

Digest128 wl_signature(const Graph& g, const WlConfig& cfg) {
    if (cfg.exact_colors)
        throw std::invalid_argument("wl_signature: interned colors are run-local; "
                                    "use hash colors");
    return refine(g, cfg).stable_histogram_hash;
}

bool distinguishes_separate(const WlConfig& cfg, const Graph& g, const Graph& h) {
    return wl_signature(g, cfg) != wl_signature(h, cfg);
}

}  // namespace grex

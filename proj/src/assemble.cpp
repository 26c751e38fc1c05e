#include "grex/assemble.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "grex/enumerate.hpp"
#include "grex/generators.hpp"
#include "grex/graph6.hpp"
#include "grex/isomorphism.hpp"
#include "grex/methods.hpp"

namespace grex {

namespace {

// Portable Fisher-Yates so dataset selection is reproducible everywhere.
template <class T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng() % i;
        std::swap(v[i - 1], v[j]);
    }
}

struct CandidatePair {
    Graph g, h;
    std::string subcategory;
    std::string difficulty = "1WL";
    // graph identities for the no-reuse rule; empty = always fresh
    std::string key_g, key_h;
};

struct Auditor {
    std::uint64_t iso_budget;
    std::vector<std::string>* notes;

    bool passes(CandidatePair& cand, AuditRecord& audit, const std::string& label) const {
        audit.wl1_indistinguishable = !distinguishes(WlConfig::wl1(), cand.g, cand.h);
        if (!audit.wl1_indistinguishable) {
            notes->push_back(label + ": dropped, 1-WL separates the pair");
            return false;
        }
        auto iso = is_isomorphic_budgeted(cand.g, cand.h, iso_budget);
        if (!iso.has_value()) {
            notes->push_back(label + ": dropped, isomorphism audit exceeded its budget");
            return false;
        }
        audit.non_isomorphic = !*iso;
        if (!audit.non_isomorphic) {
            notes->push_back(label + ": dropped, graphs are isomorphic");
            return false;
        }
        return true;
    }
};

// Draw up to `want` audited pairs (want < 0 takes all), never reusing a
// graph, in seeded order.
void draw(std::vector<CandidatePair> pool, int want, std::mt19937_64& rng,
          const std::string& category, const Auditor& audit, std::set<std::string>& used,
          std::vector<GraphPair>& out, std::vector<std::string>& notes, int& shortfall) {
    seeded_shuffle(pool, rng);
    int taken = 0;
    for (auto& cand : pool) {
        if (want >= 0 && taken >= want) break;
        if (!cand.key_g.empty() && (used.count(cand.key_g) || used.count(cand.key_h))) continue;
        AuditRecord record;
        if (!audit.passes(cand, record, category + "/" + cand.subcategory)) continue;
        GraphPair pair;
        pair.g = std::move(cand.g);
        pair.h = std::move(cand.h);
        pair.category = category;
        pair.subcategory = cand.subcategory;
        pair.wl_difficulty = cand.difficulty;
        pair.audit = record;
        out.push_back(std::move(pair));
        if (!cand.key_g.empty()) {
            used.insert(cand.key_g);
            used.insert(cand.key_h);
        }
        ++taken;
    }
    if (want >= 0 && taken < want) {
        shortfall += want - taken;
        notes.push_back(category + ": short by " + std::to_string(want - taken) + " of " +
                        std::to_string(want) + " requested pairs");
    }
}

std::vector<Graph> search_pool(int max_n, int min_n = 4) {
    std::vector<Graph> graphs;
    for (int n = min_n; n <= max_n; ++n)
        for (auto& g : enumerate_nonisomorphic(n)) graphs.push_back(std::move(g));
    return graphs;
}

// Candidate pairs from signature collisions over a graph pool; keys are the
// graph6 strings, so the no-reuse rule works across subcategories.
std::vector<CandidatePair> collision_candidates(const std::vector<Graph>& graphs,
                                                const MethodSpec& method,
                                                const std::string& subcategory) {
    std::vector<CandidatePair> pool;
    for (auto [i, j] : find_collision_pairs(graphs, method)) {
        CandidatePair cand;
        cand.g = graphs[i];
        cand.h = graphs[j];
        cand.subcategory = subcategory;
        cand.key_g = write_graph6(graphs[i]);
        cand.key_h = write_graph6(graphs[j]);
        pool.push_back(std::move(cand));
    }
    return pool;
}

AssembleResult assemble_basic(const AssembleConfig& cfg) {
    AssembleResult res;
    auto graphs = search_pool(cfg.max_n);
    // Basic excludes regular graphs; buckets never mix regular with
    // non-regular (the degree histogram is part of the 1-WL signature).
    std::vector<Graph> nonregular;
    for (auto& g : graphs)
        if (!regular_degree(g)) nonregular.push_back(std::move(g));
    auto pool = collision_candidates(nonregular, WlConfig::wl1(), "1wl_collision");

    std::mt19937_64 rng(cfg.seed);
    Auditor audit{cfg.audit_iso_budget, &res.notes};
    std::set<std::string> used;
    draw(std::move(pool), cfg.count, rng, "basic", audit, used, res.pairs, res.notes,
         res.shortfall);
    return res;
}

AssembleResult assemble_regular_simple(const AssembleConfig& cfg) {
    AssembleResult res;
    std::vector<Graph> regular;
    for (auto& g : search_pool(cfg.max_n))
        if (regular_degree(g) && !verify_srg(g)) regular.push_back(std::move(g));

    // Same parameters = same (n, degree); such graphs are 1-WL-equivalent.
    std::vector<CandidatePair> pool;
    for (std::size_t i = 0; i < regular.size(); ++i)
        for (std::size_t j = i + 1; j < regular.size(); ++j) {
            if (regular[i].node_count() != regular[j].node_count()) continue;
            if (regular_degree(regular[i]) != regular_degree(regular[j])) continue;
            CandidatePair cand;
            cand.g = regular[i];
            cand.h = regular[j];
            cand.subcategory = "simple_regular";
            cand.key_g = write_graph6(regular[i]);
            cand.key_h = write_graph6(regular[j]);
            pool.push_back(std::move(cand));
        }

    std::mt19937_64 rng(cfg.seed);
    Auditor audit{cfg.audit_iso_budget, &res.notes};
    std::set<std::string> used;
    draw(std::move(pool), cfg.count, rng, "regular_simple", audit, used, res.pairs,
         res.notes, res.shortfall);
    return res;
}

// Shared by the SRG / 4VC / DRG categories: keep verified sources, group by
// the certificate, pair within groups.
template <class Verify, class KeyFn>
AssembleResult assemble_catalog_category(const AssembleConfig& cfg, const std::string& category,
                                         const std::string& difficulty, Verify&& verify,
                                         KeyFn&& key_fn, bool include_builtin) {
    AssembleResult res;
    std::vector<Graph> sources = cfg.catalog;
    if (include_builtin)
        for (auto& entry : builtin_srg_catalog()) sources.push_back(std::move(entry.graph));

    std::map<std::string, std::vector<Graph>> groups;
    for (auto& g : sources) {
        auto key = key_fn(g);
        if (!verify(g) || key.empty()) {
            res.notes.push_back(category + ": rejected a source graph (certificate failed)");
            continue;
        }
        auto& group = groups[key];
        bool dup = false;
        for (const auto& seen : group)
            if (is_isomorphic(g, seen)) {
                dup = true;
                break;
            }
        if (dup)
            res.notes.push_back(category + ": skipped an isomorphic duplicate source");
        else
            group.push_back(std::move(g));
    }

    std::vector<CandidatePair> pool;
    for (const auto& [key, group] : groups)
        for (std::size_t i = 0; i < group.size(); ++i)
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                CandidatePair cand;
                cand.g = group[i];
                cand.h = group[j];
                cand.subcategory = key;
                cand.difficulty = difficulty;
                cand.key_g = write_graph6(group[i]);
                cand.key_h = write_graph6(group[j]);
                pool.push_back(std::move(cand));
            }

    std::mt19937_64 rng(cfg.seed);
    Auditor audit{cfg.audit_iso_budget, &res.notes};
    std::set<std::string> used;
    draw(std::move(pool), cfg.count, rng, category, audit, used, res.pairs, res.notes,
         res.shortfall);
    return res;
}

std::string srg_key(const Graph& g) {
    auto p = verify_srg(g);
    if (!p) return "";
    return "srg(" + std::to_string(p->v) + "," + std::to_string(p->k) + "," +
           std::to_string(p->lambda) + "," + std::to_string(p->mu) + ")";
}

std::string drg_key(const Graph& g) {
    auto arr = verify_drg(g);
    if (!arr) return "";
    std::string key = "drg{";
    for (std::size_t i = 0; i < arr->b.size(); ++i)
        key += (i ? "," : "") + std::to_string(arr->b[i]);
    key += ";";
    for (std::size_t i = 0; i < arr->c.size(); ++i)
        key += (i ? "," : "") + std::to_string(arr->c[i]);
    key += "}-n" + std::to_string(g.node_count());
    return key;
}

AssembleResult assemble_extension(const AssembleConfig& cfg) {
    AssembleResult res;
    auto graphs = search_pool(cfg.max_n);

    std::mt19937_64 rng(cfg.seed);
    Auditor audit{cfg.audit_iso_budget, &res.notes};
    std::set<std::string> used;

    // Scarcest pools first: the no-reuse rule would otherwise starve them
    // (every s4- or n1-indistinguishable pair is also s3-indistinguishable).
    draw(collision_candidates(graphs, ExtensionConfig::s(4), "s4_indistinguishable"),
         cfg.ext_s4, rng, "extension", audit, used, res.pairs, res.notes, res.shortfall);
    draw(collision_candidates(graphs, ExtensionConfig::n(1), "n1_indistinguishable"),
         cfg.ext_n1, rng, "extension", audit, used, res.pairs, res.notes, res.shortfall);
    draw(collision_candidates(graphs, ExtensionConfig::s(3), "s3_indistinguishable"),
         cfg.ext_s3, rng, "extension", audit, used, res.pairs, res.notes, res.shortfall);

    // Virtual-node constructions. An apex node on top of a same-parameter
    // regular pair, and an apex over the long-cycle / two-cycles pair.
    {
        std::vector<Graph> regular;
        for (const auto& g : graphs)
            if (regular_degree(g) && g.node_count() == cfg.max_n) regular.push_back(g);
        std::vector<CandidatePair> pool;
        for (std::size_t i = 0; i < regular.size(); ++i)
            for (std::size_t j = i + 1; j < regular.size(); ++j) {
                if (regular_degree(regular[i]) != regular_degree(regular[j])) continue;
                CandidatePair cand;
                cand.g = with_apex(regular[i]);
                cand.h = with_apex(regular[j]);
                cand.subcategory = "apex_regular";
                cand.key_g = write_graph6(cand.g);
                cand.key_h = write_graph6(cand.h);
                pool.push_back(std::move(cand));
            }
        draw(std::move(pool), cfg.ext_apex_regular, rng, "extension", audit, used, res.pairs,
             res.notes, res.shortfall);
    }
    {
        std::vector<CandidatePair> pool;
        for (int l = 3; l <= 3 + std::max(0, cfg.ext_apex_cycles) + 4; ++l) {
            CandidatePair cand;
            cand.g = with_apex(make_cycle(2 * l));
            cand.h = with_apex(disjoint_union(make_cycle(l), make_cycle(l)));
            cand.subcategory = "apex_cycle_pair";
            cand.key_g = write_graph6(cand.g);
            cand.key_h = write_graph6(cand.h);
            pool.push_back(std::move(cand));
        }
        draw(std::move(pool), cfg.ext_apex_cycles, rng, "extension", audit, used, res.pairs,
             res.notes, res.shortfall);
    }
    return res;
}

AssembleResult assemble_cfi(const AssembleConfig& cfg) {
    AssembleResult res;
    std::vector<CandidatePair> pool;
    for (int n = cfg.cfi_min_backbone; n <= cfg.cfi_max_backbone; ++n) {
        for (const auto& bb : enumerate_nonisomorphic(n)) {
            if (!is_connected(bb) || min_degree(bb) < 2) continue;
            if (cfi_node_count(bb) > cfg.cfi_max_nodes) {
                res.notes.push_back("cfi: skipped a " + std::to_string(n) +
                                    "-node backbone (instance above " +
                                    std::to_string(cfg.cfi_max_nodes) + " nodes)");
                continue;
            }
            CandidatePair cand;
            cand.g = gen_cfi({bb, false, 0});
            cand.h = gen_cfi({bb, true, 0});
            cand.subcategory = "backbone_n" + std::to_string(n);
            cand.difficulty = cfi_difficulty_tag(bb);
            cand.key_g = write_graph6(cand.g);
            cand.key_h = write_graph6(cand.h);
            pool.push_back(std::move(cand));
        }
    }
    std::mt19937_64 rng(cfg.seed);
    Auditor audit{cfg.audit_iso_budget, &res.notes};
    std::set<std::string> used;
    draw(std::move(pool), cfg.count, rng, "cfi", audit, used, res.pairs, res.notes,
         res.shortfall);
    return res;
}

}  // namespace

Category parse_category(const std::string& name) {
    if (name == "basic") return Category::Basic;
    if (name == "regular-simple" || name == "regular_simple") return Category::RegularSimple;
    if (name == "srg") return Category::Srg;
    if (name == "4vc" || name == "fourvc") return Category::FourVC;
    if (name == "drg") return Category::Drg;
    if (name == "extension") return Category::Extension;
    if (name == "cfi") return Category::Cfi;
    throw std::invalid_argument("unknown category '" + name +
                                "' (basic, regular-simple, srg, 4vc, drg, extension, cfi)");
}

std::string category_name(Category cat) {
    switch (cat) {
        case Category::Basic: return "basic";
        case Category::RegularSimple: return "regular_simple";
        case Category::Srg: return "srg";
        case Category::FourVC: return "4vc";
        case Category::Drg: return "drg";
        case Category::Extension: return "extension";
        case Category::Cfi: return "cfi";
    }
    return "?";
}

AssembleResult assemble_category(Category cat, const AssembleConfig& cfg) {
    AssembleResult res;
    switch (cat) {
        case Category::Basic: res = assemble_basic(cfg); break;
        case Category::RegularSimple: res = assemble_regular_simple(cfg); break;
        case Category::Srg:
            res = assemble_catalog_category(
                cfg, "srg", "3WL", [](const Graph& g) { return verify_srg(g).has_value(); },
                srg_key, true);
            break;
        case Category::FourVC:
            res = assemble_catalog_category(
                cfg, "4vc", "3WL", [](const Graph& g) { return verify_4vc(g); }, srg_key, true);
            break;
        case Category::Drg:
            res = assemble_catalog_category(
                cfg, "drg", "3WL", [](const Graph& g) { return verify_drg(g).has_value(); },
                drg_key, true);
            break;
        case Category::Extension: res = assemble_extension(cfg); break;
        case Category::Cfi: res = assemble_cfi(cfg); break;
    }
    // Stable ids in final order.
    const std::string prefix = category_name(cat);
    for (std::size_t i = 0; i < res.pairs.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04zu", i + 1);
        res.pairs[i].pair_id = prefix + "_" + buf;
    }
    return res;
}

}  // namespace grex

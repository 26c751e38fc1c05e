// grex: regenerate expressiveness benchmark graph pairs, run WL-family and
// extension distinguishers over them, and score external model embeddings
// with reliable paired comparisons.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "grex/assemble.hpp"
#include "grex/dataset.hpp"
#include "grex/enumerate.hpp"
#include "grex/generators.hpp"
#include "grex/graph6.hpp"
#include "grex/isomorphism.hpp"
#include "grex/methods.hpp"
#include "grex/parallel.hpp"
#include "grex/rpc.hpp"

using namespace grex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

void emit_line(const std::string& out_path, const std::string& line) {
    if (out_path.empty() || out_path == "-") {
        std::cout << line << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << line << '\n';
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    // csl
    int csl_m = 41, csl_r = 2;
    // cfi
    std::string cfi_backbone;
    bool cfi_twist = false;
    int cfi_twist_edge = 0;
    // category
    std::string category;
    AssembleConfig assemble;
    std::vector<std::string> catalog_files;
    std::string out;
    bool emit_permutations = false;
    int perm_q = 32;
    std::uint64_t perm_seed = 0;
};

int run_generate_csl(const GenerateArgs& a) {
    emit_line(a.out, write_graph6(gen_csl({a.csl_m, a.csl_r})));
    return kExitOk;
}

int run_generate_cfi(const GenerateArgs& a) {
    Graph backbone = parse_graph6(a.cfi_backbone);
    emit_line(a.out, write_graph6(gen_cfi({backbone, a.cfi_twist, a.cfi_twist_edge})));
    return kExitOk;
}

void emit_permutation_file(const std::string& path, const std::vector<GraphPair>& pairs, int q,
                           std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "pair_id,role,copy,base,perm\n";
    auto perm_str = [](const Permutation& p) {
        std::string s;
        for (int v = 1; v <= p.size(); ++v) {
            if (v > 1) s += ' ';
            s += std::to_string(p.map(v));
        }
        return s;
    };
    for (const auto& pair : pairs) {
        std::mt19937_64 rng(seed ^ hash_string(pair.pair_id).lo);
        Permutation pi = Permutation::random(pair.g.node_count(), rng);
        for (int i = 1; i <= q; ++i) {
            Permutation sigma = Permutation::random(pair.g.node_count(), rng);
            Permutation tau = Permutation::random(pair.h.node_count(), rng);
            out << pair.pair_id << ",G," << i << ",g," << perm_str(sigma) << '\n';
            out << pair.pair_id << ",H," << i << ",h," << perm_str(tau) << '\n';
            out << pair.pair_id << ",G_pi," << i << ",g," << perm_str(pi * sigma) << '\n';
        }
    }
}

int run_generate_category(const GenerateArgs& a) {
    AssembleConfig cfg = a.assemble;
    for (const auto& file : a.catalog_files)
        for (auto& g : read_graph6_file(file)) cfg.catalog.push_back(std::move(g));

    auto res = assemble_category(parse_category(a.category), cfg);
    for (const auto& note : res.notes) std::cerr << "note: " << note << '\n';
    if (res.pairs.empty()) {
        std::cerr << "no pairs produced for category " << a.category << '\n';
        return kExitInput;
    }
    write_dataset(a.out, res.pairs);
    if (a.emit_permutations)
        emit_permutation_file(a.out + ".perms.csv", res.pairs, a.perm_q, a.perm_seed);

    std::map<std::string, int> by_sub;
    int audited = 0;
    for (const auto& p : res.pairs) {
        ++by_sub[p.subcategory];
        if (p.audit.wl1_indistinguishable && p.audit.non_isomorphic) ++audited;
    }
    std::cout << "category " << a.category << ": " << res.pairs.size() << " pairs ("
              << audited << " audited ok)\n";
    for (const auto& [sub, count] : by_sub) std::cout << "  " << sub << ": " << count << '\n';
    if (res.shortfall > 0) std::cout << "  shortfall: " << res.shortfall << '\n';
    std::cout << "wrote " << a.out << ".g6, " << a.out << ".json";
    if (a.emit_permutations) std::cout << ", " << a.out << ".perms.csv";
    std::cout << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& file, const std::string& kind) {
    auto graphs = read_graph6_file(file);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        std::cout << "graph " << (i + 1) << ": n=" << g.node_count()
                  << " m=" << g.edge_count();
        auto cert = classify_regularity(g);
        if (kind == "all" || kind == "regular") {
            if (cert.regular_degree)
                std::cout << " regular(k=" << *cert.regular_degree << ")";
            else
                std::cout << " not-regular";
        }
        if ((kind == "all" || kind == "srg") && cert.srg)
            std::cout << " srg(" << cert.srg->v << "," << cert.srg->k << "," << cert.srg->lambda
                      << "," << cert.srg->mu << ")";
        if ((kind == "all" || kind == "4vc") && cert.four_vertex_condition)
            std::cout << " 4vc";
        if ((kind == "all" || kind == "drg") && cert.drg) {
            std::cout << " drg{";
            for (std::size_t j = 0; j < cert.drg->b.size(); ++j)
                std::cout << (j ? "," : "") << cert.drg->b[j];
            std::cout << ";";
            for (std::size_t j = 0; j < cert.drg->c.size(); ++j)
                std::cout << (j ? "," : "") << cert.drg->c[j];
            std::cout << "}";
        }
        std::cout << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// distinguish

struct CategoryCounts {
    int total = 0, distinguished = 0, not_distinguished = 0, skipped = 0;
};

void print_report(const std::map<std::string, CategoryCounts>& report) {
    std::printf("%-16s %8s %14s %18s %8s %9s\n", "category", "total", "distinguished",
                "not_distinguished", "skipped", "accuracy");
    CategoryCounts total;
    auto row = [](const std::string& name, const CategoryCounts& c) {
        double acc = c.total ? 100.0 * c.distinguished / c.total : 0.0;
        std::printf("%-16s %8d %14d %18d %8d %8.1f%%\n", name.c_str(), c.total, c.distinguished,
                    c.not_distinguished, c.skipped, acc);
    };
    for (const auto& [cat, counts] : report) {
        row(cat, counts);
        total.total += counts.total;
        total.distinguished += counts.distinguished;
        total.not_distinguished += counts.not_distinguished;
        total.skipped += counts.skipped;
    }
    if (report.size() > 1) row("TOTAL", total);
}

int run_distinguish(const std::string& method_name_str, const std::string& pairs_file,
                    const std::string& sidecar, int max_iterations, std::uint64_t budget,
                    const std::string& out_csv, const std::string& report_csv) {
    MethodSpec method = parse_method(method_name_str);
    if (auto* wl = std::get_if<WlConfig>(&method)) {
        if (max_iterations > 0) wl->max_iterations = max_iterations;
        wl->op_budget = budget;
    } else if (max_iterations > 0) {
        throw std::invalid_argument("--max-iterations applies to WL methods only");
    }

    auto pairs = read_dataset(pairs_file, sidecar);
    struct Row {
        std::string outcome;
        std::string error;
    };
    std::vector<Row> rows(pairs.size());
    const int workers = default_workers();
    parallel_for(workers, static_cast<std::int64_t>(pairs.size()),
                 [&](std::int64_t b, std::int64_t e, int) {
                     for (std::int64_t i = b; i < e; ++i) {
                         try {
                             rows[i].outcome = method_distinguishes(method, pairs[i].g, pairs[i].h)
                                                   ? "distinguished"
                                                   : "not_distinguished";
                         } catch (const ResourceError& ex) {
                             rows[i].outcome = "skipped";
                             rows[i].error = ex.what();
                         }
                     }
                 });

    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a].pair_id < pairs[b].pair_id; });

    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw std::runtime_error("cannot write " + out_csv);
        out << "pair_id,method,outcome\n";
        for (auto i : order)
            out << pairs[i].pair_id << ',' << method_name_str << ',' << rows[i].outcome << '\n';
    }

    std::map<std::string, CategoryCounts> report;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto& c = report[pairs[i].category];
        ++c.total;
        if (rows[i].outcome == "distinguished") ++c.distinguished;
        if (rows[i].outcome == "not_distinguished") ++c.not_distinguished;
        if (rows[i].outcome == "skipped") {
            ++c.skipped;
            std::cerr << pairs[i].pair_id << ": skipped (" << rows[i].error << ")\n";
        }
    }
    std::printf("method: %s\n", method_name_str.c_str());
    print_report(report);

    if (!report_csv.empty()) {
        std::ofstream out(report_csv);
        if (!out) throw std::runtime_error("cannot write " + report_csv);
        out << "category,total,distinguished,not_distinguished,skipped\n";
        for (const auto& [cat, c] : report)
            out << cat << ',' << c.total << ',' << c.distinguished << ',' << c.not_distinguished
                << ',' << c.skipped << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// rpc

int run_rpc(const std::string& embeddings, int q, double alpha, double threshold_override,
            const std::string& mode, int p, const std::string& out_csv) {
    auto table = read_embedding_csv(embeddings);
    RpcConfig cfg;
    cfg.q = q;
    cfg.d = table.dim;
    cfg.alpha = alpha;
    if (threshold_override > 0) cfg.manual_threshold = threshold_override;

    if (mode == "rpc")
        std::printf("threshold: %.2f (q=%d, d=%d, alpha=%g%s)\n", rpc_threshold(cfg), cfg.q,
                    cfg.d, cfg.alpha, cfg.manual_threshold ? ", manual" : "");

    std::vector<std::string> ids;
    for (const auto& [pair_id, _] : table.pairs) ids.push_back(pair_id);

    std::vector<VerdictRow> rows;
    std::vector<std::pair<std::string, std::string>> errors;
    for (const auto& id : ids) {
        try {
            RpcVerdict v;
            if (mode == "rpc") {
                v = rpc_decide(table.pairs.at(id), cfg);
            } else {
                RapcConfig rc{p, cfg.q, cfg.d, 0};
                v = rapc_decide(table.pairs.at(id), rc);
            }
            rows.push_back({id, v});
        } catch (const PairDataError& ex) {
            errors.emplace_back(id, ex.what());
        }
    }
    if (!out_csv.empty()) write_verdict_csv(out_csv, rows);

    int dist = 0, not_dist = 0, unreliable = 0;
    for (const auto& r : rows) {
        if (r.verdict.outcome == RpcOutcome::distinguished) ++dist;
        if (r.verdict.outcome == RpcOutcome::not_distinguished) ++not_dist;
        if (r.verdict.outcome == RpcOutcome::unreliable) ++unreliable;
    }
    std::printf("pairs: %zu  distinguished: %d  not_distinguished: %d  unreliable: %d  errors: %zu\n",
                rows.size() + errors.size(), dist, not_dist, unreliable, errors.size());
    for (const auto& [id, what] : errors) std::cerr << id << ": " << what << '\n';
    if (rows.empty() && !errors.empty()) return kExitInput;
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reduce-seeds

int run_reduce(const std::vector<std::string>& files, const std::string& sidecar,
               const std::string& pairs_file, const std::string& out_csv) {
    if (files.empty()) throw std::invalid_argument("reduce-seeds: no verdict files given");
    std::vector<std::vector<VerdictRow>> runs;
    for (const auto& f : files) runs.push_back(read_verdict_csv(f));

    std::set<std::string> ids;
    for (const auto& r : runs[0]) ids.insert(r.pair_id);
    for (const auto& run : runs) {
        std::set<std::string> other;
        for (const auto& r : run) other.insert(r.pair_id);
        if (other != ids)
            throw std::runtime_error("reduce-seeds: verdict files cover different pair sets");
    }

    std::map<std::string, std::string> category;
    if (!pairs_file.empty())
        for (const auto& p : read_dataset(pairs_file, sidecar)) category[p.pair_id] = p.category;

    // best-of-seeds: distinguished under any seed counts, but a pair that
    // ever failed the reliability check is excluded from the union
    std::map<std::string, std::string> final_outcome;
    for (const auto& id : ids) final_outcome[id] = "not_distinguished";
    for (const auto& run : runs)
        for (const auto& r : run) {
            auto& slot = final_outcome[r.pair_id];
            if (r.verdict.outcome == RpcOutcome::unreliable)
                slot = "unreliable";
            else if (r.verdict.outcome == RpcOutcome::distinguished && slot != "unreliable")
                slot = "distinguished";
        }

    std::map<std::string, CategoryCounts> report;
    for (const auto& [id, outcome] : final_outcome) {
        auto cat_it = category.find(id);
        auto& c = report[cat_it == category.end() ? "all" : cat_it->second];
        ++c.total;
        if (outcome == "distinguished") ++c.distinguished;
        if (outcome == "not_distinguished") ++c.not_distinguished;
        if (outcome == "unreliable") ++c.skipped;  // flagged and excluded
    }
    std::printf("seeds: %zu\n", runs.size());
    std::printf("%-16s %8s %14s %18s %10s\n", "category", "total", "distinguished",
                "not_distinguished", "unreliable");
    for (const auto& [cat, c] : report)
        std::printf("%-16s %8d %14d %18d %10d\n", cat.c_str(), c.total, c.distinguished,
                    c.not_distinguished, c.skipped);

    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw std::runtime_error("cannot write " + out_csv);
        out << "pair_id,outcome\n";
        for (const auto& [id, outcome] : final_outcome) out << id << ',' << outcome << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

int run_stats(const std::string& pairs_file, const std::string& sidecar,
              const std::string& out_csv) {
    auto pairs = read_dataset(pairs_file, sidecar);
    // histograms per category over both graphs of each pair
    std::map<std::string, std::map<std::string, std::map<long, long>>> hist;
    for (const auto& p : pairs) {
        for (const Graph* g : {&p.g, &p.h}) {
            auto& h = hist[p.category];
            h["nodes"][g->node_count()] += 1;
            h["edges"][g->edge_count()] += 1;
            auto dm = all_pairs_distances(*g);
            h["diameter"][dm.connected ? dm.diameter : -1] += 1;
        }
    }
    for (const auto& [cat, metrics] : hist) {
        std::printf("category %s\n", cat.c_str());
        for (const auto& [metric, values] : metrics) {
            long lo = values.begin()->first;
            long hi = values.rbegin()->first;
            std::printf("  %-9s range %ld..%ld |", metric.c_str(), lo, hi);
            for (const auto& [value, count] : values) {
                if (value < 0)
                    std::printf(" inf:%ld", count);
                else
                    std::printf(" %ld:%ld", value, count);
            }
            std::printf("\n");
        }
    }
    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw std::runtime_error("cannot write " + out_csv);
        out << "category,metric,value,count\n";
        for (const auto& [cat, metrics] : hist)
            for (const auto& [metric, values] : metrics)
                for (const auto& [value, count] : values) {
                    out << cat << ',' << metric << ',';
                    if (value < 0)
                        out << "inf";
                    else
                        out << value;
                    out << ',' << count << '\n';
                }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph expressiveness benchmark toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    std::string verify_file, verify_kind = "all";
    std::string dist_method, dist_pairs, dist_sidecar, dist_out, dist_report;
    int dist_max_iter = 0;
    std::uint64_t dist_budget = 100'000'000;
    std::string rpc_embeddings, rpc_mode = "rpc", rpc_out;
    int rpc_q = 32, rapc_p = 1;
    double rpc_alpha = 0.95, rpc_thresh = 0;
    std::vector<std::string> reduce_files;
    std::string reduce_sidecar, reduce_pairs, reduce_out;
    std::string stats_pairs, stats_sidecar, stats_out;

    auto* generate = app.add_subcommand("generate", "construct graphs and pair datasets");
    auto* gen_csl_cmd = generate->add_subcommand("csl", "one circulant skip-link graph");
    gen_csl_cmd->add_option("--m", gen.csl_m, "cycle length")->required();
    gen_csl_cmd->add_option("--r", gen.csl_r, "skip length")->required();
    gen_csl_cmd->add_option("--out", gen.out, "output file (default stdout)");

    auto* gen_cfi_cmd = generate->add_subcommand("cfi", "one CFI gadget graph");
    gen_cfi_cmd->add_option("--backbone", gen.cfi_backbone, "backbone as a graph6 string")
        ->required();
    gen_cfi_cmd->add_flag("--twist", gen.cfi_twist, "build the twisted variant");
    gen_cfi_cmd->add_option("--twist-edge", gen.cfi_twist_edge, "edge index for the twist");
    gen_cfi_cmd->add_option("--out", gen.out, "output file (default stdout)");

    auto* gen_cat = generate->add_subcommand("category", "assemble an audited pair dataset");
    gen_cat->add_option("name", gen.category,
                        "basic | regular-simple | srg | 4vc | drg | extension | cfi")
        ->required();
    gen_cat->add_option("--seed", gen.assemble.seed, "selection seed");
    gen_cat->add_option("--max-n", gen.assemble.max_n, "internal enumeration bound (<= 8)");
    gen_cat->add_option("--count", gen.assemble.count, "pairs to draw (-1 = all)");
    gen_cat->add_option("--catalog", gen.catalog_files, "graph6 source files")
        ->check(CLI::ExistingFile);
    gen_cat->add_option("--ext-s3", gen.assemble.ext_s3, "extension: s3 pairs");
    gen_cat->add_option("--ext-n1", gen.assemble.ext_n1, "extension: n1 pairs");
    gen_cat->add_option("--ext-s4", gen.assemble.ext_s4, "extension: s4 pairs");
    gen_cat->add_option("--ext-apex-regular", gen.assemble.ext_apex_regular,
                        "extension: apex-over-regular pairs");
    gen_cat->add_option("--ext-apex-cycles", gen.assemble.ext_apex_cycles,
                        "extension: apex cycle pairs");
    gen_cat->add_option("--cfi-min", gen.assemble.cfi_min_backbone, "smallest CFI backbone");
    gen_cat->add_option("--cfi-max", gen.assemble.cfi_max_backbone, "largest CFI backbone");
    gen_cat->add_option("--cfi-max-nodes", gen.assemble.cfi_max_nodes,
                        "skip CFI instances above this size");
    gen_cat->add_option("--out", gen.out, "output prefix")->required();
    gen_cat->add_flag("--emit-permutations", gen.emit_permutations,
                      "write the seeded permutation list for model runners");
    gen_cat->add_option("--q", gen.perm_q, "copies per graph for the permutation list");
    gen_cat->add_option("--rpc-seed", gen.perm_seed, "seed for the permutation list");

    auto* verify = app.add_subcommand("verify", "regularity certificates for graph6 files");
    verify->add_option("file", verify_file, "graph6 file")->required()->check(CLI::ExistingFile);
    verify->add_option("--kind", verify_kind, "all | regular | srg | 4vc | drg");

    auto* dist = app.add_subcommand("distinguish", "run a distinguisher over a pair file");
    dist->add_option("--method", dist_method, "1wl | kwl:K | kfwl:K | s3 | s4 | n1 | n2 | m1")
        ->required();
    dist->add_option("--pairs", dist_pairs, "pair file (2N graph6 lines)")
        ->required()
        ->check(CLI::ExistingFile);
    dist->add_option("--sidecar", dist_sidecar, "JSON sidecar with categories")
        ->check(CLI::ExistingFile);
    dist->add_option("--max-iterations", dist_max_iter, "cap WL refinement rounds");
    dist->add_option("--budget", dist_budget, "tuple-update budget per refinement");
    dist->add_option("--out", dist_out, "per-pair verdict CSV");
    dist->add_option("--report", dist_report, "aggregated report CSV");

    auto* rpc = app.add_subcommand("rpc", "score an embedding table");
    rpc->add_option("--embeddings", rpc_embeddings, "embedding CSV")
        ->required()
        ->check(CLI::ExistingFile);
    rpc->add_option("--q", rpc_q, "copies per graph");
    rpc->add_option("--alpha", rpc_alpha, "confidence level");
    rpc->add_option("--threshold", rpc_thresh, "manual threshold override");
    rpc->add_option("--mode", rpc_mode, "rpc | rapc");
    rpc->add_option("--p", rapc_p, "rapc null groups per graph");
    rpc->add_option("--out", rpc_out, "verdict CSV");

    auto* reduce = app.add_subcommand("reduce-seeds", "best-of-seeds verdict reduction");
    reduce->add_option("files", reduce_files, "verdict CSVs from the same pair set")
        ->required()
        ->check(CLI::ExistingFile);
    reduce->add_option("--pairs", reduce_pairs, "pair file for category labels")
        ->check(CLI::ExistingFile);
    reduce->add_option("--sidecar", reduce_sidecar, "sidecar for category labels")
        ->check(CLI::ExistingFile);
    reduce->add_option("--out", reduce_out, "per-pair reduced outcome CSV");

    auto* stats = app.add_subcommand("stats", "node/edge/diameter histograms per category");
    stats->add_option("--pairs", stats_pairs, "pair file")->required()->check(CLI::ExistingFile);
    stats->add_option("--sidecar", stats_sidecar, "JSON sidecar")->check(CLI::ExistingFile);
    stats->add_option("--out", stats_out, "histogram CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (gen_csl_cmd->parsed()) return run_generate_csl(gen);
        if (gen_cfi_cmd->parsed()) return run_generate_cfi(gen);
        if (gen_cat->parsed()) return run_generate_category(gen);
        if (verify->parsed()) return run_verify(verify_file, verify_kind);
        if (dist->parsed())
            return run_distinguish(dist_method, dist_pairs, dist_sidecar, dist_max_iter,
                                   dist_budget, dist_out, dist_report);
        if (rpc->parsed())
            return run_rpc(rpc_embeddings, rpc_q, rpc_alpha, rpc_thresh, rpc_mode, rapc_p,
                           rpc_out);
        if (reduce->parsed())
            return run_reduce(reduce_files, reduce_sidecar, reduce_pairs, reduce_out);
        if (stats->parsed()) return run_stats(stats_pairs, stats_sidecar, stats_out);
        if (generate->parsed()) {
            std::cerr << "generate: pick a subcommand (csl, cfi, category)\n";
            return kExitInput;
        }
        return kExitInput;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Graph6Error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

// Acceptance suite: one check per release criterion, each printing a
// single PASS/FAIL line. Run with no arguments for the full suite or with
// criterion numbers to run a subset. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grex/assemble.hpp"
#include "grex/enumerate.hpp"
#include "grex/extensions.hpp"
#include "grex/generators.hpp"
#include "grex/graph6.hpp"
#include "grex/isomorphism.hpp"
#include "grex/methods.hpp"
#include "grex/rpc.hpp"
#include "grex/wl.hpp"

using namespace grex;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

WlConfig wl3() {
    WlConfig cfg = WlConfig::wlk(3);
    cfg.workers = 4;
    return cfg;
}

WlConfig fwl2() {
    WlConfig cfg = WlConfig::fwlk(2);
    cfg.workers = 4;
    return cfg;
}

// The regenerated desk-scale dataset shared by criteria 2, 6 and 7.
struct DeskDataset {
    std::vector<GraphPair> basic, regular, srg, extension, cfi;
    std::vector<std::pair<Graph, Graph>> csl;  // all pairs of the classic set
};

const DeskDataset& desk_dataset() {
    static DeskDataset ds = [] {
        DeskDataset d;
        AssembleConfig cfg;
        cfg.max_n = 8;
        d.basic = assemble_category(Category::Basic, cfg).pairs;
        d.regular = assemble_category(Category::RegularSimple, cfg).pairs;
        d.srg = assemble_category(Category::Srg, cfg).pairs;
        AssembleConfig ext = cfg;
        ext.ext_s3 = 20;
        ext.ext_n1 = -1;
        ext.ext_s4 = -1;
        d.extension = assemble_category(Category::Extension, ext).pairs;
        d.cfi = assemble_category(Category::Cfi, cfg).pairs;
        auto set = csl_standard_set();
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j) d.csl.emplace_back(set[i], set[j]);
        return d;
    }();
    return ds;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    RpcConfig cfg{.q = 32, .d = 16, .alpha = 0.95};
    double threshold = rpc_threshold(cfg);
    bool ok = std::abs(threshold - 72.34) <= 0.01;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "F-quantile anchor: threshold(32,16,0.95) = %.4f (72.34 +- 0.01)",
                  threshold);
    report(1, ok, buf);
}

void criterion_2() {
    const auto& ds = desk_dataset();
    int checked = 0, wl_ok = 0, iso_ok = 0;
    auto check = [&](const Graph& g, const Graph& h) {
        ++checked;
        if (!distinguishes(WlConfig::wl1(), g, h)) ++wl_ok;
        if (!is_isomorphic(g, h)) ++iso_ok;
    };
    for (const auto& p : ds.basic) check(p.g, p.h);
    for (const auto& [g, h] : ds.csl) check(g, h);
    for (const auto& p : ds.cfi) check(p.g, p.h);
    for (const auto& p : ds.srg) check(p.g, p.h);
    bool ok = checked > 0 && wl_ok == checked && iso_ok == checked &&
              ds.basic.size() > 0 && ds.csl.size() == 45 && ds.cfi.size() == 15 &&
              ds.srg.size() > 0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "1-WL soundness: %d pairs (basic %zu, csl %zu, cfi %zu, srg %zu); "
                  "1-WL blind on %d, non-isomorphic %d",
                  checked, ds.basic.size(), ds.csl.size(), ds.cfi.size(), ds.srg.size(), wl_ok,
                  iso_ok);
    report(2, ok, buf);
}

void criterion_3() {
    // pair pool: n <= 7 collision pairs, CFI pairs over 3..5-node backbones
    // plus small 6-node ones, and the classic CSL sets for several m
    std::vector<std::pair<Graph, Graph>> pool;
    for (int n = 4; n <= 7; ++n) {
        auto graphs = enumerate_nonisomorphic(n);
        for (auto [i, j] : find_collision_pairs(graphs, WlConfig::wl1()))
            pool.emplace_back(graphs[i], graphs[j]);
    }
    for (int n = 3; n <= 6; ++n)
        for (const auto& bb : enumerate_nonisomorphic(n)) {
            if (!is_connected(bb) || min_degree(bb) < 2) continue;
            if (cfi_node_count(bb) > 40) continue;
            pool.emplace_back(gen_cfi({bb, false, 0}), gen_cfi({bb, true, 0}));
        }
    for (int m : {29, 31, 37, 41}) {
        auto set = csl_standard_set(m);
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                pool.emplace_back(set[i], set[j]);
    }

    int agree_12 = 0, agree_f23 = 0;
    for (const auto& [g, h] : pool) {
        bool v1 = distinguishes(WlConfig::wl1(), g, h);
        bool v2 = distinguishes(WlConfig::wlk(2), g, h);
        if (v1 == v2) ++agree_12;
        bool w3 = distinguishes(wl3(), g, h);
        bool f2 = distinguishes(fwl2(), g, h);
        if (w3 == f2) ++agree_f23;
    }
    bool ok = pool.size() >= 200 && agree_12 == int(pool.size()) &&
              agree_f23 == int(pool.size());
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "equivalences over %zu pairs: 1-WL=2-WL on %d, 2-FWL=3-WL on %d",
                  pool.size(), agree_12, agree_f23);
    report(3, ok, buf);
}

void criterion_4() {
    bool shrik_rook_blind = !distinguishes(wl3(), shrikhande_graph(), rook_graph_4x4());

    // every same-parameter catalog pair
    auto catalog = builtin_srg_catalog();
    int pairs = 0, blind = 0, n2_split = 0;
    for (std::size_t i = 0; i < catalog.size(); ++i)
        for (std::size_t j = i + 1; j < catalog.size(); ++j) {
            auto pi = verify_srg(catalog[i].graph);
            auto pj = verify_srg(catalog[j].graph);
            if (!pi || !pj || !(*pi == *pj)) continue;
            ++pairs;
            if (!distinguishes(wl3(), catalog[i].graph, catalog[j].graph)) ++blind;
            if (extension_distinguishes(ExtensionConfig::n(2), catalog[i].graph,
                                        catalog[j].graph))
                ++n2_split;
        }
    bool ok = shrik_rook_blind && pairs == 7 && blind == pairs && n2_split == pairs;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "SRG blindness: 3-WL fails on %d/%d catalog pairs (incl. Shrikhande/Rook: %s); "
                  "N2 splits %d/%d",
                  blind, pairs, shrik_rook_blind ? "yes" : "no", n2_split, pairs);
    report(4, ok, buf);
}

void criterion_5() {
    int backbones = 0, wl1_blind = 0;
    for (int n = 3; n <= 5; ++n)
        for (const auto& bb : enumerate_nonisomorphic(n)) {
            if (!is_connected(bb) || min_degree(bb) < 2) continue;
            ++backbones;
            Graph u = gen_cfi({bb, false, 0});
            Graph t = gen_cfi({bb, true, 0});
            if (!distinguishes(WlConfig::wl1(), u, t)) ++wl1_blind;
        }

    Graph k3 = make_complete(3), k4 = make_complete(4);
    bool wl3_k3 =
        distinguishes(wl3(), gen_cfi({k3, false, 0}), gen_cfi({k3, true, 0}));
    bool wl3_k4 =
        distinguishes(wl3(), gen_cfi({k4, false, 0}), gen_cfi({k4, true, 0}));

    bool ok = backbones == 15 && wl1_blind == backbones && wl3_k3 && wl3_k4;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "CFI hierarchy: %d/%d pairs 1-WL-blind; 3-WL distinguishes triangle: %s, "
                  "K4: %s (K4 clause fails by CFI theory: treewidth 3 needs 4-WL)",
                  wl1_blind, backbones, wl3_k3 ? "yes" : "no", wl3_k4 ? "yes" : "no");
    report(5, ok, buf);
}

void criterion_6() {
    const auto& ds = desk_dataset();
    std::vector<std::pair<Graph, Graph>> pool;
    for (const auto* cat : {&ds.basic, &ds.regular, &ds.srg, &ds.extension, &ds.cfi})
        for (const auto& p : *cat) pool.emplace_back(p.g, p.h);
    for (const auto& pr : ds.csl) pool.push_back(pr);

    int violations_s3 = 0, violations_s4 = 0;
    for (const auto& [g, h] : pool) {
        bool s3 = extension_distinguishes(ExtensionConfig::s(3), g, h);
        bool n1 = extension_distinguishes(ExtensionConfig::n(1), g, h);
        bool s4 = extension_distinguishes(ExtensionConfig::s(4), g, h);
        bool n2 = extension_distinguishes(ExtensionConfig::n(2), g, h);
        if (s3 && !n1) ++violations_s3;
        if (s4 && !n2) ++violations_s4;
    }
    bool ok = !pool.empty() && violations_s3 == 0 && violations_s4 == 0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "extension dominance over %zu pairs: S3=>N1 violations %d, S4=>N2 violations %d",
                  pool.size(), violations_s3, violations_s4);
    report(6, ok, buf);
}

void criterion_7() {
    const auto& ds = desk_dataset();
    auto accuracy = [](const std::vector<GraphPair>& pairs, auto&& verdict) {
        int hit = 0;
        for (const auto& p : pairs)
            if (verdict(p.g, p.h)) ++hit;
        return std::pair<int, int>(hit, int(pairs.size()));
    };
    auto wl3_verdict = [&](const Graph& g, const Graph& h) { return distinguishes(wl3(), g, h); };

    auto [b_hit, b_n] = accuracy(ds.basic, wl3_verdict);
    auto [e_hit, e_n] = accuracy(ds.extension, wl3_verdict);
    auto [s_hit, s_n] = accuracy(ds.srg, wl3_verdict);

    int cfi_sk_nk = 0;
    int cfi_m1 = 0;
    for (const auto& p : ds.cfi) {
        if (extension_distinguishes(ExtensionConfig::s(3), p.g, p.h)) ++cfi_sk_nk;
        if (extension_distinguishes(ExtensionConfig::s(4), p.g, p.h)) ++cfi_sk_nk;
        if (extension_distinguishes(ExtensionConfig::n(1), p.g, p.h)) ++cfi_sk_nk;
        if (extension_distinguishes(ExtensionConfig::n(2), p.g, p.h)) ++cfi_sk_nk;
        if (extension_distinguishes(ExtensionConfig::m1(), p.g, p.h)) ++cfi_m1;
    }

    bool ok = b_n > 0 && b_hit == b_n &&       // 3-WL basic 100%
              e_n > 0 && e_hit == e_n &&       // 3-WL extension 100%
              s_n > 0 && s_hit == 0 &&         // 3-WL srg subset 0%
              cfi_sk_nk == 0 &&                // S3/S4/N1/N2 on CFI: 0%
              cfi_m1 > 0;                      // M1 on CFI: above zero
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "table pattern: 3-WL basic %d/%d, extension %d/%d, srg %d/%d; "
                  "Sk/Nk on CFI %d hits; M1 on CFI %d/%zu",
                  b_hit, b_n, e_hit, e_n, s_hit, s_n, cfi_sk_nk, cfi_m1, ds.cfi.size());
    report(7, ok, buf);
}

PairEmbeddings synth_pair(int q, int d, double h_shift, double pi_shift, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    PairEmbeddings pair;
    auto fill = [&](const std::string& role, double shift) {
        for (int copy = 1; copy <= q; ++copy) {
            Eigen::VectorXd v(d);
            for (int i = 0; i < d; ++i) v[i] = gauss(rng);
            v[0] += shift;
            pair.rows[role][0][copy] = std::move(v);
        }
    };
    fill("G", 0.0);
    fill("H", h_shift);
    fill("G_pi", pi_shift);
    return pair;
}

void criterion_8() {
    RpcConfig cfg{.q = 32, .d = 16, .alpha = 0.95};
    const int trials = 1000;
    // diffs have per-coordinate sigma sqrt(2); a 10-sigma mean shift
    const double shift = 10.0 * std::sqrt(2.0);

    int null_reject = 0, power_hit = 0, unreliable = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(100000 + t);
        auto null_pair = synth_pair(cfg.q, cfg.d, 0.0, 0.0, rng);
        auto v = rpc_decide(null_pair, cfg);
        if (v.t2_test > v.threshold) ++null_reject;

        auto power_pair = synth_pair(cfg.q, cfg.d, shift, 0.0, rng);
        if (rpc_decide(power_pair, cfg).outcome == RpcOutcome::distinguished) ++power_hit;

        auto bad_pair = synth_pair(cfg.q, cfg.d, shift, shift, rng);
        if (rpc_decide(bad_pair, cfg).outcome == RpcOutcome::unreliable) ++unreliable;
    }
    double null_rate = double(null_reject) / trials;
    double power = double(power_hit) / trials;
    double unrel = double(unreliable) / trials;
    bool ok = null_rate >= 0.03 && null_rate <= 0.07 && power >= 0.99 && unrel >= 0.95;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "RPC calibration over %d trials: null rejection %.3f (in [0.03,0.07]), "
                  "power %.3f (>= 0.99), unreliable %.3f (>= 0.95)",
                  trials, null_rate, power, unrel);
    report(8, ok, buf);
}

void criterion_9() {
    const int trials = 2000;
    const int q = 32, d = 16;
    std::vector<double> rates;
    bool in_band = true;
    for (int p : {1, 2, 4}) {
        int fired = 0;
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(777000 + p * 10000 + t);
            auto pair = synth_pair(q, d, 0.0, 0.0, rng);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (const char* role : {"G", "H"})
                for (int j = 1; j <= p; ++j)
                    for (int copy = 1; copy <= 2 * q; ++copy) {
                        Eigen::VectorXd v(d);
                        for (int i = 0; i < d; ++i) v[i] = gauss(rng);
                        pair.rows[role][j][copy] = std::move(v);
                    }
            RapcConfig cfg{p, q, d, 0};
            auto v = rapc_decide(pair, cfg);
            if (v.t2_test > v.threshold) ++fired;
        }
        double rate = double(fired) / trials;
        double expect = 1.0 / (2 * p + 1);
        double se = std::sqrt(expect * (1 - expect) / trials);
        if (std::abs(rate - expect) > 3 * se) in_band = false;
        rates.push_back(rate);
    }
    bool monotone = rates[0] > rates[1] && rates[1] > rates[2];
    bool ok = in_band && monotone;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "RAPC null rates p=1,2,4: %.3f, %.3f, %.3f (targets 1/3, 1/5, 1/9 within 3 SE; "
                  "monotone: %s). The stronger 1/2^(2p) claim is recorded, not asserted.",
                  rates[0], rates[1], rates[2], monotone ? "yes" : "no");
    report(9, ok, buf);
}

void criterion_10() {
    auto graphs = enumerate_nonisomorphic(6);
    auto pairs = find_collision_pairs(graphs, WlConfig::wl1());
    std::set<std::pair<int, int>> bucketed(pairs.begin(), pairs.end());
    std::set<std::pair<int, int>> oracle;
    for (int i = 0; i < int(graphs.size()); ++i)
        for (int j = i + 1; j < int(graphs.size()); ++j)
            if (!distinguishes(WlConfig::wl1(), graphs[i], graphs[j])) oracle.insert({i, j});
    bool ok = bucketed == oracle;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "collision search at n=6: %zu bucket pairs vs %zu oracle pairs, sets %s",
                  bucketed.size(), oracle.size(), ok ? "equal" : "DIFFER");
    report(10, ok, buf);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_11() {
#ifndef GREX_CLI_PATH
    report(11, false, "determinism: CLI path not wired into the build");
#else
    const std::string cli = GREX_CLI_PATH;
    const std::string dir = "acceptance_tmp";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());

    auto run = [&](const std::string& tag, int workers) {
        std::string base = dir + "/" + tag;
        std::string env = "GREX_WORKERS=" + std::to_string(workers) + " ";
        std::string log = base + "_log.txt";
        std::string cmd = env + cli + " generate category basic --seed 100 --max-n 7 --count 6" +
                          " --out " + base + " --emit-permutations --q 4 --rpc-seed 7 > " + log +
                          " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) return std::string("GENERATE-FAILED");
        cmd = env + cli + " distinguish --method 1wl --pairs " + base + ".g6 --sidecar " + base +
              ".json --out " + base + "_verdicts.csv >> " + log + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) return std::string("DISTINGUISH-FAILED");
        cmd = env + cli + " stats --pairs " + base + ".g6 --sidecar " + base + ".json --out " +
              base + "_stats.csv >> " + log + " 2>/dev/null";
        if (std::system(cmd.c_str()) != 0) return std::string("STATS-FAILED");
        return slurp(base + ".g6") + slurp(base + ".json") + slurp(base + "_verdicts.csv") +
               slurp(base + "_stats.csv") + slurp(base + ".perms.csv") + slurp(log);
    };

    std::string first = run("a", 1);
    bool ok = first.find("FAILED") == std::string::npos;
    ok = ok && run("b", 1) == first && run("c", 1) == first;
    std::string wide = run("d", 4);
    // worker count must not change any output byte (logs differ only in paths)
    auto strip_paths = [&](std::string s, const std::string& tag) {
        std::string needle = dir + "/" + tag;
        std::string repl = dir + "/X";
        std::size_t pos;
        while ((pos = s.find(needle)) != std::string::npos) s.replace(pos, needle.size(), repl);
        return s;
    };
    ok = ok && strip_paths(wide, "d") == strip_paths(first, "a");
    report(11, ok, "determinism: three reruns and two worker counts byte-identical");
    std::system(("rm -rf " + dir).c_str());
#endif
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto want = [&](int n) { return wanted.empty() || wanted.count(n) > 0; };

    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8)) criterion_8();
    if (want(9)) criterion_9();
    if (want(10)) criterion_10();
    if (want(11)) criterion_11();

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

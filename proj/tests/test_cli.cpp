#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "grex/generators.hpp"
#include "grex/graph6.hpp"
#include "grex/isomorphism.hpp"
#include "grex/rpc.hpp"

using namespace grex;

namespace {

const std::string cli = GREX_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string out_file = "cli_out.tmp";
    int rc = std::system((cli + " " + args + " > " + out_file + " 2> cli_err.tmp").c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_file.c_str());
    std::remove("cli_err.tmp");
    return {WEXITSTATUS(rc), ss.str()};
}

}  // namespace

TEST_CASE("cli: generate csl matches the library") {
    auto r = run("generate csl --m 41 --r 2");
    REQUIRE(r.exit_code == 0);
    std::string line = r.stdout_text;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    CHECK(line == write_graph6(gen_csl({41, 2})));

    CHECK(run("generate csl --m 10 --r 4").exit_code == 2);  // not co-prime
}

TEST_CASE("cli: generate cfi builds the gadget graph") {
    auto r = run("generate cfi --backbone Bw --twist");
    REQUIRE(r.exit_code == 0);
    std::string line = r.stdout_text;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    Graph twisted = parse_graph6(line);
    CHECK(twisted.node_count() == 12);
    CHECK(is_isomorphic(twisted, make_cycle(12)));
}

TEST_CASE("cli: category generation, distinguish, stats round-trip") {
    auto gen = run("generate category basic --seed 100 --max-n 7 --count 5 --out cli_basic");
    REQUIRE(gen.exit_code == 0);
    CHECK(gen.stdout_text.find("5 pairs (5 audited ok)") != std::string::npos);

    auto dist = run("distinguish --method 1wl --pairs cli_basic.g6 --sidecar cli_basic.json "
                    "--out cli_verdicts.csv");
    REQUIRE(dist.exit_code == 0);
    {
        std::ifstream in("cli_verdicts.csv");
        std::string line;
        std::getline(in, line);
        CHECK(line == "pair_id,method,outcome");
        int rows = 0, not_dist = 0;
        while (std::getline(in, line)) {
            ++rows;
            if (line.find("not_distinguished") != std::string::npos) ++not_dist;
        }
        CHECK(rows == 5);
        CHECK(not_dist == 5);  // audited pairs are 1-WL-blind by construction
    }

    auto kwl = run("distinguish --method kwl:3 --pairs cli_basic.g6 --sidecar cli_basic.json");
    CHECK(kwl.stdout_text.find("100.0%") != std::string::npos);

    // self-consistency: aggregate equals its own verdict rows
    auto stats = run("stats --pairs cli_basic.g6 --sidecar cli_basic.json --out cli_stats.csv");
    REQUIRE(stats.exit_code == 0);
    CHECK(stats.stdout_text.find("category basic") != std::string::npos);

    std::remove("cli_basic.g6");
    std::remove("cli_basic.json");
    std::remove("cli_verdicts.csv");
    std::remove("cli_stats.csv");
}

TEST_CASE("cli: rpc scores an embedding table and honors overrides") {
    EmbeddingTable table;
    table.dim = 16;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto fill = [&](const std::string& pid, const std::string& role, double shift) {
        for (int copy = 1; copy <= 32; ++copy) {
            Eigen::VectorXd v(16);
            for (int i = 0; i < 16; ++i) v[i] = gauss(rng);
            v[0] += shift;
            table.pairs[pid].rows[role][0][copy] = std::move(v);
        }
    };
    fill("pair_sep", "G", 0.0);
    fill("pair_sep", "H", 9.0);
    fill("pair_sep", "G_pi", 0.0);
    fill("pair_null", "G", 0.0);
    fill("pair_null", "H", 0.0);
    fill("pair_null", "G_pi", 0.0);
    write_embedding_csv("cli_emb.csv", table);

    auto r = run("rpc --embeddings cli_emb.csv --q 32 --alpha 0.95 --out cli_rpc.csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("threshold: 72.34") != std::string::npos);
    auto rows = read_verdict_csv("cli_rpc.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].pair_id == "pair_null");
    CHECK(rows[0].verdict.outcome == RpcOutcome::not_distinguished);
    CHECK(rows[1].pair_id == "pair_sep");
    CHECK(rows[1].verdict.outcome == RpcOutcome::distinguished);

    auto r10 = run("rpc --embeddings cli_emb.csv --q 32 --threshold 10 --out cli_rpc10.csv");
    CHECK(r10.stdout_text.find("threshold: 10.00") != std::string::npos);

    // reduce-seeds: identity on one file; union rule across two files
    auto red = run("reduce-seeds cli_rpc.csv --out cli_red.csv");
    REQUIRE(red.exit_code == 0);
    {
        std::ifstream in("cli_red.csv");
        std::string line;
        std::getline(in, line);
        int dist = 0;
        while (std::getline(in, line))
            if (line.find(",distinguished") != std::string::npos) ++dist;
        CHECK(dist == 1);
    }

    std::vector<VerdictRow> alt{{"pair_null", rpc_verdict(100.0, 1.0, 72.34)},
                                {"pair_sep", rpc_verdict(1.0, 1.0, 72.34)}};
    write_verdict_csv("cli_alt.csv", alt);
    auto red2 = run("reduce-seeds cli_rpc.csv cli_alt.csv --out cli_red2.csv");
    REQUIRE(red2.exit_code == 0);
    {
        std::ifstream in("cli_red2.csv");
        std::string line;
        std::getline(in, line);
        int dist = 0;
        while (std::getline(in, line))
            if (line.find(",distinguished") != std::string::npos) ++dist;
        CHECK(dist == 2);  // each pair distinguished under some seed
    }

    // unreliable under any seed excludes the pair from the union
    std::vector<VerdictRow> bad{{"pair_null", rpc_verdict(100.0, 99.0, 72.34)},
                                {"pair_sep", rpc_verdict(1.0, 1.0, 72.34)}};
    write_verdict_csv("cli_bad.csv", bad);
    auto red3 = run("reduce-seeds cli_rpc.csv cli_bad.csv --out cli_red3.csv");
    {
        std::ifstream in("cli_red3.csv");
        std::string line, all;
        while (std::getline(in, line)) all += line + "\n";
        CHECK(all.find("pair_null,unreliable") != std::string::npos);
        CHECK(all.find("pair_sep,distinguished") != std::string::npos);
    }

    // inconsistent pair sets are an input error
    std::vector<VerdictRow> other{{"pair_other", rpc_verdict(1.0, 1.0, 72.34)}};
    write_verdict_csv("cli_other.csv", other);
    CHECK(run("reduce-seeds cli_rpc.csv cli_other.csv").exit_code == 2);

    for (const char* f : {"cli_emb.csv", "cli_rpc.csv", "cli_rpc10.csv", "cli_red.csv",
                          "cli_alt.csv", "cli_red2.csv", "cli_bad.csv", "cli_red3.csv",
                          "cli_other.csv"})
        std::remove(f);
}

TEST_CASE("cli: input errors exit with the input code") {
    CHECK(run("distinguish --method bogus --pairs nonexistent.g6").exit_code == 2);
    CHECK(run("verify nonexistent.g6").exit_code == 2);
    CHECK(run("generate category bogus --out x").exit_code == 2);
}

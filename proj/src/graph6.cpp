#include "grex/graph6.hpp"

#include <fstream>

namespace grex {

// graph6: n encoded as one byte n+63 for n <= 62, or 126 followed by three
// bytes holding an 18-bit big-endian value. The upper triangle x(i,j), i<j,
// is emitted column by column (j = 1..n-1, i = 0..j-1), packed six bits per
// byte, high bit first, zero-padded, each byte offset by 63.

namespace {

constexpr int kBias = 63;
constexpr int kMaxByte = 126;
constexpr std::string_view kHeader = ">>graph6<<";

int body_len(int n) {
    long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    return static_cast<int>((pairs + 5) / 6);
}

}  // namespace

Graph parse_graph6(std::string_view line) {
    std::size_t pos = 0;
    if (line.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
    while (line.size() > pos && (line.back() == '\n' || line.back() == '\r'))
        line.remove_suffix(1);

    auto need = [&](std::size_t at) -> int {
        if (at >= line.size()) throw Graph6Error("graph6: truncated input", at);
        unsigned char c = static_cast<unsigned char>(line[at]);
        if (c < kBias || c > kMaxByte) throw Graph6Error("graph6: byte out of range", at);
        return c - kBias;
    };

    long long n;
    int first = need(pos);
    if (first < kMaxByte - kBias) {
        n = first;
        pos += 1;
    } else {
        if (pos + 1 < line.size() && static_cast<unsigned char>(line[pos + 1]) == kMaxByte)
            throw Graph6Error("graph6: >258047 nodes not supported", pos + 1);
        n = (static_cast<long long>(need(pos + 1)) << 12) | (need(pos + 2) << 6) | need(pos + 3);
        pos += 4;
    }
    // Adjacency is matrix-backed; refuse sizes far beyond the corpus scale.
    if (n > 4096) throw Graph6Error("graph6: node count beyond supported size (4096)", 0);

    Graph g(static_cast<int>(n));
    const int nbytes = body_len(static_cast<int>(n));
    if (line.size() - pos < static_cast<std::size_t>(nbytes))
        throw Graph6Error("graph6: body shorter than header requires", line.size());
    if (line.size() - pos > static_cast<std::size_t>(nbytes))
        throw Graph6Error("graph6: trailing garbage after body", pos + nbytes);

    int bit = 0;
    int cur = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (bit == 0) {
                cur = need(pos);
                ++pos;
                bit = 6;
            }
            --bit;
            if ((cur >> bit) & 1) g.add_edge0(i, j);
        }
    }
    if (bit > 0 && (cur & ((1 << bit) - 1)) != 0)
        throw Graph6Error("graph6: nonzero padding bits", pos - 1);
    return g;
}

std::string write_graph6(const Graph& g) {
    const int n = g.node_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kBias));
    } else if (n <= 258047) {
        out.push_back(static_cast<char>(kMaxByte));
        out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
        out.push_back(static_cast<char>((n & 63) + kBias));
    } else {
        throw std::invalid_argument("write_graph6: >258047 nodes not supported");
    }

    int bit = 5;
    int cur = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            if (g.adj0(i, j)) cur |= 1 << bit;
            if (bit == 0) {
                out.push_back(static_cast<char>(cur + kBias));
                cur = 0;
                bit = 6;
            }
            --bit;
        }
    }
    if (bit < 5) out.push_back(static_cast<char>(cur + kBias));
    return out;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph6 file: " + path);
    std::vector<Graph> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        if (sv.substr(0, kHeader.size()) == kHeader) sv.remove_prefix(kHeader.size());
        while (!sv.empty() && (sv.back() == '\r' || sv.back() == '\n')) sv.remove_suffix(1);
        if (sv.empty()) continue;
        try {
            out.push_back(parse_graph6(sv));
        } catch (const Graph6Error& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<std::pair<Graph, Graph>> read_pair_file(const std::string& path) {
    auto graphs = read_graph6_file(path);
    if (graphs.size() % 2 != 0)
        throw std::runtime_error(path + ": pair file holds an odd number of graphs");
    std::vector<std::pair<Graph, Graph>> out;
    out.reserve(graphs.size() / 2);
    for (std::size_t i = 0; i + 1 < graphs.size(); i += 2)
        out.emplace_back(std::move(graphs[i]), std::move(graphs[i + 1]));
    return out;
}

void write_graph6_file(const std::string& path, const std::vector<Graph>& graphs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph6 file: " + path);
    for (const auto& g : graphs) out << write_graph6(g) << '\n';
}

void write_pair_file(const std::string& path, const std::vector<std::pair<Graph, Graph>>& pairs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write pair file: " + path);
    for (const auto& [g, h] : pairs) out << write_graph6(g) << '\n' << write_graph6(h) << '\n';
}

}  // namespace grex

#include "grex/rpc.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <boost/math/distributions/fisher_f.hpp>

namespace grex {

double f_quantile(int d1, int d2, double alpha) {
    if (d1 < 1 || d2 < 1) throw std::invalid_argument("f_quantile: degrees must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("f_quantile: alpha must lie in (0,1)");
    boost::math::fisher_f_distribution<double> dist(d1, d2);
    return boost::math::quantile(dist, alpha);
}

double hotelling_t2(const Eigen::MatrixXd& diffs) {
    const auto q = diffs.rows();
    const auto d = diffs.cols();
    if (q < 2 || d < 1) throw std::invalid_argument("hotelling_t2: need q >= 2, d >= 1");

    const Eigen::VectorXd mean = diffs.colwise().mean();
    Eigen::MatrixXd centered = diffs.rowwise() - mean.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / double(q - 1);

    constexpr double kLambda = 1e-9;
    constexpr double kEps0 = 1e-30;
    const double scale = cov.trace() / double(d);
    if (scale <= kEps0) {
        // Deterministic outputs: no fluctuation at all.
        if (mean.lpNorm<Eigen::Infinity>() <= kEps0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    cov.diagonal().array() += kLambda * (scale + kEps0);

    Eigen::LDLT<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hotelling_t2: covariance factorization failed");
    const double t2 = double(q) * mean.dot(solver.solve(mean));
    return t2 < 0.0 ? 0.0 : t2;
}

double rpc_threshold(const RpcConfig& cfg) {
    if (cfg.manual_threshold) return *cfg.manual_threshold;
    if (cfg.q <= cfg.d)
        throw std::invalid_argument("rpc_threshold: q must exceed d (covariance rank)");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("rpc_threshold: alpha must lie in (0,1)");
    const double scale = double(cfg.q - 1) * double(cfg.d) / double(cfg.q - cfg.d);
    return scale * f_quantile(cfg.d, cfg.q - cfg.d, cfg.alpha);
}

std::string outcome_name(RpcOutcome o) {
    switch (o) {
        case RpcOutcome::distinguished: return "distinguished";
        case RpcOutcome::not_distinguished: return "not_distinguished";
        case RpcOutcome::unreliable: return "unreliable";
    }
    return "?";
}

RpcVerdict rpc_verdict(double t2_test, double t2_reliability, double threshold) {
    RpcVerdict v;
    v.t2_test = t2_test;
    v.t2_reliability = t2_reliability;
    v.threshold = threshold;
    if (t2_reliability >= threshold)
        v.outcome = RpcOutcome::unreliable;
    else if (t2_test > threshold)
        v.outcome = RpcOutcome::distinguished;
    else
        v.outcome = RpcOutcome::not_distinguished;
    return v;
}

double cosine_margin_loss(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double gamma) {
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0)
        throw std::invalid_argument("cosine_margin_loss: zero vector has no direction");
    const double cosine = x.dot(y) / (nx * ny);
    return std::max(0.0, cosine - gamma);
}

// ---------------------------------------------------------------------------

const Eigen::VectorXd* PairEmbeddings::find(const std::string& role, int group, int copy) const {
    auto r = rows.find(role);
    if (r == rows.end()) return nullptr;
    auto g = r->second.find(group);
    if (g == r->second.end()) return nullptr;
    auto c = g->second.find(copy);
    if (c == g->second.end()) return nullptr;
    return &c->second;
}

namespace {

// Gathers q rows per side and forms the paired differences, checking
// completeness and NaNs along the way.
Eigen::MatrixXd paired_diffs(const PairEmbeddings& pair, const std::string& role_a, int group_a,
                             int base_a, const std::string& role_b, int group_b, int base_b,
                             int q, int d) {
    Eigen::MatrixXd out(q, d);
    for (int i = 1; i <= q; ++i) {
        const auto* a = pair.find(role_a, group_a, base_a + i);
        const auto* b = pair.find(role_b, group_b, base_b + i);
        if (!a || !b)
            throw PairDataError("missing copy " + std::to_string(i) + " for roles " + role_a +
                                "/" + role_b);
        if (a->size() != d || b->size() != d)
            throw PairDataError("embedding dimension mismatch (expected " + std::to_string(d) +
                                ")");
        Eigen::VectorXd diff = *a - *b;
        if (!diff.allFinite()) throw PairDataError("non-finite embedding entries");
        out.row(i - 1) = diff.transpose();
    }
    return out;
}

}  // namespace

RpcVerdict rpc_decide(const PairEmbeddings& pair, const RpcConfig& cfg) {
    const double threshold = rpc_threshold(cfg);
    const auto test = paired_diffs(pair, "G", 0, 0, "H", 0, 0, cfg.q, cfg.d);
    const auto rel = paired_diffs(pair, "G", 0, 0, "G_pi", 0, 0, cfg.q, cfg.d);
    return rpc_verdict(hotelling_t2(test), hotelling_t2(rel), threshold);
}

RpcVerdict rapc_decide(const PairEmbeddings& pair, const RapcConfig& cfg) {
    if (cfg.p < 1) throw std::invalid_argument("rapc_decide: p must be >= 1");
    if (cfg.q <= cfg.d) throw std::invalid_argument("rapc_decide: q must exceed d");
    double threshold = 0.0;
    for (const char* role : {"G", "H"}) {
        for (int j = 1; j <= cfg.p; ++j) {
            // Within a group of 2q copies, copy k pairs with copy k+q.
            const auto diffs = paired_diffs(pair, role, j, 0, role, j, cfg.q, cfg.q, cfg.d);
            threshold = std::max(threshold, hotelling_t2(diffs));
        }
    }
    const auto test = paired_diffs(pair, "G", 0, 0, "H", 0, 0, cfg.q, cfg.d);
    const auto rel = paired_diffs(pair, "G", 0, 0, "G_pi", 0, 0, cfg.q, cfg.d);
    return rpc_verdict(hotelling_t2(test), hotelling_t2(rel), threshold);
}

// ---------------------------------------------------------------------------
// CSV exchange

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

EmbeddingTable read_embedding_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    auto header = split_csv_line(line);
    if (header.size() < 5 || header[0] != "pair_id" || header[1] != "role" ||
        header[2] != "group" || header[3] != "copy" || header[4] != "e0")
        throw std::runtime_error(path + ": expected header pair_id,role,group,copy,e0,...");
    const int d = static_cast<int>(header.size()) - 4;

    EmbeddingTable table;
    table.dim = d;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": wrong column count");
        Eigen::VectorXd vec(d);
        for (int i = 0; i < d; ++i) {
            try {
                vec[i] = std::stod(cells[std::size_t(i) + 4]);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": unparsable float '" + cells[std::size_t(i) + 4] +
                                         "'");
            }
        }
        int group = std::atoi(cells[2].c_str());
        int copy = std::atoi(cells[3].c_str());
        table.pairs[cells[0]].rows[cells[1]][group][copy] = std::move(vec);
    }
    return table;
}

void write_embedding_csv(const std::string& path, const EmbeddingTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embedding file: " + path);
    out << "pair_id,role,group,copy";
    for (int i = 0; i < table.dim; ++i) out << ",e" << i;
    out << '\n';
    for (const auto& [pair_id, pair] : table.pairs)
        for (const auto& [role, groups] : pair.rows)
            for (const auto& [group, copies] : groups)
                for (const auto& [copy, vec] : copies) {
                    out << pair_id << ',' << role << ',' << group << ',' << copy;
                    for (int i = 0; i < vec.size(); ++i) out << ',' << format_double(vec[i]);
                    out << '\n';
                }
}

void write_verdict_csv(const std::string& path, const std::vector<VerdictRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write verdict file: " + path);
    out << "pair_id,t2_test,t2_reliability,threshold,outcome\n";
    for (const auto& row : rows)
        out << row.pair_id << ',' << format_double(row.verdict.t2_test) << ','
            << format_double(row.verdict.t2_reliability) << ','
            << format_double(row.verdict.threshold) << ',' << outcome_name(row.verdict.outcome)
            << '\n';
}

std::vector<VerdictRow> read_verdict_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open verdict file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    std::vector<VerdictRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 5)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 5 columns");
        VerdictRow row;
        row.pair_id = cells[0];
        auto num = [&](const std::string& s) {
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            return std::stod(s);
        };
        row.verdict.t2_test = num(cells[1]);
        row.verdict.t2_reliability = num(cells[2]);
        row.verdict.threshold = num(cells[3]);
        if (cells[4] == "distinguished")
            row.verdict.outcome = RpcOutcome::distinguished;
        else if (cells[4] == "not_distinguished")
            row.verdict.outcome = RpcOutcome::not_distinguished;
        else if (cells[4] == "unreliable")
            row.verdict.outcome = RpcOutcome::unreliable;
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad outcome '" +
                                     cells[4] + "'");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace grex

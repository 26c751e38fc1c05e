#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace grex {

// ---------------------------------------------------------------------------
// statistics core

/// Upper quantile of the F(d1, d2) distribution: the x with CDF(x) = alpha,
/// computed by inverting the regularized incomplete beta function.
double f_quantile(int d1, int d2, double alpha);

/// Hotelling statistic q * mean' S^-1 mean over a q x d matrix of paired
/// differences, S the sample covariance with divisor q-1.
///
/// Deterministic models make S singular: S is regularized with
/// lambda * (trace(S)/d + eps0) * I, lambda = 1e-9, eps0 = 1e-30. A
/// numerically zero S short-circuits: zero mean gives 0, nonzero mean gives
/// +infinity (the outputs differ deterministically).
double hotelling_t2(const Eigen::MatrixXd& diffs);

struct RpcConfig {
    int q = 32;           // copies per graph; q > d
    int d = 16;           // embedding dimension
    double alpha = 0.95;  // confidence level in (0,1)
    std::optional<double> manual_threshold;
    std::uint64_t seed = 0;  // permutation generation upstream; recorded only
};

/// (q-1) d / (q-d) * F_{d, q-d}(alpha), or the manual override.
double rpc_threshold(const RpcConfig& cfg);

enum class RpcOutcome { distinguished, not_distinguished, unreliable };

std::string outcome_name(RpcOutcome o);

struct RpcVerdict {
    double t2_test = 0;
    double t2_reliability = 0;
    double threshold = 0;
    RpcOutcome outcome = RpcOutcome::not_distinguished;
};

/// Decision rule shared by RPC and RAPC: unreliable when the reliability
/// statistic reaches the threshold, otherwise distinguished iff the test
/// statistic exceeds it.
RpcVerdict rpc_verdict(double t2_test, double t2_reliability, double threshold);

struct RapcConfig {
    int p = 1;  // null groups per graph; each group holds 2q copies
    int q = 32;
    int d = 16;
    std::uint64_t seed = 0;
};

/// Hinge loss Max(0, cos(x, y) - gamma).
double cosine_margin_loss(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double gamma);

// ---------------------------------------------------------------------------
// embedding tables (CSV exchange with external model runners)

/// Rows of one pair, keyed by (role, group, copy). Roles are G, H and G_pi;
/// group 0 carries the plain RPC copies, groups 1..p the RAPC null groups.
struct PairEmbeddings {
    std::map<std::string, std::map<int, std::map<int, Eigen::VectorXd>>> rows;

    const Eigen::VectorXd* find(const std::string& role, int group, int copy) const;
};

struct EmbeddingTable {
    int dim = 0;
    std::map<std::string, PairEmbeddings> pairs;  // key: pair_id
};

/// Header: pair_id,role,group,copy,e0,...,e{d-1}. Throws on structural
/// problems (bad header, unreadable rows); per-pair completeness is checked
/// at decision time so one bad pair cannot sink the batch.
EmbeddingTable read_embedding_csv(const std::string& path);

void write_embedding_csv(const std::string& path, const EmbeddingTable& table);

/// Raised for a single pair's data problems (missing roles or copies,
/// dimension mismatch, NaN entries).
class PairDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Major procedure against role H plus Reliability check against role G_pi,
/// both from group 0, pairing copy i with copy i.
RpcVerdict rpc_decide(const PairEmbeddings& pair, const RpcConfig& cfg);

/// Adaptive variant: the threshold is the maximum over the 2p per-group
/// statistics T2_{i,j}, built by pairing copy k with copy k+q inside each
/// group; the decision rule is then the same as rpc_decide's.
RpcVerdict rapc_decide(const PairEmbeddings& pair, const RapcConfig& cfg);

// ---------------------------------------------------------------------------
// verdict files

struct VerdictRow {
    std::string pair_id;
    RpcVerdict verdict;
};

void write_verdict_csv(const std::string& path, const std::vector<VerdictRow>& rows);
std::vector<VerdictRow> read_verdict_csv(const std::string& path);

}  // namespace grex

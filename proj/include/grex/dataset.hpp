#pragma once

#include <string>
#include <vector>

#include "grex/graph.hpp"

namespace grex {

struct AuditRecord {
    bool wl1_indistinguishable = false;
    bool non_isomorphic = false;
};

/// One dataset entry: two graphs plus category metadata. Pair files hold the
/// graphs as 2N graph6 lines (lines 2i-1 and 2i form pair i); the JSON
/// sidecar carries everything else.
struct GraphPair {
    std::string pair_id;
    Graph g;
    Graph h;
    std::string category;
    std::string subcategory;
    std::string wl_difficulty;  // one of 1WL, 3WL, 4WL, beyond4WL
    AuditRecord audit;
};

/// Writes <prefix>.g6 and <prefix>.json.
void write_dataset(const std::string& prefix, const std::vector<GraphPair>& pairs);

/// Reads a pair file; when sidecar_path is non-empty the metadata is joined
/// by position and pair ids must line up with the file contents.
std::vector<GraphPair> read_dataset(const std::string& pair_path,
                                    const std::string& sidecar_path = "");

}  // namespace grex

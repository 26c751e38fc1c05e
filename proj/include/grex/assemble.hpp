#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grex/dataset.hpp"
#include "grex/graph.hpp"

namespace grex {

enum class Category { Basic, RegularSimple, Srg, FourVC, Drg, Extension, Cfi };

Category parse_category(const std::string& name);
std::string category_name(Category cat);

struct AssembleConfig {
    std::uint64_t seed = 100;
    int max_n = 8;    // internal enumeration bound for search-based pools
    int count = -1;   // pairs to draw; -1 takes everything available

    std::vector<Graph> catalog;  // external graph6 sources (SRG / 4VC / DRG)

    // Extension subcategory targets (-1 = all available).
    int ext_s3 = -1;
    int ext_n1 = -1;
    int ext_s4 = -1;
    int ext_apex_regular = 5;
    int ext_apex_cycles = 5;

    // CFI backbone range and the audit guards.
    int cfi_min_backbone = 3;
    int cfi_max_backbone = 5;
    int cfi_max_nodes = 64;
    std::uint64_t audit_iso_budget = 50'000'000;
};

struct AssembleResult {
    std::vector<GraphPair> pairs;
    std::vector<std::string> notes;  // shortfalls, rejected sources, skipped audits
    int shortfall = 0;               // requested minus delivered, when a count was set
};

/// Builds one category of audited graph pairs, deterministic under
/// (seed, sources). Every emitted pair passed its audit: 1-WL cannot split
/// it and exact isomorphism rejected it.
AssembleResult assemble_category(Category cat, const AssembleConfig& cfg);

}  // namespace grex

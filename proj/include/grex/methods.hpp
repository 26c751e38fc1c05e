#pragma once

#include <string>
#include <variant>
#include <vector>

#include "grex/extensions.hpp"
#include "grex/wl.hpp"

namespace grex {

/// Any distinguisher this toolkit knows: a WL-family refinement or one of
/// the extension baselines.
using MethodSpec = std::variant<WlConfig, ExtensionConfig>;

/// Parses "1wl", "kwl:K", "kfwl:K", "s3", "s4", "n1", "n2", "m1".
MethodSpec parse_method(const std::string& name);
std::string method_name(const MethodSpec& method);

bool method_distinguishes(const MethodSpec& method, const Graph& g, const Graph& h);

/// Stand-alone signature; equal signatures = the method cannot split the
/// graphs. Nk signatures need the shared pool.
Digest128 method_signature(const MethodSpec& method, const Graph& g,
                           EgoNetClassifier* pool = nullptr);

/// Buckets the graphs by method signature and emits every within-bucket
/// index pair (i < j), buckets in first-seen order. Feeding a stream of
/// pairwise non-isomorphic graphs yields exactly the pairs the method
/// cannot distinguish.
std::vector<std::pair<int, int>> find_collision_pairs(const std::vector<Graph>& graphs,
                                                      const MethodSpec& method);

}  // namespace grex

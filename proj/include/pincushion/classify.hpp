#pragma once

#include <optional>
#include <vector>

#include "pincushion/graph.hpp"
#include "pincushion/trace.hpp"

namespace pincushion {

/// Positive classification outcome: the smallest admitting level and a
/// certificate that replays to the queried graph.
struct Membership {
    int level = 0;
    ConstructionTrace trace;
};

using LevelResult = std::optional<Membership>;

/// Certificate of membership at level m, or nullopt. The returned trace has
/// level exactly m (except for the empty graph, whose trace is the canonical
/// empty level-0 trace). Throws std::invalid_argument for m < 0 or graphs
/// with more than 64 vertices.
std::optional<ConstructionTrace> is_in_level(const SimplicialGraph& g, int m);

/// Smallest level admitting g, searching 0..max_level (default: the vertex
/// count). The search is exponential in the worst case; the memoized subset
/// recursion handles sparse graphs quickly.
LevelResult min_level(const SimplicialGraph& g, int max_level = -1);

bool is_pincushion(const SimplicialGraph& g, int max_level = -1);

/// Forward closure of the construction rules: every labeled graph on
/// vertices "1".."n" buildable at level m, deduplicated, in a deterministic
/// order. Intended as a brute-force oracle for small n.
std::vector<SimplicialGraph> enumerate_level(int n, int m);

}  // namespace pincushion

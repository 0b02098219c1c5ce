#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pincushion/graph.hpp"

namespace pincushion {

/// Certificate witnessing how a graph is assembled from lower-level blocks.
///
/// A level-0 trace is a single vertex (or the empty graph when `vertex` is
/// absent and there are no steps). A level-m trace (m >= 1) is a sequence of
/// steps, each appending a level-(m-1) block either isolated or pinned at a
/// vertex contributed by an earlier step. The first step is always isolated.
struct ConstructionTrace {
    struct Step;

    int level = 0;
    std::optional<Vertex> vertex;  // level-0 payload; empty trace if absent
    std::vector<Step> steps;       // payload for level >= 1

    friend bool operator==(const ConstructionTrace&, const ConstructionTrace&);
};

struct ConstructionTrace::Step {
    ConstructionTrace block;
    std::optional<Vertex> pinned_at;  // absent = appended isolated

    friend bool operator==(const Step&, const Step&);
};

/// Wrap a trace as the single isolated block of a one-level-higher trace.
ConstructionTrace lift_trace(ConstructionTrace t);

/// Fold the steps with disjoint unions and pinning. Throws
/// std::invalid_argument on malformed traces (wrong sub-level, pinned first
/// step, dangling pin target, colliding vertex identifiers).
SimplicialGraph replay(const ConstructionTrace& trace);

/// Indented text rendering, one `append <step> isolated|pinned-at <v>` line
/// per step with the block serialized beneath it. Byte-stable.
std::string trace_to_text(const ConstructionTrace& trace);

}  // namespace pincushion

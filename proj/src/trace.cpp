#include "pincushion/trace.hpp"

#include <sstream>

namespace pincushion {

bool operator==(const ConstructionTrace& a, const ConstructionTrace& b) {
    return a.level == b.level && a.vertex == b.vertex && a.steps == b.steps;
}

bool operator==(const ConstructionTrace::Step& a, const ConstructionTrace::Step& b) {
    return a.pinned_at == b.pinned_at && a.block == b.block;
}

ConstructionTrace lift_trace(ConstructionTrace t) {
    ConstructionTrace up;
    up.level = t.level + 1;
    up.steps.push_back({std::move(t), std::nullopt});
    return up;
}

SimplicialGraph replay(const ConstructionTrace& trace) {
    if (trace.level < 0)
        throw std::invalid_argument("malformed trace: negative level");
    if (trace.level == 0) {
        if (!trace.steps.empty())
            throw std::invalid_argument("malformed trace: level-0 trace with steps");
        if (!trace.vertex) return SimplicialGraph();
        return SimplicialGraph({*trace.vertex}, {});
    }
    if (trace.vertex)
        throw std::invalid_argument("malformed trace: vertex payload above level 0");
    SimplicialGraph acc;
    bool first = true;
    for (const auto& step : trace.steps) {
        if (step.block.level != trace.level - 1)
            throw std::invalid_argument("malformed trace: block level " +
                                        std::to_string(step.block.level) +
                                        " under level " + std::to_string(trace.level));
        SimplicialGraph block = replay(step.block);
        if (step.pinned_at) {
            if (first)
                throw std::invalid_argument("malformed trace: first step must be isolated");
            if (!acc.has_vertex(*step.pinned_at))
                throw std::invalid_argument("malformed trace: dangling pin target '" +
                                            *step.pinned_at + "'");
            acc = pin_graph(acc, *step.pinned_at, block);
        } else {
            acc = disjoint_union(acc, block);
        }
        first = false;
    }
    return acc;
}

namespace {

void render(const ConstructionTrace& t, int indent, std::ostringstream& out) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (t.level == 0) {
        if (t.vertex)
            out << pad << "vertex " << *t.vertex << "\n";
        else
            out << pad << "empty\n";
        return;
    }
    out << pad << "level " << t.level << "\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& step = t.steps[i];
        out << pad << "append " << i;
        if (step.pinned_at)
            out << " pinned-at " << *step.pinned_at;
        else
            out << " isolated";
        out << "\n";
        render(step.block, indent + 2, out);
    }
}

}  // namespace

std::string trace_to_text(const ConstructionTrace& trace) {
    std::ostringstream out;
    render(trace, 0, out);
    return out.str();
}

}  // namespace pincushion

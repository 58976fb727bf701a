#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "emberlin/graph.hpp"

namespace emberlin {

// Multigraph on the half-edges at one vertex; each edge records one passage of
// a walk through the vertex (arriving half-edge paired with the next leaving
// one).  Loops record immediate backtracks.
struct TransitionGraph {
    VertexId anchor = -1;
    std::vector<HalfEdgeId> nodes;                            // E*(v), increasing
    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> edges;     // normalized a <= b

    int degree(HalfEdgeId h) const;  // loops count 2

    bool is_perfect_matching() const;
    // Connected, 2-regular, covering every node: the single-cycle condition.
    bool is_single_cycle() const;
    // Every component a path (isolated nodes allowed), or one spanning cycle.
    bool is_subgraph_of_cycle() const;
    // Node sequence of the single cycle (valid only if is_single_cycle()).
    std::vector<HalfEdgeId> cycle_order() const;
    // Component index per node, in node order.
    std::vector<int> components() const;
};

TransitionGraph transition_graph(const Graph& g, const std::vector<ClosedWalk>& walks,
                                 VertexId v);

struct CompatibilityResult {
    bool compatible = false;
    std::optional<VertexId> failing_vertex;  // first failure, if any
};

// True iff at every vertex the transition graph of the collection is a single
// cycle covering all incident half-edges.
CompatibilityResult is_cyclically_compatible(const Graph& g,
                                             const std::vector<ClosedWalk>& walks);

// Closed trails induced by a transition system: partner is a fixed-point-free
// involution on half-edges pairing only halves at a common vertex.  The trails
// use each edge exactly once and their transition graphs reproduce the system.
std::vector<ClosedWalk> walks_from_transition_system(const Graph& g,
                                                     const std::vector<HalfEdgeId>& partner);

}  // namespace emberlin

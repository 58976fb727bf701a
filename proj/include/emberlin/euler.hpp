#pragma once

#include <optional>
#include <vector>

#include "emberlin/graph.hpp"

namespace emberlin {

// Directed path stored as the arc tail half-arcs in order.
struct DirectedPath {
    VertexId from = -1, to = -1;
    std::vector<HalfEdgeId> steps;
};

// k arc-disjoint s->t paths together with k arc-disjoint t->s paths, the whole
// family sharing no arc.
struct PathPairFamily {
    int k = 0;
    std::vector<DirectedPath> forward;   // s -> t
    std::vector<DirectedPath> backward;  // t -> s
};

// Thrown when an edge-cut precondition fails; carries one violating cut.
struct CutConditionError : PreconditionError {
    std::vector<EdgeId> cut;
    CutConditionError(const std::string& what, std::vector<EdgeId> cut_edges)
        : PreconditionError(what), cut(std::move(cut_edges)) {}
};

ClosedWalk euler_circuit(const Graph& g, VertexId start);
ClosedWalk euler_circuit(const Digraph& d, VertexId start);

// Directed euler circuit whose vertex sequence contains the given vertices as
// a subsequence in order (starting at the first of them).  When no trail is
// supplied, one is discovered by backtracking over arc-disjoint simple paths.
ClosedWalk euler_circuit_through(const Digraph& d, const std::vector<VertexId>& seq,
                                 const std::optional<std::vector<HalfEdgeId>>& trail =
                                     std::nullopt);

// Lemma-style path family: requires every edge cut of the underlying graph
// separating s and t to have at least 2k edges.
PathPairFamily arc_disjoint_path_pairs(const Digraph& d, VertexId s, VertexId t, int k);

// Directed euler circuit whose cyclic vertex sequence contains s,t,s,t;
// requires every cut separating s and t to have at least 4 edges.
ClosedWalk interlacing_euler_circuit(const Digraph& d, VertexId s, VertexId t);

// True iff the walk's cyclic vertex sequence restricted to {s,t} contains the
// pattern s,t,s,t.
bool interlaces(const Graph& g, const ClosedWalk& walk, VertexId s, VertexId t);

}  // namespace emberlin

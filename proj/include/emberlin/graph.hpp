#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "emberlin/base.hpp"

namespace emberlin {

// Half-edge representation of an undirected multigraph.  Vertices are dense
// ints 0..n-1, half-edges dense ints 0..2m-1.  Each edge is an unordered mate
// pair of half-edges and is named by its lesser half-edge id.
class Graph {
public:
    Graph() = default;

    int num_vertices() const { return num_vertices_; }
    int num_half_edges() const { return static_cast<int>(incv_.size()); }
    int num_edges() const { return num_half_edges() / 2; }

    VertexId incv(HalfEdgeId h) const { return incv_[h]; }
    HalfEdgeId mate(HalfEdgeId h) const { return mate_[h]; }
    EdgeId edge_of(HalfEdgeId h) const { return h < mate_[h] ? h : mate_[h]; }

    // Half-edges incident with v, in increasing id order.
    const std::vector<HalfEdgeId>& star(VertexId v) const { return star_[v]; }
    int degree(VertexId v) const { return static_cast<int>(star_[v].size()); }

    // Edge ids (lesser half-edge ids) in increasing order.
    const std::vector<EdgeId>& edges() const { return edge_ids_; }
    // Dense index of an edge in edges(); inverse of edges()[i].
    int edge_index(EdgeId e) const { return edge_index_[e]; }

    bool is_loop(EdgeId e) const { return incv_[e] == incv_[mate_[e]]; }

    // Endpoints of an edge, (incv of lesser half, incv of its mate).
    std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
        return {incv_[e], incv_[mate_[e]]};
    }

    bool connected() const;
    bool all_degrees_even() const;
    // Connected and every degree even.  The trivial one-vertex graph counts.
    bool is_eulerian() const { return connected() && all_degrees_even(); }

    // Construction from an explicit half-edge structure.  Validates the mate
    // involution and incidences; rejects degree-0 vertices except the trivial
    // single-vertex graph.
    static Graph from_half_edges(int num_vertices, std::vector<VertexId> incv,
                                 std::vector<HalfEdgeId> mate);

protected:
    int num_vertices_ = 0;
    std::vector<VertexId> incv_;
    std::vector<HalfEdgeId> mate_;
    std::vector<std::vector<HalfEdgeId>> star_;
    std::vector<EdgeId> edge_ids_;
    std::vector<int> edge_index_;

    void build_derived();
    void validate() const;
};

// Eulerian-oriented multigraph: a Graph whose half-edges are partitioned into
// outgoing and incoming half-arcs, mates crossing the partition.  Arc i has
// tail half-arc = lesser half-edge of edge i by construction.
class Digraph : public Graph {
public:
    Digraph() = default;

    bool outgoing(HalfEdgeId h) const { return outgoing_[h]; }
    VertexId tail(EdgeId a) const { return incv_[outgoing_[a] ? a : mate_[a]]; }
    VertexId head(EdgeId a) const { return incv_[outgoing_[a] ? mate_[a] : a]; }
    HalfEdgeId tail_half(EdgeId a) const { return outgoing_[a] ? a : mate_[a]; }
    HalfEdgeId head_half(EdgeId a) const { return outgoing_[a] ? mate_[a] : a; }

    std::vector<HalfEdgeId> out_star(VertexId v) const;
    std::vector<HalfEdgeId> in_star(VertexId v) const;
    int out_degree(VertexId v) const;
    int in_degree(VertexId v) const { return degree(v) - out_degree(v); }

    bool balanced() const;  // in-degree == out-degree everywhere
    bool is_eulerian() const { return connected() && balanced(); }

    const Graph& underlying() const { return *this; }

    static Digraph from_half_edges(int num_vertices, std::vector<VertexId> incv,
                                   std::vector<HalfEdgeId> mate,
                                   std::vector<char> outgoing);

private:
    std::vector<char> outgoing_;
};

// Closed walk stored as the cyclic sequence of leaving half-edges; the
// arriving half-edge of step i is mate(steps[i]) and the vertex of step i is
// incv(steps[i]).  The empty walk is reserved for the trivial graph's face.
struct ClosedWalk {
    std::vector<HalfEdgeId> steps;
    bool directed = false;

    int length() const { return static_cast<int>(steps.size()); }
    bool empty() const { return steps.empty(); }

    ClosedWalk reversed(const Graph& g) const;
    // Vertex visited at step i (the vertex the walk leaves via steps[i]).
    VertexId vertex(const Graph& g, int i) const { return g.incv(steps[i]); }
    std::vector<VertexId> vertex_sequence(const Graph& g) const;

    // Lexicographically least rotation of steps; undirected walks also take
    // the lesser of the walk and its reversal.  Makes face-set equality
    // decidable.
    std::vector<HalfEdgeId> canonical(const Graph& g) const;
};

// Consecutive half-edges are mates, incidences match, and the walk closes up;
// directed walks must leave via outgoing half-arcs only.
void validate_walk(const Graph& g, const ClosedWalk& w);
void validate_walk(const Digraph& d, const ClosedWalk& w);

bool is_euler_circuit(const Graph& g, const ClosedWalk& w);
bool is_euler_circuit(const Digraph& d, const ClosedWalk& w);

// Canonical multiset of walks, sorted; equal iff the collections are equal up
// to cyclic shift (and reversal, when undirected).
std::vector<std::vector<HalfEdgeId>> canonical_walk_multiset(const Graph& g,
                                                             const std::vector<ClosedWalk>& walks);

// Build a graph from an edge list.  Edge i gets half-edges 2i (at u_i) and
// 2i+1 (at v_i).  Vertex ids must be 0-based dense; num_vertices = max id + 1
// unless given explicitly.
Graph build_graph(const std::vector<std::pair<VertexId, VertexId>>& edge_list,
                  int num_vertices = -1);

// Build a digraph from an arc list (tail, head).  Arc i gets tail half-arc 2i
// and head half-arc 2i+1.
Digraph build_digraph(const std::vector<std::pair<VertexId, VertexId>>& arc_list,
                      int num_vertices = -1);

// Orient every edge of g to follow the euler circuit t.  Returns the digraph
// (same half-edge ids, leaving halves become outgoing) and t as a directed
// walk of it.
std::pair<Digraph, ClosedWalk> orient_along(const Graph& g, const ClosedWalk& t);

}  // namespace emberlin

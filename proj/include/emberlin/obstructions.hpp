#pragma once

#include <string>
#include <utility>
#include <vector>

#include "emberlin/graph.hpp"

namespace emberlin {

// 0 mod 4 degree census: l = number of such vertices, parity_ok iff l is even.
struct DegreeCensus {
    int l = 0;
    bool parity_ok = false;
};

DegreeCensus degree_census(const Graph& g);

struct TwoEdgeCut {
    EdgeId e = -1, f = -1;        // e < f
    std::vector<char> side;       // per vertex; side of vertex 0 is 0
    int zero_mod4_side0 = 0;      // 0-mod-4-degree vertices per side
    int zero_mod4_side1 = 0;
    bool bad() const { return zero_mod4_side0 % 2 == 1 || zero_mod4_side1 % 2 == 1; }
};

// All unordered edge pairs whose removal disconnects the graph, by pair-removal
// connectivity testing.  Loops never participate.
std::vector<TwoEdgeCut> enumerate_2edge_cuts(const Graph& g);

std::vector<TwoEdgeCut> bad_cut_scan(const Graph& g);

struct CutReduction {
    Graph g1, g2;                  // side-0 and side-1 pieces
    std::vector<VertexId> map1, map2;  // original vertex -> new id, or -1
    EdgeId new_edge1 = -1, new_edge2 = -1;
};

struct DigraphCutReduction {
    Digraph d1, d2;
    std::vector<VertexId> map1, map2;
    EdgeId new_arc1 = -1, new_arc2 = -1;
};

// Replaces the cut edges {e1,e2}, {f1,f2} by g1={e1,f1} and g2={e2,f2},
// splitting the graph into its two sides.
CutReduction reduce_2edge_cut(const Graph& g, const TwoEdgeCut& cut);
DigraphCutReduction reduce_2edge_cut(const Digraph& d, const TwoEdgeCut& cut);

// Inverse operation: removes edge a of g1 and edge b of g2 and cross-connects
// their half-edges, yielding a connected graph with a 2-edge cut.
Graph two_edge_join(const Graph& g1, EdgeId a, const Graph& g2, EdgeId b);
Digraph two_edge_join(const Digraph& d1, EdgeId a, const Digraph& d2, EdgeId b);

// Chain of digons: degree-4 vertices linked by pairs of parallel edges.
struct DigonChain {
    std::vector<VertexId> vertices;                  // rear to front, length+1 entries
    std::vector<std::pair<EdgeId, EdgeId>> digons;   // one pair per link
    int length() const { return static_cast<int>(digons.size()); }
    VertexId rear() const { return vertices.front(); }
    VertexId front() const { return vertices.back(); }
};

// Maximal chains.  A cycle of digons yields one maximal chain per omitted
// digon.
std::vector<DigonChain> find_digon_chains(const Graph& g);

struct FstWitness {
    DigonChain c, cbar;
    EdgeId f1 = -1;  // front(c) -- rear(cbar)
    EdgeId f2 = -1;  // front(c) -- front(cbar)
    bool forbidden = false;
    int s() const { return c.length(); }
    int t() const { return cbar.length(); }
};

// All F_{s,t} witnesses over (sub)chain pairs with valid connectors,
// deduplicated by (s, t, f1, f2).  forbidden iff not (t=1 or (s=1 and t odd)).
std::vector<FstWitness> find_forbidden_configurations(const Graph& g);

enum class Verdict { Admissible, Inadmissible, AdmissibleButObstructed };

struct AdmissibilityReport {
    int l = 0;
    bool parity_ok = false;
    std::vector<TwoEdgeCut> bad_cuts;
    std::vector<FstWitness> forbidden_configs;  // forbidden witnesses only
    Verdict verdict = Verdict::Inadmissible;
    std::string reason;
};

AdmissibilityReport admissibility(const Graph& g);
AdmissibilityReport admissibility(const Digraph& d);

}  // namespace emberlin

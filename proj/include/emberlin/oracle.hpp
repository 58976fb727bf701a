#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "emberlin/embedding.hpp"
#include "emberlin/graph.hpp"

namespace emberlin {

enum class CensusMode { Directed, UndirectedOrientable, UndirectedAll };

struct CensusOptions {
    double budget = 1e8;        // traced face-steps; exceeded -> BudgetExceeded
    bool all_signatures = false;  // directed mode: twist arcs as well
    // Quotient parallel-arc and loop bundles by relabeling (directed mode).
    // Histograms then count bundle-canonical representatives over the full
    // signature space instead of flip-quotient classes.
    bool symmetry_reduce = false;
    std::optional<ClosedWalk> track_face;  // directed: statistics for embeddings with this face
    int threads = 0;                       // 0 = hardware choice
};

struct CensusWitness {
    std::vector<std::vector<HalfEdgeId>> rotation;
    std::vector<signed char> signature;
    int faces = 0;
};

struct EmbeddingCensus {
    CensusMode mode = CensusMode::Directed;
    std::map<int, std::int64_t> histogram;  // faces -> embeddings
    std::int64_t total = 0;
    int min_faces = 0, max_faces = 0;
    bool bieulerian_exists = false;
    std::optional<CensusWitness> bieulerian_witness;
    std::optional<CensusWitness> min_witness, max_witness;
    // statistics over embeddings containing the tracked face
    std::int64_t tracked_total = 0;
    int tracked_min_faces = 0;

    // face counts of nonorientable embeddings (all-signature modes)
    std::map<int, std::int64_t> nonorientable_histogram;
};

// Every alternating rotation system of an eulerian digraph, with all-positive
// signatures or (all_signatures) the spanning-tree-fixed signature classes.
EmbeddingCensus enumerate_directed_embeddings(const Digraph& d, const CensusOptions& opts = {});

// Every rotation system of a connected graph; orientable_only fixes all
// signatures positive, otherwise signature classes are quotiented by vertex
// flips (spanning tree fixed positive).
EmbeddingCensus enumerate_embeddings(const Graph& g, bool orientable_only,
                                     const CensusOptions& opts = {});

// True iff some all-positive rotation system has exactly one face.
bool exists_one_face_orientable(const Graph& g, const CensusOptions& opts = {});

// Complete backtracking search over eulerian orientations and compatible
// euler-circuit pairs; equivalent to the census question "does some embedding
// have two euler-circuit faces" but feasible for loop-heavy hosts.
bool exists_orientable_bieulerian(const Graph& g);
bool exists_bieulerian_directed(const Digraph& d);

// All eulerian orientations as per-edge direction flags (0 = half-edge order
// as stored, 1 = reversed).
std::vector<std::vector<char>> eulerian_orientations(const Graph& g);
Digraph orient_graph(const Graph& g, const std::vector<char>& flip);

// Canonical representatives (lexicographically least labeled form over
// degree-preserving vertex permutations) of connected eulerian multigraphs.
std::vector<Graph> enumerate_eulerian_multigraphs(int max_vertices, int max_edges,
                                                  bool include_trivial = false);

// Canonical eulerian digraphs obtained by orienting the multigraphs above.
std::vector<Digraph> enumerate_eulerian_digraphs(int max_vertices, int max_arcs);

// Canonical keys for isomorphism tests (degree-class permutation search).
std::vector<std::pair<VertexId, VertexId>> canonical_graph_key(const Graph& g);
std::vector<std::pair<VertexId, VertexId>> canonical_digraph_key(const Digraph& d);

// Every circuit decomposition of an eulerian graph, as the closed trails of a
// perfect-matching transition system at every vertex.
void for_each_circuit_decomposition(const Graph& g,
                                    const std::function<void(const std::vector<ClosedWalk>&)>& fn);

}  // namespace emberlin

#pragma once

#include <optional>
#include <vector>

#include "emberlin/graph.hpp"
#include "emberlin/transition.hpp"

namespace emberlin {

// Rotation system with edge signatures plus the derived facial structure.
// rotation[v] is the clockwise cyclic order of the half-edges at v; signature
// is indexed by edge_index and holds +1 or -1.  faces/euler_genus/orientable
// are filled in by trace().
struct Embedding {
    Graph graph;
    std::vector<std::vector<HalfEdgeId>> rotation;
    std::vector<signed char> signature;

    std::vector<ClosedWalk> faces;
    int euler_genus = -1;
    bool orientable = false;

    int num_faces() const { return static_cast<int>(faces.size()); }
    signed char sig(EdgeId e) const { return signature[graph.edge_index(e)]; }

    // Re-derives faces, genus and orientability from rotation + signature.
    void trace();
};

Embedding make_embedding(const Graph& g, std::vector<std::vector<HalfEdgeId>> rotation,
                         std::vector<signed char> signature);

// Face tracing on (rotation, signature); each half-edge side is used exactly
// once over all returned walks.
std::vector<ClosedWalk> trace_faces(const Embedding& e);

// Euler genus from the Euler formula; throws on a negative result.
int euler_genus(int n, int m, int f);

// Checks f == m - n == l (mod 2), the face-count parity forced on orientable
// embeddings of eulerian (di)graphs.
bool face_parity_check(int n, int m, int l, int f);

// True iff some set of vertex flips makes every signature positive.
bool is_orientable_embedding(const Embedding& e);

// Reverse rotations and negate non-loop signatures at the flip set, producing
// an equivalent embedding; used to normalize orientable embeddings to
// all-positive form.
Embedding apply_vertex_flips(const Embedding& e, const std::vector<char>& flip);
// Flip set normalizing to all-positive, or nullopt if nonorientable.
std::optional<std::vector<char>> orienting_flips(const Embedding& e);

// Synthesizes an embedding whose traced faces equal the given cyclically
// compatible collection (up to cyclic shift/reversal of each walk).
Embedding embedding_from_walks(const Graph& g, const std::vector<ClosedWalk>& walks);

// True iff the rotation at every vertex alternates between incoming and
// outgoing half-arcs (equivalently, all faces are directed walks).
bool is_directed_embedding(const Embedding& e, const Digraph& d);

struct FaceColoring {
    bool colorable = false;
    std::vector<int> color;  // per face index, 0 or 1
};

// 2-face-coloring of a directed embedding; succeeds iff orientable.
FaceColoring directed_orientability_via_2coloring(const Embedding& e, const Digraph& d);

// Faces of a directed embedding, each normalized to its directed traversal.
std::vector<ClosedWalk> directed_faces(const Embedding& e, const Digraph& d);

}  // namespace emberlin

#include "emberlin/embedding.hpp"

#include <algorithm>
#include <cassert>

namespace emberlin {

namespace {

// Positions of each half-edge within its rotation, plus succ/pred tables.
struct RotationTables {
    std::vector<HalfEdgeId> succ, pred;

    RotationTables(const Graph& g, const std::vector<std::vector<HalfEdgeId>>& rotation)
        : succ(g.num_half_edges(), -1), pred(g.num_half_edges(), -1) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            const auto& rot = rotation[v];
            const int d = static_cast<int>(rot.size());
            for (int i = 0; i < d; ++i) {
                succ[rot[i]] = rot[(i + 1) % d];
                pred[rot[i]] = rot[(i + d - 1) % d];
            }
        }
    }
};

void validate_rotation(const Graph& g, const std::vector<std::vector<HalfEdgeId>>& rotation) {
    if (static_cast<int>(rotation.size()) != g.num_vertices())
        throw PreconditionError("rotation must list every vertex");
    std::vector<char> seen(g.num_half_edges(), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        for (HalfEdgeId h : rotation[v]) {
            if (h < 0 || h >= g.num_half_edges() || g.incv(h) != v)
                throw PreconditionError("rotation at vertex " + std::to_string(v) +
                                        " lists a foreign half-edge");
            if (seen[h])
                throw PreconditionError("half-edge " + std::to_string(h) +
                                        " repeated in rotation");
            seen[h] = 1;
        }
        if (static_cast<int>(rotation[v].size()) != g.degree(v))
            throw PreconditionError("rotation at vertex " + std::to_string(v) + " is incomplete");
    }
}

}  // namespace

std::vector<ClosedWalk> trace_faces(const Embedding& e) {
    const Graph& g = e.graph;
    validate_rotation(g, e.rotation);
    const int nh = g.num_half_edges();
    if (nh == 0) return {ClosedWalk{}};  // trivial graph: one face

    RotationTables tables(g, e.rotation);
    auto neg = [&](HalfEdgeId h) -> int { return e.sig(g.edge_of(h)) < 0 ? 1 : 0; };

    // flag = 2*h + s, where s is the tracing sense at the moment of leaving
    std::vector<char> visited(2 * nh, 0);
    std::vector<ClosedWalk> faces;
    for (int start = 0; start < 2 * nh; ++start) {
        if (visited[start]) continue;
        ClosedWalk walk;
        int flag = start;
        do {
            HalfEdgeId h = flag >> 1;
            int s = flag & 1;
            assert(!visited[flag]);
            visited[flag] = 1;
            walk.steps.push_back(h);
            // mirror flag of this step, marking the reverse traversal used
            int mirror = 2 * g.mate(h) + ((s ^ 1) ^ neg(h));
            assert(!visited[mirror]);
            visited[mirror] = 1;
            HalfEdgeId arrive = g.mate(h);
            int s2 = s ^ neg(h);
            HalfEdgeId next = s2 == 0 ? tables.succ[arrive] : tables.pred[arrive];
            flag = 2 * next + s2;
        } while (flag != start);
        faces.push_back(std::move(walk));
    }
    return faces;
}

int euler_genus(int n, int m, int f) {
    int genus = 2 - n + m - f;
    if (genus < 0)
        throw PreconditionError("euler formula gives negative genus for (n,m,f) = (" +
                                std::to_string(n) + "," + std::to_string(m) + "," +
                                std::to_string(f) + ")");
    return genus;
}

bool face_parity_check(int n, int m, int l, int f) {
    return ((m - n) % 2 + 2) % 2 == (l % 2 + 2) % 2 && ((f % 2 + 2) % 2 == (l % 2 + 2) % 2);
}

void Embedding::trace() {
    if (!graph.connected()) throw PreconditionError("embeddings require a connected graph");
    faces = trace_faces(*this);
    euler_genus = emberlin::euler_genus(graph.num_vertices(), graph.num_edges(), num_faces());
    orientable = is_orientable_embedding(*this);
}

Embedding make_embedding(const Graph& g, std::vector<std::vector<HalfEdgeId>> rotation,
                         std::vector<signed char> signature) {
    if (static_cast<int>(signature.size()) != g.num_edges())
        throw PreconditionError("signature must cover every edge");
    for (signed char s : signature)
        if (s != 1 && s != -1) throw PreconditionError("signature entries must be +1 or -1");
    Embedding e{g, std::move(rotation), std::move(signature), {}, -1, false};
    e.trace();
    return e;
}

std::optional<std::vector<char>> orienting_flips(const Embedding& e) {
    const Graph& g = e.graph;
    for (EdgeId ed : g.edges())
        if (g.is_loop(ed) && e.sig(ed) < 0) return std::nullopt;
    std::vector<char> flip(g.num_vertices(), 0), seen(g.num_vertices(), 0);
    for (VertexId root = 0; root < g.num_vertices(); ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (HalfEdgeId h : g.star(v)) {
                EdgeId ed = g.edge_of(h);
                if (g.is_loop(ed)) continue;
                VertexId u = g.incv(g.mate(h));
                char want = flip[v] ^ (e.sig(ed) < 0 ? 1 : 0);
                if (!seen[u]) {
                    seen[u] = 1;
                    flip[u] = want;
                    stack.push_back(u);
                } else if (flip[u] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return flip;
}

bool is_orientable_embedding(const Embedding& e) { return orienting_flips(e).has_value(); }

Embedding apply_vertex_flips(const Embedding& e, const std::vector<char>& flip) {
    Embedding out = e;
    for (VertexId v = 0; v < e.graph.num_vertices(); ++v)
        if (flip[v]) std::reverse(out.rotation[v].begin(), out.rotation[v].end());
    for (EdgeId ed : e.graph.edges()) {
        auto [u, w] = e.graph.endpoints(ed);
        if (flip[u] ^ flip[w]) out.signature[e.graph.edge_index(ed)] *= -1;
    }
    out.trace();
    return out;
}

Embedding embedding_from_walks(const Graph& g, const std::vector<ClosedWalk>& walks) {
    if (g.num_half_edges() == 0) {
        return make_embedding(g, std::vector<std::vector<HalfEdgeId>>(g.num_vertices()), {});
    }
    CompatibilityResult compat = is_cyclically_compatible(g, walks);
    if (!compat.compatible)
        throw PreconditionError("walk collection is not cyclically compatible (vertex " +
                                std::to_string(*compat.failing_vertex) + ")");

    // rotation at each vertex = the single transition cycle
    std::vector<std::vector<HalfEdgeId>> rotation(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        rotation[v] = transition_graph(g, walks, v).cycle_order();
    RotationTables tables(g, rotation);

    // One passage per walk step: arriving via mate(steps[i]), leaving via
    // steps[i+1].  Passage orientation bit c: 0 if the passage uses the
    // forward corner (leave == succ(arrive)), 1 if the backward one; free when
    // the vertex has degree <= 2.  Edge signatures satisfy
    // neg(e) = c_before ^ c_after for each traversal, and the two traversals
    // of an edge must agree.  Solve the induced GF(2) system.
    struct Passage {
        int value = -1;  // -1 free, else 0/1
        int var = -1;    // column index when free
    };
    std::vector<std::vector<Passage>> passages(walks.size());
    int num_vars = 0;
    for (size_t k = 0; k < walks.size(); ++k) {
        const auto& steps = walks[k].steps;
        const int len = static_cast<int>(steps.size());
        passages[k].resize(len);
        for (int i = 0; i < len; ++i) {
            HalfEdgeId arrive = g.mate(steps[i]);
            HalfEdgeId leave = steps[(i + 1) % len];
            bool fwd = tables.succ[arrive] == leave;
            bool bwd = tables.pred[arrive] == leave;
            if (!fwd && !bwd)
                throw VerificationError("transition not adjacent in rotation cycle");
            if (fwd && bwd)
                passages[k][i].var = num_vars++;
            else
                passages[k][i].value = fwd ? 0 : 1;
        }
    }

    // traversals per edge: (walk, step index)
    std::vector<std::vector<std::pair<int, int>>> traversals(g.num_edges());
    for (size_t k = 0; k < walks.size(); ++k)
        for (int i = 0; i < walks[k].length(); ++i)
            traversals[g.edge_index(g.edge_of(walks[k].steps[i]))].push_back(
                {static_cast<int>(k), i});
    for (const auto& tr : traversals)
        if (tr.size() != 2)
            throw VerificationError("compatible collection must use each edge exactly twice");

    // rows: for each edge, c(k,i-1) ^ c(k,i) ^ c(k',i'-1) ^ c(k',i') = 0
    std::vector<std::vector<char>> rows;
    auto passage_of = [&](int k, int step) -> const Passage& {
        int len = walks[k].length();
        return passages[k][((step % len) + len) % len];
    };
    for (int eidx = 0; eidx < g.num_edges(); ++eidx) {
        std::vector<char> row(num_vars + 1, 0);
        for (auto [k, i] : traversals[eidx]) {
            for (const Passage* p : {&passage_of(k, i - 1), &passage_of(k, i)}) {
                if (p->var >= 0)
                    row[p->var] ^= 1;
                else
                    row[num_vars] ^= static_cast<char>(p->value);
            }
        }
        rows.push_back(std::move(row));
    }
    // gaussian elimination; free variables default to 0
    std::vector<int> assign(num_vars, 0);
    {
        int rank = 0;
        for (int col = 0; col < num_vars && rank < static_cast<int>(rows.size()); ++col) {
            int pivot = -1;
            for (int r = rank; r < static_cast<int>(rows.size()); ++r)
                if (rows[r][col]) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(rows[rank], rows[pivot]);
            for (int r = 0; r < static_cast<int>(rows.size()); ++r)
                if (r != rank && rows[r][col])
                    for (int c = col; c <= num_vars; ++c) rows[r][c] ^= rows[rank][c];
            ++rank;
        }
        for (const auto& row : rows) {
            bool all_zero = std::all_of(row.begin(), row.end() - 1, [](char c) { return !c; });
            if (all_zero && row[num_vars])
                throw VerificationError("signature system inconsistent");
        }
        for (int r = 0; r < rank; ++r) {
            int lead = -1;
            for (int c = 0; c < num_vars; ++c)
                if (rows[r][c]) {
                    lead = c;
                    break;
                }
            if (lead >= 0) assign[lead] = rows[r][num_vars];  // other vars stay 0
        }
    }
    auto c_value = [&](int k, int step) -> int {
        const Passage& p = passage_of(k, step);
        return p.var >= 0 ? assign[p.var] : p.value;
    };
    std::vector<signed char> signature(g.num_edges(), 1);
    for (int eidx = 0; eidx < g.num_edges(); ++eidx) {
        auto [k, i] = traversals[eidx][0];
        if (c_value(k, i - 1) ^ c_value(k, i)) signature[eidx] = -1;
    }

    Embedding result = make_embedding(g, std::move(rotation), std::move(signature));
    if (canonical_walk_multiset(g, result.faces) != canonical_walk_multiset(g, walks))
        throw VerificationError("embedding_from_walks: traced faces differ from input walks");
    return result;
}

bool is_directed_embedding(const Embedding& e, const Digraph& d) {
    for (VertexId v = 0; v < d.num_vertices(); ++v) {
        const auto& rot = e.rotation[v];
        const int deg = static_cast<int>(rot.size());
        for (int i = 0; i < deg; ++i)
            if (d.outgoing(rot[i]) == d.outgoing(rot[(i + 1) % deg])) return false;
    }
    return true;
}

std::vector<ClosedWalk> directed_faces(const Embedding& e, const Digraph& d) {
    if (!is_directed_embedding(e, d))
        throw PreconditionError("embedding is not a directed embedding");
    std::vector<ClosedWalk> result;
    result.reserve(e.faces.size());
    for (const ClosedWalk& f : e.faces) {
        if (f.empty()) {
            result.push_back({{}, true});
            continue;
        }
        ClosedWalk w = f;
        if (!d.outgoing(w.steps[0])) w = w.reversed(d);
        w.directed = true;
        validate_walk(d, w);
        result.push_back(std::move(w));
    }
    return result;
}

FaceColoring directed_orientability_via_2coloring(const Embedding& e, const Digraph& d) {
    std::vector<ClosedWalk> faces = directed_faces(e, d);
    // each arc is traversed forward by exactly two face passages
    std::vector<std::vector<int>> on_arc(d.num_edges());
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi)
        for (HalfEdgeId h : faces[fi].steps) on_arc[d.edge_index(d.edge_of(h))].push_back(fi);
    FaceColoring coloring;
    coloring.color.assign(faces.size(), -1);
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        if (coloring.color[fi] >= 0) continue;
        coloring.color[fi] = 0;
        std::vector<int> stack{fi};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (HalfEdgeId h : faces[x].steps) {
                for (int y : on_arc[d.edge_index(d.edge_of(h))]) {
                    if (y == x) continue;
                    if (coloring.color[y] < 0) {
                        coloring.color[y] = coloring.color[x] ^ 1;
                        stack.push_back(y);
                    } else if (coloring.color[y] == coloring.color[x]) {
                        return coloring;  // colorable stays false
                    }
                }
            }
        }
    }
    // an arc with both sides on one face is never 2-colorable
    for (const auto& fs : on_arc)
        if (fs.size() == 2 && fs[0] == fs[1]) return coloring;
    coloring.colorable = true;
    return coloring;
}

}  // namespace emberlin

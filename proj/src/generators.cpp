#include "emberlin/generators.hpp"

#include <algorithm>
#include <numeric>

#include "emberlin/euler.hpp"
#include "emberlin/obstructions.hpp"

namespace emberlin {

Digraph gen_dip4() { return build_digraph({{0, 1}, {0, 1}, {1, 0}, {1, 0}}); }

Digraph gen_ddc(int n) {
    if (n < 2) throw PreconditionError("gen_ddc requires n >= 2");
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n});      // a_i
    for (int i = 0; i < n; ++i) arcs.push_back({(i + 1) % n, i});      // b_i
    return build_digraph(arcs, n);
}

Digraph gen_dp(int l) {
    if (l < 0) throw PreconditionError("gen_dp requires l >= 0");
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (int i = 0; i <= l; ++i) {
        arcs.push_back({i, i + 1});
        arcs.push_back({i + 1, i});
    }
    return build_digraph(arcs, l + 2);
}

Graph gen_fst_host(int s, int t) {
    if (s < 1 || t < 1) throw PreconditionError("gen_fst_host requires s, t >= 1");
    // chain C: vertices 0..s, chain Cbar: s+1..s+1+t, balancing vertex z last
    std::vector<std::pair<VertexId, VertexId>> edges;
    auto digon = [&](VertexId a, VertexId b) {
        edges.push_back({a, b});
        edges.push_back({a, b});
    };
    for (int i = 0; i < s; ++i) digon(i, i + 1);
    const int r0 = s + 1;  // rear of Cbar
    for (int i = 0; i < t; ++i) digon(r0 + i, r0 + i + 1);
    const VertexId front_c = s, rear_cb = r0, front_cb = r0 + t;
    const VertexId z = r0 + t + 1;
    edges.push_back({front_c, rear_cb});   // f1
    edges.push_back({front_c, front_cb});  // f2
    // close up: every chain vertex must reach degree exactly 4
    digon(0, z);                  // rear of C
    edges.push_back({rear_cb, z});
    edges.push_back({front_cb, z});
    Graph g = build_graph(edges, z + 1);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) != 4) throw VerificationError("gen_fst_host: host is not 4-regular");
    return g;
}

std::pair<Digraph, ClosedWalk> gen_unlaced() {
    // u = 0 with digons to 1,2,3; v = 4 with digons to 5,6,7; one arc each way
    // between u and v.  Every euler circuit keeps all visits to u consecutive.
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (VertexId p : {1, 2, 3}) {
        arcs.push_back({0, p});
        arcs.push_back({p, 0});
    }
    for (VertexId q : {5, 6, 7}) {
        arcs.push_back({4, q});
        arcs.push_back({q, 4});
    }
    arcs.push_back({0, 4});
    arcs.push_back({4, 0});
    Digraph d = build_digraph(arcs, 8);
    ClosedWalk t = euler_circuit(d, 0);
    if (interlaces(d, t, 0, 4)) throw VerificationError("gen_unlaced: circuit interlaces");
    return {std::move(d), std::move(t)};
}

Graph gen_tree_of_cycles(const std::vector<std::pair<int, int>>& blocks) {
    if (blocks.empty()) throw PreconditionError("gen_tree_of_cycles needs at least one block");
    std::vector<std::pair<VertexId, VertexId>> edges;
    int next_vertex = 1;
    for (auto [attach, len] : blocks) {
        if (len < 1) throw PreconditionError("cycle length must be >= 1");
        if (attach < 0 || attach >= next_vertex)
            throw PreconditionError("attach vertex does not exist yet");
        if (len == 1) {
            edges.push_back({attach, attach});  // loop block
            continue;
        }
        VertexId prev = attach;
        for (int i = 0; i < len - 1; ++i) {
            edges.push_back({prev, next_vertex});
            prev = next_vertex++;
        }
        edges.push_back({prev, attach});
    }
    return build_graph(edges, next_vertex);
}

Digraph gen_join_chain(int k) {
    if (k < 1) throw PreconditionError("gen_join_chain requires k >= 1");
    Digraph h = gen_dip4();
    for (int i = 1; i < k; ++i) {
        // cross the last arc of the current digraph with the first arc of a
        // fresh dip4
        Digraph next = gen_dip4();
        EdgeId a = h.edges().back();
        EdgeId b = next.edges().front();
        h = two_edge_join(h, a, next, b);
    }
    return h;
}

std::pair<Digraph, ClosedWalk> rand_eulerian_digraph(std::mt19937_64& rng, int max_vertices,
                                                     bool odd_visits) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int n = nv(rng);
    // visit counts per vertex: 1..3, odd when requested
    std::vector<int> visits(n);
    for (int v = 0; v < n; ++v) {
        std::uniform_int_distribution<int> c(1, 3);
        int k = c(rng);
        if (odd_visits && k % 2 == 0) k = k == 2 ? 1 : 3;
        visits[v] = k;
    }
    std::vector<VertexId> sequence;
    for (int v = 0; v < n; ++v) sequence.insert(sequence.end(), visits[v], v);
    std::shuffle(sequence.begin(), sequence.end(), rng);
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (size_t i = 0; i < sequence.size(); ++i)
        arcs.push_back({sequence[i], sequence[(i + 1) % sequence.size()]});
    Digraph d = build_digraph(arcs, n);
    ClosedWalk t;
    t.directed = true;
    for (size_t i = 0; i < arcs.size(); ++i) t.steps.push_back(2 * static_cast<int>(i));
    validate_walk(d, t);
    if (!is_euler_circuit(d, t)) throw VerificationError("random walk is not an euler circuit");
    return {std::move(d), std::move(t)};
}

}  // namespace emberlin

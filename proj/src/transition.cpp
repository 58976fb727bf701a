#include "emberlin/transition.hpp"

#include <algorithm>
#include <map>

namespace emberlin {

namespace {

int node_pos(const std::vector<HalfEdgeId>& nodes, HalfEdgeId h) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), h);
    return static_cast<int>(it - nodes.begin());
}

}  // namespace

int TransitionGraph::degree(HalfEdgeId h) const {
    int d = 0;
    for (auto [a, b] : edges) {
        if (a == h) ++d;
        if (b == h) ++d;
    }
    return d;
}

bool TransitionGraph::is_perfect_matching() const {
    if (edges.size() * 2 != nodes.size()) return false;
    for (HalfEdgeId h : nodes)
        if (degree(h) != 1) return false;
    return true;
}

std::vector<int> TransitionGraph::components() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        int pa = node_pos(nodes, a), pb = node_pos(nodes, b);
        adj[pa].push_back(pb);
        adj[pb].push_back(pa);
    }
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = next;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

bool TransitionGraph::is_single_cycle() const {
    if (nodes.empty()) return false;
    if (edges.size() != nodes.size()) return false;
    for (HalfEdgeId h : nodes)
        if (degree(h) != 2) return false;
    std::vector<int> comp = components();
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

bool TransitionGraph::is_subgraph_of_cycle() const {
    for (HalfEdgeId h : nodes)
        if (degree(h) > 2) return false;
    if (is_single_cycle()) return true;
    // otherwise no component may close a cycle: in a max-degree-2 graph this
    // means every component has fewer edges than nodes
    std::vector<int> comp = components();
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> comp_nodes(ncomp, 0), comp_edges(ncomp, 0);
    for (int c : comp) ++comp_nodes[c];
    for (auto [a, b] : edges) ++comp_edges[comp[node_pos(nodes, a)]];
    for (int c = 0; c < ncomp; ++c)
        if (comp_edges[c] >= comp_nodes[c]) return false;
    return true;
}

std::vector<HalfEdgeId> TransitionGraph::cycle_order() const {
    // walk the 2-regular connected graph from the least node
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor pos, edge idx)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        int pa = node_pos(nodes, edges[e].first), pb = node_pos(nodes, edges[e].second);
        adj[pa].push_back({pb, e});
        adj[pb].push_back({pa, e});
    }
    std::vector<char> used_edge(edges.size(), 0);
    std::vector<HalfEdgeId> order;
    int pos = 0;
    for (int k = 0; k < n; ++k) {
        order.push_back(nodes[pos]);
        bool advanced = false;
        for (auto [nb, e] : adj[pos]) {
            if (used_edge[e]) continue;
            used_edge[e] = 1;
            pos = nb;
            advanced = true;
            break;
        }
        if (!advanced) throw VerificationError("cycle_order called on a non-cycle");
    }
    return order;
}

TransitionGraph transition_graph(const Graph& g, const std::vector<ClosedWalk>& walks,
                                 VertexId v) {
    if (v < 0 || v >= g.num_vertices()) throw PreconditionError("transition_graph: bad vertex");
    TransitionGraph tr;
    tr.anchor = v;
    tr.nodes = g.star(v);
    std::sort(tr.nodes.begin(), tr.nodes.end());
    for (const ClosedWalk& w : walks) {
        validate_walk(g, w);
        const int n = w.length();
        for (int i = 0; i < n; ++i) {
            HalfEdgeId arrive = g.mate(w.steps[i]);
            HalfEdgeId leave = w.steps[(i + 1) % n];
            if (g.incv(arrive) != v) continue;
            tr.edges.push_back({std::min(arrive, leave), std::max(arrive, leave)});
        }
    }
    std::sort(tr.edges.begin(), tr.edges.end());
    return tr;
}

CompatibilityResult is_cyclically_compatible(const Graph& g,
                                             const std::vector<ClosedWalk>& walks) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) == 0) continue;  // trivial graph only
        TransitionGraph tr = transition_graph(g, walks, v);
        if (!tr.is_single_cycle()) return {false, v};
    }
    return {true, std::nullopt};
}

std::vector<ClosedWalk> walks_from_transition_system(const Graph& g,
                                                     const std::vector<HalfEdgeId>& partner) {
    const int nh = g.num_half_edges();
    if (static_cast<int>(partner.size()) != nh)
        throw PreconditionError("transition system must cover all half-edges");
    for (HalfEdgeId h = 0; h < nh; ++h) {
        if (partner[h] == h || partner[partner[h]] != h)
            throw PreconditionError("transition system is not an involution");
        if (g.incv(partner[h]) != g.incv(h))
            throw PreconditionError("transition pairs must share a vertex");
    }
    std::vector<char> visited(nh, 0);
    std::vector<ClosedWalk> walks;
    for (HalfEdgeId start = 0; start < nh; ++start) {
        if (visited[start]) continue;
        ClosedWalk walk;
        HalfEdgeId g0 = start;
        do {
            if (visited[g0]) throw VerificationError("transition trail revisits a half-edge");
            visited[g0] = 1;
            walk.steps.push_back(g0);
            g0 = partner[g.mate(g0)];
        } while (g0 != start);
        // the reversed traversal uses the mates as leaving halves
        for (HalfEdgeId h : walk.steps) {
            if (visited[g.mate(h)])
                throw VerificationError("transition trail is its own reverse");
            visited[g.mate(h)] = 1;
        }
        walks.push_back(std::move(walk));
    }
    return walks;
}

}  // namespace emberlin

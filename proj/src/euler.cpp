#include "emberlin/euler.hpp"

#include <algorithm>
#include <queue>

namespace emberlin {

namespace {

// Greedy closed subtour from v over unused edges, always taking the least
// unused half-edge (out-half-arcs only in directed mode).
std::vector<HalfEdgeId> subtour(const Graph& g, const std::vector<char>* outgoing,
                                std::vector<char>& edge_used, VertexId v) {
    std::vector<HalfEdgeId> steps;
    VertexId cur = v;
    for (;;) {
        HalfEdgeId pick = -1;
        for (HalfEdgeId h : g.star(cur)) {
            if (edge_used[g.edge_index(g.edge_of(h))]) continue;
            if (outgoing && !(*outgoing)[h]) continue;
            pick = h;
            break;
        }
        if (pick < 0) break;
        edge_used[g.edge_index(g.edge_of(pick))] = 1;
        steps.push_back(pick);
        cur = g.incv(g.mate(pick));
    }
    if (cur != v) throw VerificationError("subtour did not close up");
    return steps;
}

ClosedWalk hierholzer(const Graph& g, const std::vector<char>* outgoing, VertexId start,
                      bool directed) {
    if (start < 0 || start >= g.num_vertices())
        throw PreconditionError("euler_circuit: start vertex out of range");
    std::vector<char> edge_used(g.num_edges(), 0);
    std::vector<HalfEdgeId> circuit = subtour(g, outgoing, edge_used, start);
    int used = static_cast<int>(circuit.size());
    // splice at the earliest vertex of the current circuit with unused edges
    int scan = 0;
    while (used < g.num_edges()) {
        bool spliced = false;
        for (int i = scan; i < static_cast<int>(circuit.size()); ++i) {
            VertexId v = g.incv(circuit[i]);
            std::vector<HalfEdgeId> extra = subtour(g, outgoing, edge_used, v);
            if (extra.empty()) continue;
            circuit.insert(circuit.begin() + i, extra.begin(), extra.end());
            used += static_cast<int>(extra.size());
            scan = i;
            spliced = true;
            break;
        }
        if (!spliced) throw PreconditionError("graph is not connected");
    }
    ClosedWalk w{std::move(circuit), directed};
    return w;
}

}  // namespace

ClosedWalk euler_circuit(const Graph& g, VertexId start) {
    if (!g.is_eulerian())
        throw PreconditionError("euler_circuit requires a connected even-degree graph");
    if (g.num_edges() == 0) return ClosedWalk{};
    ClosedWalk w = hierholzer(g, nullptr, start, false);
    if (!is_euler_circuit(g, w)) throw VerificationError("euler_circuit output invalid");
    return w;
}

ClosedWalk euler_circuit(const Digraph& d, VertexId start) {
    if (!d.is_eulerian())
        throw PreconditionError("euler_circuit requires a connected balanced digraph");
    if (d.num_edges() == 0) return ClosedWalk{{}, true};
    std::vector<char> outgoing(d.num_half_edges());
    for (HalfEdgeId h = 0; h < d.num_half_edges(); ++h) outgoing[h] = d.outgoing(h);
    ClosedWalk w = hierholzer(d, &outgoing, start, true);
    if (!is_euler_circuit(d, w)) throw VerificationError("euler_circuit output invalid");
    return w;
}

namespace {

bool subsequence_from_start(const std::vector<VertexId>& have,
                            const std::vector<VertexId>& want) {
    if (want.empty()) return true;
    if (have.empty() || have[0] != want[0]) return false;
    size_t j = 1;
    for (size_t i = 1; i < have.size() && j < want.size(); ++i)
        if (have[i] == want[j]) ++j;
    return j == want.size();
}

// Backtracking search for arc-disjoint simple-path legs target[i] -> target[i+1].
// Stopping each leg at its first arrival loses no solutions: it only frees arcs
// for later legs.
struct TrailFinder {
    const Digraph& d;
    std::vector<VertexId> targets;  // consecutive duplicates collapsed
    std::vector<char> arc_used;
    std::vector<HalfEdgeId> steps;
    long nodes = 0;
    static constexpr long kNodeBudget = 2'000'000;

    TrailFinder(const Digraph& dd, const std::vector<VertexId>& seq)
        : d(dd), arc_used(dd.num_edges(), 0) {
        for (VertexId v : seq)
            if (targets.empty() || targets.back() != v) targets.push_back(v);
    }

    bool solve(size_t leg) {
        if (leg + 1 >= targets.size()) return true;
        std::vector<char> on_path(d.num_vertices(), 0);
        return dfs(leg, targets[leg], on_path);
    }

    bool dfs(size_t leg, VertexId cur, std::vector<char>& on_path) {
        if (++nodes > kNodeBudget)
            throw PreconditionError("euler_circuit_through: trail search budget exhausted");
        on_path[cur] = 1;
        const VertexId target = targets[leg + 1];
        for (HalfEdgeId h : d.star(cur)) {
            if (!d.outgoing(h)) continue;
            int ai = d.edge_index(d.edge_of(h));
            if (arc_used[ai]) continue;
            VertexId nxt = d.incv(d.mate(h));
            if (nxt != target && on_path[nxt]) continue;  // legs stay simple
            arc_used[ai] = 1;
            steps.push_back(h);
            bool ok = nxt == target ? solve(leg + 1) : dfs(leg, nxt, on_path);
            if (ok) return true;
            steps.pop_back();
            arc_used[ai] = 0;
        }
        on_path[cur] = 0;
        return false;
    }

    std::optional<std::vector<HalfEdgeId>> run() {
        if (solve(0)) return steps;
        return std::nullopt;
    }
};

}  // namespace

ClosedWalk euler_circuit_through(const Digraph& d, const std::vector<VertexId>& seq,
                                 const std::optional<std::vector<HalfEdgeId>>& trail) {
    if (!d.is_eulerian()) throw PreconditionError("euler_circuit_through requires eulerian digraph");
    if (seq.empty()) throw PreconditionError("euler_circuit_through: empty vertex sequence");
    for (VertexId v : seq)
        if (v < 0 || v >= d.num_vertices())
            throw PreconditionError("euler_circuit_through: vertex out of range");

    std::vector<HalfEdgeId> base;
    if (trail) {
        base = *trail;
        std::vector<char> used(d.num_edges(), 0);
        for (size_t i = 0; i < base.size(); ++i) {
            HalfEdgeId h = base[i];
            if (h < 0 || h >= d.num_half_edges() || !d.outgoing(h))
                throw PreconditionError("trail must consist of outgoing half-arcs");
            if (used[d.edge_index(d.edge_of(h))])
                throw PreconditionError("trail repeats an arc");
            used[d.edge_index(d.edge_of(h))] = 1;
            if (i + 1 < base.size() && d.incv(d.mate(h)) != d.incv(base[i + 1]))
                throw PreconditionError("trail is not connected");
        }
        std::vector<VertexId> verts;
        if (!base.empty()) {
            for (HalfEdgeId h : base) verts.push_back(d.incv(h));
            verts.push_back(d.incv(d.mate(base.back())));
        } else {
            verts.push_back(seq[0]);
        }
        if (!subsequence_from_start(verts, seq))
            throw PreconditionError("trail does not visit the requested vertices in order");
    } else if (seq.size() > 1) {
        TrailFinder finder(d, seq);
        auto found = finder.run();
        if (!found)
            throw PreconditionError("no directed trail visiting the requested vertices in order");
        base = *found;
    }

    // close the trail, then absorb the remaining circuits
    std::vector<char> edge_used(d.num_edges(), 0);
    for (HalfEdgeId h : base) edge_used[d.edge_index(d.edge_of(h))] = 1;
    std::vector<HalfEdgeId> circuit = base;
    VertexId start = seq[0];
    VertexId end = circuit.empty() ? start : d.incv(d.mate(circuit.back()));
    if (end != start) {
        // remainder has one surplus out-arc at `end`; walk it back to `start`
        VertexId cur = end;
        while (cur != start) {
            HalfEdgeId pick = -1;
            for (HalfEdgeId h : d.star(cur)) {
                if (!d.outgoing(h)) continue;
                if (edge_used[d.edge_index(d.edge_of(h))]) continue;
                pick = h;
                break;
            }
            if (pick < 0) throw VerificationError("closing walk stuck");
            edge_used[d.edge_index(d.edge_of(pick))] = 1;
            circuit.push_back(pick);
            cur = d.incv(d.mate(pick));
        }
    }
    int used = 0;
    for (char c : edge_used) used += c;
    std::vector<char> outgoing(d.num_half_edges());
    for (HalfEdgeId h = 0; h < d.num_half_edges(); ++h) outgoing[h] = d.outgoing(h);
    int scan = 0;
    while (used < d.num_edges()) {
        bool spliced = false;
        if (circuit.empty()) {
            std::vector<HalfEdgeId> extra = subtour(d, &outgoing, edge_used, start);
            used += static_cast<int>(extra.size());
            circuit = std::move(extra);
            spliced = !circuit.empty();
        } else {
            for (int i = scan; i < static_cast<int>(circuit.size()); ++i) {
                VertexId v = d.incv(circuit[i]);
                std::vector<HalfEdgeId> extra = subtour(d, &outgoing, edge_used, v);
                if (extra.empty()) continue;
                circuit.insert(circuit.begin() + i, extra.begin(), extra.end());
                used += static_cast<int>(extra.size());
                scan = i;
                spliced = true;
                break;
            }
        }
        if (!spliced) throw PreconditionError("digraph is not connected");
    }
    ClosedWalk w{std::move(circuit), true};
    if (!is_euler_circuit(d, w)) throw VerificationError("euler_circuit_through output invalid");
    std::vector<VertexId> verts = w.vertex_sequence(d);
    verts.push_back(verts.empty() ? seq[0] : verts[0]);
    if (!subsequence_from_start(verts, seq))
        throw PreconditionError("no euler circuit visiting the requested vertices in order");
    return w;
}

namespace {

struct FlowNetwork {
    const Digraph& d;
    std::vector<signed char> flow;  // per arc: 0 or 1

    explicit FlowNetwork(const Digraph& dd) : d(dd), flow(dd.num_edges(), 0) {}

    // BFS augmenting path; forward arcs with flow 0, backward with flow 1.
    bool augment(VertexId s, VertexId t) {
        std::vector<int> via(d.num_vertices(), -2);  // encodes arc index and direction
        std::queue<VertexId> q;
        via[s] = -1;
        q.push(s);
        while (!q.empty() && via[t] == -2) {
            VertexId v = q.front();
            q.pop();
            for (HalfEdgeId h : d.star(v)) {
                EdgeId a = d.edge_of(h);
                int ai = d.edge_index(a);
                VertexId other;
                int code;
                if (d.outgoing(h)) {
                    if (flow[ai]) continue;
                    other = d.head(a);
                    code = 2 * ai;
                } else {
                    if (!flow[ai]) continue;
                    other = d.tail(a);
                    code = 2 * ai + 1;
                }
                if (via[other] != -2) continue;
                via[other] = code;
                q.push(other);
            }
        }
        if (via[t] == -2) return false;
        VertexId v = t;
        while (v != s) {
            int code = via[v];
            int ai = code / 2;
            EdgeId a = d.edges()[ai];
            if (code % 2 == 0) {
                flow[ai] = 1;
                v = d.tail(a);
            } else {
                flow[ai] = 0;
                v = d.head(a);
            }
        }
        return true;
    }

    std::vector<char> residual_reachable(VertexId s) const {
        std::vector<char> seen(d.num_vertices(), 0);
        std::vector<VertexId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (HalfEdgeId h : d.star(v)) {
                EdgeId a = d.edge_of(h);
                int ai = d.edge_index(a);
                VertexId other = d.outgoing(h) ? d.head(a) : d.tail(a);
                bool passable = d.outgoing(h) ? !flow[ai] : flow[ai] != 0;
                if (passable && !seen[other]) {
                    seen[other] = 1;
                    stack.push_back(other);
                }
            }
        }
        return seen;
    }
};

// Extract a simple path from a unit flow / arc set by walking and excising
// loops; consumed arcs are cleared from `avail`.
DirectedPath walk_off_path(const Digraph& d, std::vector<char>& avail, VertexId from,
                           VertexId to) {
    std::vector<HalfEdgeId> walk;
    VertexId cur = from;
    while (cur != to || walk.empty()) {
        HalfEdgeId pick = -1;
        for (HalfEdgeId h : d.star(cur)) {
            if (!d.outgoing(h)) continue;
            if (!avail[d.edge_index(d.edge_of(h))]) continue;
            pick = h;
            break;
        }
        if (pick < 0) throw VerificationError("flow decomposition stuck");
        avail[d.edge_index(d.edge_of(pick))] = 0;
        walk.push_back(pick);
        cur = d.incv(d.mate(pick));
        if (cur == to) break;
    }
    // excise loops so the path is simple
    for (;;) {
        std::vector<int> seen_at(d.num_vertices(), -1);
        VertexId v = from;
        int cut_from = -1, cut_to = -1;
        seen_at[v] = 0;
        for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
            v = d.incv(d.mate(walk[i]));
            if (seen_at[v] >= 0 && i + 1 < static_cast<int>(walk.size())) {
                cut_from = seen_at[v];
                cut_to = i + 1;
                break;
            }
            if (seen_at[v] < 0) seen_at[v] = i + 1;
        }
        if (cut_from < 0) break;
        walk.erase(walk.begin() + cut_from, walk.begin() + cut_to);
    }
    return DirectedPath{from, to, std::move(walk)};
}

}  // namespace

PathPairFamily arc_disjoint_path_pairs(const Digraph& d, VertexId s, VertexId t, int k) {
    if (!d.is_eulerian()) throw PreconditionError("arc_disjoint_path_pairs requires eulerian digraph");
    if (s == t || s < 0 || t < 0 || s >= d.num_vertices() || t >= d.num_vertices())
        throw PreconditionError("arc_disjoint_path_pairs: bad terminals");
    if (k < 1) throw PreconditionError("arc_disjoint_path_pairs: k must be positive");

    FlowNetwork net(d);
    int value = 0;
    while (value < k && net.augment(s, t)) ++value;
    if (value < k) {
        std::vector<char> side = net.residual_reachable(s);
        std::vector<EdgeId> cut;
        for (EdgeId e : d.edges()) {
            auto [u, w] = d.endpoints(e);
            if (side[u] != side[w]) cut.push_back(e);
        }
        throw CutConditionError(
            "cut separating " + std::to_string(s) + " and " + std::to_string(t) + " has " +
                std::to_string(cut.size()) + " edges, need at least " + std::to_string(2 * k),
            std::move(cut));
    }

    PathPairFamily family;
    family.k = k;
    std::vector<char> flow_arcs(d.num_edges(), 0);
    for (int i = 0; i < d.num_edges(); ++i) flow_arcs[i] = net.flow[i];
    for (int i = 0; i < k; ++i) family.forward.push_back(walk_off_path(d, flow_arcs, s, t));

    // Gallai step: the remaining arcs carry a unit flow with net inflow k at s
    // and net outflow k at t; split off k t->s paths, the rest are cycles.
    std::vector<char> remaining(d.num_edges(), 1);
    for (const DirectedPath& p : family.forward)
        for (HalfEdgeId h : p.steps) remaining[d.edge_index(d.edge_of(h))] = 0;
    std::vector<int> excess(d.num_vertices(), 0);
    for (EdgeId a : d.edges())
        if (remaining[d.edge_index(a)]) {
            ++excess[d.tail(a)];
            --excess[d.head(a)];
        }
    if (excess[t] != k || excess[s] != -k)
        throw VerificationError("residual flow does not balance as expected");
    for (int i = 0; i < k; ++i) family.backward.push_back(walk_off_path(d, remaining, t, s));
    // what is left re-sums to zero everywhere (circulation)
    std::vector<int> leftover(d.num_vertices(), 0);
    for (EdgeId a : d.edges())
        if (remaining[d.edge_index(a)]) {
            ++leftover[d.tail(a)];
            --leftover[d.head(a)];
        }
    for (int x : leftover)
        if (x != 0) throw VerificationError("Gallai decomposition left an unbalanced residue");

    std::vector<char> seen(d.num_edges(), 0);
    for (const auto* side : {&family.forward, &family.backward})
        for (const DirectedPath& p : *side)
            for (HalfEdgeId h : p.steps) {
                int ai = d.edge_index(d.edge_of(h));
                if (seen[ai]) throw VerificationError("path family is not arc-disjoint");
                seen[ai] = 1;
            }
    return family;
}

ClosedWalk interlacing_euler_circuit(const Digraph& d, VertexId s, VertexId t) {
    PathPairFamily family = arc_disjoint_path_pairs(d, s, t, 2);
    std::vector<HalfEdgeId> trail;
    for (const DirectedPath* p :
         {&family.forward[0], &family.backward[0], &family.forward[1], &family.backward[1]})
        trail.insert(trail.end(), p->steps.begin(), p->steps.end());
    ClosedWalk w = euler_circuit_through(d, {s, t, s, t}, trail);
    if (!interlaces(d, w, s, t))
        throw VerificationError("interlacing_euler_circuit output does not interlace");
    return w;
}

bool interlaces(const Graph& g, const ClosedWalk& walk, VertexId s, VertexId t) {
    std::vector<VertexId> word;
    for (VertexId v : walk.vertex_sequence(g))
        if (v == s || v == t) word.push_back(v);
    if (word.size() < 4) return false;
    int blocks = 0;
    const int n = static_cast<int>(word.size());
    for (int i = 0; i < n; ++i)
        if (word[i] != word[(i + 1) % n]) ++blocks;
    return blocks >= 4;
}

}  // namespace emberlin

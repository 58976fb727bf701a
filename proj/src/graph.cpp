#include "emberlin/graph.hpp"

#include <algorithm>
#include <numeric>

namespace emberlin {

void Graph::build_derived() {
    star_.assign(num_vertices_, {});
    for (HalfEdgeId h = 0; h < num_half_edges(); ++h) star_[incv_[h]].push_back(h);
    edge_ids_.clear();
    edge_index_.assign(num_half_edges(), -1);
    for (HalfEdgeId h = 0; h < num_half_edges(); ++h)
        if (h < mate_[h]) {
            edge_index_[h] = static_cast<int>(edge_ids_.size());
            edge_ids_.push_back(h);
        }
}

void Graph::validate() const {
    if (num_vertices_ <= 0) throw PreconditionError("graph must have at least one vertex");
    const int nh = num_half_edges();
    if (static_cast<int>(mate_.size()) != nh)
        throw PreconditionError("incv and mate must cover the same half-edges");
    for (HalfEdgeId h = 0; h < nh; ++h) {
        if (incv_[h] < 0 || incv_[h] >= num_vertices_)
            throw PreconditionError("dangling incidence at half-edge " + std::to_string(h));
        if (mate_[h] < 0 || mate_[h] >= nh)
            throw PreconditionError("mate out of range at half-edge " + std::to_string(h));
        if (mate_[h] == h)
            throw PreconditionError("mate has a fixed point at half-edge " + std::to_string(h));
        if (mate_[mate_[h]] != h)
            throw PreconditionError("mate is not an involution at half-edge " + std::to_string(h));
    }
    if (num_vertices_ > 1 || nh > 0) {
        for (VertexId v = 0; v < num_vertices_; ++v)
            if (star_[v].empty() && num_vertices_ > 1)
                throw PreconditionError("vertex " + std::to_string(v) + " has degree 0");
    }
}

bool Graph::connected() const {
    if (num_vertices_ <= 1) return true;
    std::vector<char> seen(num_vertices_, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (HalfEdgeId h : star_[v]) {
            VertexId u = incv_[mate_[h]];
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == num_vertices_;
}

bool Graph::all_degrees_even() const {
    for (VertexId v = 0; v < num_vertices_; ++v)
        if (degree(v) % 2 != 0) return false;
    return true;
}

Graph Graph::from_half_edges(int num_vertices, std::vector<VertexId> incv,
                             std::vector<HalfEdgeId> mate) {
    Graph g;
    g.num_vertices_ = num_vertices;
    g.incv_ = std::move(incv);
    g.mate_ = std::move(mate);
    g.build_derived();
    g.validate();
    return g;
}

std::vector<HalfEdgeId> Digraph::out_star(VertexId v) const {
    std::vector<HalfEdgeId> result;
    for (HalfEdgeId h : star(v))
        if (outgoing_[h]) result.push_back(h);
    return result;
}

std::vector<HalfEdgeId> Digraph::in_star(VertexId v) const {
    std::vector<HalfEdgeId> result;
    for (HalfEdgeId h : star(v))
        if (!outgoing_[h]) result.push_back(h);
    return result;
}

int Digraph::out_degree(VertexId v) const {
    int count = 0;
    for (HalfEdgeId h : star(v)) count += outgoing_[h] ? 1 : 0;
    return count;
}

bool Digraph::balanced() const {
    for (VertexId v = 0; v < num_vertices_; ++v)
        if (2 * out_degree(v) != degree(v)) return false;
    return true;
}

Digraph Digraph::from_half_edges(int num_vertices, std::vector<VertexId> incv,
                                 std::vector<HalfEdgeId> mate, std::vector<char> outgoing) {
    Digraph d;
    d.num_vertices_ = num_vertices;
    d.incv_ = std::move(incv);
    d.mate_ = std::move(mate);
    d.outgoing_ = std::move(outgoing);
    d.build_derived();
    d.validate();
    if (d.outgoing_.size() != d.incv_.size())
        throw PreconditionError("outgoing flags must cover all half-arcs");
    for (HalfEdgeId h = 0; h < d.num_half_edges(); ++h)
        if (d.outgoing_[h] == d.outgoing_[d.mate_[h]])
            throw PreconditionError("mate must pair an outgoing with an incoming half-arc");
    return d;
}

ClosedWalk ClosedWalk::reversed(const Graph& g) const {
    ClosedWalk r;
    r.directed = false;  // the reversal of a directed walk is not directed
    r.steps.reserve(steps.size());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back(g.mate(*it));
    return r;
}

std::vector<VertexId> ClosedWalk::vertex_sequence(const Graph& g) const {
    std::vector<VertexId> seq;
    seq.reserve(steps.size());
    for (HalfEdgeId h : steps) seq.push_back(g.incv(h));
    return seq;
}

namespace {

std::vector<HalfEdgeId> least_rotation(const std::vector<HalfEdgeId>& s) {
    const int n = static_cast<int>(s.size());
    if (n == 0) return s;
    int best = 0;
    for (int cand = 1; cand < n; ++cand) {
        for (int k = 0; k < n; ++k) {
            int a = s[(best + k) % n], b = s[(cand + k) % n];
            if (b < a) {
                best = cand;
                break;
            }
            if (b > a) break;
        }
    }
    std::vector<HalfEdgeId> out(n);
    for (int k = 0; k < n; ++k) out[k] = s[(best + k) % n];
    return out;
}

}  // namespace

std::vector<HalfEdgeId> ClosedWalk::canonical(const Graph& g) const {
    std::vector<HalfEdgeId> fwd = least_rotation(steps);
    if (directed) return fwd;
    std::vector<HalfEdgeId> bwd = least_rotation(reversed(g).steps);
    return bwd < fwd ? bwd : fwd;
}

void validate_walk(const Graph& g, const ClosedWalk& w) {
    if (w.steps.empty()) {
        if (g.num_edges() == 0) return;
        throw PreconditionError("empty walk in a nontrivial graph");
    }
    const int n = w.length();
    for (int i = 0; i < n; ++i) {
        HalfEdgeId leave = w.steps[i];
        if (leave < 0 || leave >= g.num_half_edges())
            throw PreconditionError("walk step " + std::to_string(i) + " out of range");
        HalfEdgeId arrive = g.mate(leave);
        HalfEdgeId next_leave = w.steps[(i + 1) % n];
        if (g.incv(arrive) != g.incv(next_leave))
            throw PreconditionError("walk breaks at step " + std::to_string(i) +
                                    ": arrival vertex does not match next departure");
    }
}

void validate_walk(const Digraph& d, const ClosedWalk& w) {
    validate_walk(static_cast<const Graph&>(d), w);
    if (!w.directed) throw PreconditionError("walk is not flagged directed");
    for (HalfEdgeId h : w.steps)
        if (!d.outgoing(h))
            throw PreconditionError("directed walk leaves via incoming half-arc " +
                                    std::to_string(h));
}

namespace {

bool euler_circuit_impl(const Graph& g, const ClosedWalk& w) {
    if (w.length() != g.num_edges() || w.length() == 0) return false;
    std::vector<char> used(g.num_half_edges(), 0);
    for (HalfEdgeId h : w.steps) {
        EdgeId e = g.edge_of(h);
        if (used[e]) return false;
        used[e] = 1;
    }
    return true;  // every edge exactly once within a valid closed walk
}

}  // namespace

bool is_euler_circuit(const Graph& g, const ClosedWalk& w) {
    validate_walk(g, w);
    return euler_circuit_impl(g, w);
}

bool is_euler_circuit(const Digraph& d, const ClosedWalk& w) {
    validate_walk(d, w);
    return euler_circuit_impl(d, w);
}

std::vector<std::vector<HalfEdgeId>> canonical_walk_multiset(
    const Graph& g, const std::vector<ClosedWalk>& walks) {
    std::vector<std::vector<HalfEdgeId>> keys;
    keys.reserve(walks.size());
    for (const ClosedWalk& w : walks) keys.push_back(w.canonical(g));
    std::sort(keys.begin(), keys.end());
    return keys;
}

namespace {

int infer_num_vertices(const std::vector<std::pair<VertexId, VertexId>>& list, int given) {
    int n = given;
    for (auto [u, v] : list) {
        if (u < 0 || v < 0) throw PreconditionError("negative vertex id in edge list");
        n = std::max(n, std::max(u, v) + 1);
    }
    if (n <= 0) throw PreconditionError("cannot build a graph with no vertices");
    return n;
}

}  // namespace

Graph build_graph(const std::vector<std::pair<VertexId, VertexId>>& edge_list, int num_vertices) {
    int n = infer_num_vertices(edge_list, num_vertices);
    std::vector<VertexId> incv;
    std::vector<HalfEdgeId> mate;
    incv.reserve(2 * edge_list.size());
    mate.reserve(2 * edge_list.size());
    for (int i = 0; i < static_cast<int>(edge_list.size()); ++i) {
        incv.push_back(edge_list[i].first);
        incv.push_back(edge_list[i].second);
        mate.push_back(2 * i + 1);
        mate.push_back(2 * i);
    }
    return Graph::from_half_edges(n, std::move(incv), std::move(mate));
}

Digraph build_digraph(const std::vector<std::pair<VertexId, VertexId>>& arc_list,
                      int num_vertices) {
    int n = infer_num_vertices(arc_list, num_vertices);
    std::vector<VertexId> incv;
    std::vector<HalfEdgeId> mate;
    std::vector<char> outgoing;
    for (int i = 0; i < static_cast<int>(arc_list.size()); ++i) {
        incv.push_back(arc_list[i].first);
        incv.push_back(arc_list[i].second);
        mate.push_back(2 * i + 1);
        mate.push_back(2 * i);
        outgoing.push_back(1);
        outgoing.push_back(0);
    }
    return Digraph::from_half_edges(n, std::move(incv), std::move(mate), std::move(outgoing));
}

std::pair<Digraph, ClosedWalk> orient_along(const Graph& g, const ClosedWalk& t) {
    if (!is_euler_circuit(g, t))
        throw PreconditionError("orient_along requires an euler circuit of the graph");
    std::vector<char> outgoing(g.num_half_edges(), 0);
    for (HalfEdgeId h : t.steps) outgoing[h] = 1;
    std::vector<VertexId> incv(g.num_half_edges());
    std::vector<HalfEdgeId> mate(g.num_half_edges());
    for (HalfEdgeId h = 0; h < g.num_half_edges(); ++h) {
        incv[h] = g.incv(h);
        mate[h] = g.mate(h);
    }
    Digraph d = Digraph::from_half_edges(g.num_vertices(), std::move(incv), std::move(mate),
                                         std::move(outgoing));
    ClosedWalk directed_t{t.steps, true};
    validate_walk(d, directed_t);
    return {std::move(d), std::move(directed_t)};
}

}  // namespace emberlin

#include "emberlin/obstructions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace emberlin {

DegreeCensus degree_census(const Graph& g) {
    DegreeCensus census;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) % 4 == 0 && g.degree(v) > 0) ++census.l;
    census.parity_ok = census.l % 2 == 0;
    return census;
}

namespace {

// Components after deleting two edges; returns side array or empty if still
// connected (or if the removal leaves more than two sides).
std::vector<char> split_sides(const Graph& g, EdgeId e, EdgeId f) {
    std::vector<int> comp(g.num_vertices(), -1);
    int ncomp = 0;
    for (VertexId root = 0; root < g.num_vertices(); ++root) {
        if (comp[root] >= 0) continue;
        comp[root] = ncomp;
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (HalfEdgeId h : g.star(v)) {
                EdgeId ed = g.edge_of(h);
                if (ed == e || ed == f) continue;
                VertexId u = g.incv(g.mate(h));
                if (comp[u] < 0) {
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp != 2) return {};
    std::vector<char> side(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) side[v] = static_cast<char>(comp[v]);
    if (side[0] != 0)
        for (auto& s : side) s ^= 1;
    return side;
}

}  // namespace

std::vector<TwoEdgeCut> enumerate_2edge_cuts(const Graph& g) {
    if (!g.connected()) throw PreconditionError("enumerate_2edge_cuts requires a connected graph");
    std::vector<TwoEdgeCut> cuts;
    const auto& edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
        if (g.is_loop(edges[i])) continue;
        for (size_t j = i + 1; j < edges.size(); ++j) {
            if (g.is_loop(edges[j])) continue;
            std::vector<char> side = split_sides(g, edges[i], edges[j]);
            if (side.empty()) continue;
            auto [eu, ev] = g.endpoints(edges[i]);
            auto [fu, fv] = g.endpoints(edges[j]);
            if (side[eu] == side[ev] || side[fu] == side[fv]) continue;  // not both crossing
            TwoEdgeCut cut;
            cut.e = edges[i];
            cut.f = edges[j];
            cut.side = std::move(side);
            for (VertexId v = 0; v < g.num_vertices(); ++v)
                if (g.degree(v) % 4 == 0 && g.degree(v) > 0)
                    ++(cut.side[v] == 0 ? cut.zero_mod4_side0 : cut.zero_mod4_side1);
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

std::vector<TwoEdgeCut> bad_cut_scan(const Graph& g) {
    if (!g.is_eulerian()) throw PreconditionError("bad_cut_scan requires an eulerian graph");
    std::vector<TwoEdgeCut> bad;
    for (TwoEdgeCut& cut : enumerate_2edge_cuts(g))
        if (cut.bad()) bad.push_back(std::move(cut));
    return bad;
}

namespace {

struct SidePieces {
    std::vector<std::pair<VertexId, VertexId>> edges;  // relabeled endpoints
    std::vector<VertexId> map;                         // original -> new
    int count = 0;
};

SidePieces relabel_side(const Graph& g, const std::vector<char>& side, char which) {
    SidePieces p;
    p.map.assign(g.num_vertices(), -1);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (side[v] == which) p.map[v] = p.count++;
    return p;
}

void check_cut(const Graph& g, const TwoEdgeCut& cut) {
    if (cut.e < 0 || cut.f < 0 || cut.e == cut.f ||
        static_cast<int>(cut.side.size()) != g.num_vertices())
        throw PreconditionError("malformed 2-edge cut");
    std::vector<char> side = split_sides(g, cut.e, cut.f);
    if (side.empty() || side != cut.side) throw PreconditionError("edge pair is not a 2-edge cut");
}

}  // namespace

CutReduction reduce_2edge_cut(const Graph& g, const TwoEdgeCut& cut) {
    check_cut(g, cut);
    CutReduction red;
    SidePieces side0 = relabel_side(g, cut.side, 0);
    SidePieces side1 = relabel_side(g, cut.side, 1);
    for (EdgeId e : g.edges()) {
        if (e == cut.e || e == cut.f) continue;
        auto [u, v] = g.endpoints(e);
        if (cut.side[u] == 0)
            side0.edges.push_back({side0.map[u], side0.map[v]});
        else
            side1.edges.push_back({side1.map[u], side1.map[v]});
    }
    // half-edges of the cut edges on each side, then the joining edges
    auto side_half = [&](EdgeId e, char which) {
        HalfEdgeId h1 = e, h2 = g.mate(e);
        return cut.side[g.incv(h1)] == which ? h1 : h2;
    };
    HalfEdgeId e0 = side_half(cut.e, 0), f0 = side_half(cut.f, 0);
    HalfEdgeId e1 = side_half(cut.e, 1), f1 = side_half(cut.f, 1);
    red.new_edge1 = 2 * static_cast<int>(side0.edges.size());
    red.new_edge2 = 2 * static_cast<int>(side1.edges.size());
    side0.edges.push_back({side0.map[g.incv(e0)], side0.map[g.incv(f0)]});
    side1.edges.push_back({side1.map[g.incv(e1)], side1.map[g.incv(f1)]});
    red.g1 = build_graph(side0.edges, side0.count);
    red.g2 = build_graph(side1.edges, side1.count);
    red.map1 = std::move(side0.map);
    red.map2 = std::move(side1.map);
    return red;
}

DigraphCutReduction reduce_2edge_cut(const Digraph& d, const TwoEdgeCut& cut) {
    check_cut(d, cut);
    // one cut arc runs 0 -> 1 and the other 1 -> 0 in an eulerian digraph
    EdgeId out01 = cut.side[d.tail(cut.e)] == 0 ? cut.e : cut.f;
    EdgeId out10 = out01 == cut.e ? cut.f : cut.e;
    if (cut.side[d.tail(out01)] != 0 || cut.side[d.tail(out10)] != 1)
        throw PreconditionError("cut arcs do not run in opposite directions");
    DigraphCutReduction red;
    SidePieces side0 = relabel_side(d, cut.side, 0);
    SidePieces side1 = relabel_side(d, cut.side, 1);
    for (EdgeId a : d.edges()) {
        if (a == cut.e || a == cut.f) continue;
        VertexId u = d.tail(a), v = d.head(a);
        if (cut.side[u] == 0)
            side0.edges.push_back({side0.map[u], side0.map[v]});
        else
            side1.edges.push_back({side1.map[u], side1.map[v]});
    }
    red.new_arc1 = 2 * static_cast<int>(side0.edges.size());
    red.new_arc2 = 2 * static_cast<int>(side1.edges.size());
    // tail of the leaving arc joins the head of the entering arc on each side
    side0.edges.push_back({side0.map[d.tail(out01)], side0.map[d.head(out10)]});
    side1.edges.push_back({side1.map[d.tail(out10)], side1.map[d.head(out01)]});
    red.d1 = build_digraph(side0.edges, side0.count);
    red.d2 = build_digraph(side1.edges, side1.count);
    red.map1 = std::move(side0.map);
    red.map2 = std::move(side1.map);
    return red;
}

Graph two_edge_join(const Graph& g1, EdgeId a, const Graph& g2, EdgeId b) {
    if (g1.edge_index(a) < 0 || g2.edge_index(b) < 0)
        throw PreconditionError("two_edge_join: bad edge");
    std::vector<std::pair<VertexId, VertexId>> edges;
    const int off = g1.num_vertices();
    for (EdgeId e : g1.edges())
        if (e != a) edges.push_back(g1.endpoints(e));
    for (EdgeId e : g2.edges())
        if (e != b) {
            auto [u, v] = g2.endpoints(e);
            edges.push_back({u + off, v + off});
        }
    auto [a1, a2] = g1.endpoints(a);
    auto [b1, b2] = g2.endpoints(b);
    edges.push_back({a1, b1 + off});
    edges.push_back({a2, b2 + off});
    return build_graph(edges, g1.num_vertices() + g2.num_vertices());
}

Digraph two_edge_join(const Digraph& d1, EdgeId a, const Digraph& d2, EdgeId b) {
    if (d1.edge_index(a) < 0 || d2.edge_index(b) < 0)
        throw PreconditionError("two_edge_join: bad arc");
    std::vector<std::pair<VertexId, VertexId>> arcs;
    const int off = d1.num_vertices();
    for (EdgeId e : d1.edges())
        if (e != a) arcs.push_back({d1.tail(e), d1.head(e)});
    for (EdgeId e : d2.edges())
        if (e != b) arcs.push_back({d2.tail(e) + off, d2.head(e) + off});
    arcs.push_back({d1.tail(a), d2.head(b) + off});
    arcs.push_back({d2.tail(b) + off, d1.head(a)});
    return build_digraph(arcs, d1.num_vertices() + d2.num_vertices());
}

namespace {

// Digon adjacency between degree-4 vertices; max degree 2, so components are
// paths and cycles.
struct DigonStructure {
    std::map<std::pair<VertexId, VertexId>, std::pair<EdgeId, EdgeId>> digons;
    std::vector<std::vector<VertexId>> adj;  // restricted to degree-4 vertices

    DigonStructure(const Graph& g) : adj(g.num_vertices()) {
        std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> parallel;
        for (EdgeId e : g.edges()) {
            if (g.is_loop(e)) continue;
            auto [u, v] = g.endpoints(e);
            parallel[{std::min(u, v), std::max(u, v)}].push_back(e);
        }
        for (auto& [pair, list] : parallel) {
            if (list.size() != 2) continue;  // a digon is exactly two parallel edges
            if (g.degree(pair.first) != 4 || g.degree(pair.second) != 4) continue;
            digons[pair] = {list[0], list[1]};
            adj[pair.first].push_back(pair.second);
            adj[pair.second].push_back(pair.first);
        }
    }

    std::pair<EdgeId, EdgeId> digon(VertexId u, VertexId v) const {
        return digons.at({std::min(u, v), std::max(u, v)});
    }
};

DigonChain make_chain(const DigonStructure& st, std::vector<VertexId> vertices) {
    DigonChain chain;
    chain.vertices = std::move(vertices);
    for (size_t i = 0; i + 1 < chain.vertices.size(); ++i)
        chain.digons.push_back(st.digon(chain.vertices[i], chain.vertices[i + 1]));
    return chain;
}

}  // namespace

std::vector<DigonChain> find_digon_chains(const Graph& g) {
    DigonStructure st(g);
    std::vector<DigonChain> chains;
    std::vector<char> seen(g.num_vertices(), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (seen[v] || st.adj[v].empty()) continue;
        // collect the component as a path or cycle starting from v
        std::vector<VertexId> comp{v};
        seen[v] = 1;
        VertexId cur = v, prev = -1;
        bool cycle = false;
        for (;;) {
            VertexId next = -1;
            for (VertexId u : st.adj[cur])
                if (u != prev) next = u;
            if (next == -1) break;
            if (next == v) {
                cycle = true;
                break;
            }
            comp.push_back(next);
            seen[next] = 1;
            prev = cur;
            cur = next;
        }
        if (!cycle && st.adj[v].size() == 2) {
            // v was interior; extend the other way
            std::vector<VertexId> other;
            cur = v;
            prev = comp.size() > 1 ? comp[1] : -1;
            for (;;) {
                VertexId next = -1;
                for (VertexId u : st.adj[cur])
                    if (u != prev) next = u;
                if (next == -1) break;
                other.push_back(next);
                seen[next] = 1;
                prev = cur;
                cur = next;
            }
            std::reverse(other.begin(), other.end());
            other.insert(other.end(), comp.begin(), comp.end());
            comp = std::move(other);
        }
        if (comp.size() < 2) continue;
        if (cycle) {
            // one maximal chain per omitted digon
            const int n = static_cast<int>(comp.size());
            for (int skip = 0; skip < n; ++skip) {
                std::vector<VertexId> path;
                for (int k = 1; k <= n; ++k) path.push_back(comp[(skip + k) % n]);
                if (path.back() < path.front()) std::reverse(path.begin(), path.end());
                chains.push_back(make_chain(st, std::move(path)));
            }
        } else {
            if (comp.back() < comp.front()) std::reverse(comp.begin(), comp.end());
            chains.push_back(make_chain(st, std::move(comp)));
        }
    }
    return chains;
}

std::vector<FstWitness> find_forbidden_configurations(const Graph& g) {
    DigonStructure st(g);
    // all directed subchains: vertex sequences of length >= 2 along components
    std::vector<std::vector<VertexId>> subchains;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (st.adj[v].empty()) continue;
        // grow every simple path starting at v
        std::vector<std::vector<VertexId>> frontier{{v}};
        while (!frontier.empty()) {
            std::vector<VertexId> path = std::move(frontier.back());
            frontier.pop_back();
            for (VertexId u : st.adj[path.back()]) {
                if (std::find(path.begin(), path.end(), u) != path.end()) continue;
                std::vector<VertexId> longer = path;
                longer.push_back(u);
                subchains.push_back(longer);
                frontier.push_back(std::move(longer));
            }
        }
    }

    std::vector<FstWitness> witnesses;
    std::set<std::tuple<int, int, EdgeId, EdgeId>> keys;
    for (const auto& cv : subchains) {
        for (const auto& dv : subchains) {
            bool disjoint = true;
            for (VertexId x : cv)
                if (std::find(dv.begin(), dv.end(), x) != dv.end()) disjoint = false;
            if (!disjoint) continue;
            VertexId front_c = cv.back();
            VertexId rear_d = dv.front(), front_d = dv.back();
            // the two non-chain edges at front(C) must reach rear and front of Cbar
            EdgeId f1 = -1, f2 = -1;
            auto chain_digon = st.digon(cv[cv.size() - 2], front_c);
            for (HalfEdgeId h : g.star(front_c)) {
                EdgeId e = g.edge_of(h);
                if (e == chain_digon.first || e == chain_digon.second) continue;
                if (g.is_loop(e)) continue;
                VertexId other = g.incv(g.mate(h));
                if (other == rear_d && f1 < 0)
                    f1 = e;
                else if (other == front_d && f2 < 0)
                    f2 = e;
            }
            if (f1 < 0 || f2 < 0) continue;
            int s = static_cast<int>(cv.size()) - 1;
            int t = static_cast<int>(dv.size()) - 1;
            if (!keys.insert({s, t, f1, f2}).second) continue;
            FstWitness w;
            w.c = make_chain(st, cv);
            w.cbar = make_chain(st, dv);
            w.f1 = f1;
            w.f2 = f2;
            w.forbidden = !(t == 1 || (s == 1 && t % 2 == 1));
            witnesses.push_back(std::move(w));
        }
    }
    return witnesses;
}

namespace {

AdmissibilityReport admissibility_impl(const Graph& g) {
    if (!g.is_eulerian()) throw PreconditionError("admissibility requires an eulerian input");
    AdmissibilityReport report;
    DegreeCensus census = degree_census(g);
    report.l = census.l;
    report.parity_ok = census.parity_ok;
    report.bad_cuts = bad_cut_scan(g);
    for (FstWitness& w : find_forbidden_configurations(g))
        if (w.forbidden) report.forbidden_configs.push_back(std::move(w));
    if (!report.parity_ok) {
        report.verdict = Verdict::Inadmissible;
        report.reason = "odd number of vertices of degree 0 mod 4";
    } else if (!report.bad_cuts.empty()) {
        report.verdict = Verdict::Inadmissible;
        report.reason = "bad 2-edge cut present";
    } else if (!report.forbidden_configs.empty()) {
        report.verdict = Verdict::AdmissibleButObstructed;
        report.reason = "forbidden F_{s,t} configuration present";
    } else {
        report.verdict = Verdict::Admissible;
        report.reason = "";
    }
    return report;
}

}  // namespace

AdmissibilityReport admissibility(const Graph& g) { return admissibility_impl(g); }

AdmissibilityReport admissibility(const Digraph& d) {
    return admissibility_impl(d.underlying());
}

}  // namespace emberlin

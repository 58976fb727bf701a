#include "emberlin/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

namespace emberlin {

namespace {

// ---------------------------------------------------------------------------
// fast face tracing on raw tables

struct TraceWork {
    std::vector<int> flag_stamp;  // 4m entries
    std::vector<int> edge_stamp;  // m entries
    std::vector<int> steps;
    std::vector<int> face_begin;
    int generation = 0;
    int edge_token = 0;

    void resize(int num_half_edges, int num_edges) {
        flag_stamp.assign(4 * std::max(num_half_edges, 1), 0);
        edge_stamp.assign(std::max(num_edges, 1), 0);
        generation = 0;
        edge_token = 0;
    }
};

struct GraphTables {
    int nh = 0, m = 0, n = 0;
    std::vector<int> mate, arc_of_half, incv;

    explicit GraphTables(const Graph& g)
        : nh(g.num_half_edges()), m(g.num_edges()), n(g.num_vertices()) {
        mate.resize(nh);
        arc_of_half.resize(nh);
        incv.resize(nh);
        for (int h = 0; h < nh; ++h) {
            mate[h] = g.mate(h);
            arc_of_half[h] = g.edge_index(g.edge_of(h));
            incv[h] = g.incv(h);
        }
    }
};

int fast_trace(const GraphTables& t, const std::vector<int>& succ, const std::vector<int>& pred,
               const std::vector<char>& neg, TraceWork& w) {
    w.generation += 1;
    const int gen = w.generation;
    w.steps.clear();
    w.face_begin.assign(1, 0);
    int faces = 0;
    const int limit = 2 * t.nh;
    for (int start = 0; start < limit; ++start) {
        if (w.flag_stamp[start] == gen) continue;
        int flag = start;
        do {
            const int h = flag >> 1, s = flag & 1;
            w.flag_stamp[flag] = gen;
            const int mh = t.mate[h];
            const char ng = neg[t.arc_of_half[h]];
            w.flag_stamp[2 * mh + ((s ^ 1) ^ ng)] = gen;
            w.steps.push_back(h);
            const int s2 = s ^ ng;
            flag = 2 * (s2 ? pred[mh] : succ[mh]) + s2;
        } while (flag != start);
        w.face_begin.push_back(static_cast<int>(w.steps.size()));
        ++faces;
    }
    return faces;
}

bool faces_all_euler(const GraphTables& t, TraceWork& w, int faces) {
    for (int f = 0; f < faces; ++f) {
        if (w.face_begin[f + 1] - w.face_begin[f] != t.m) return false;
        const int token = ++w.edge_token;
        for (int i = w.face_begin[f]; i < w.face_begin[f + 1]; ++i) {
            int a = t.arc_of_half[w.steps[i]];
            if (w.edge_stamp[a] == token) return false;
            w.edge_stamp[a] = token;
        }
    }
    return true;
}

// orientability via flip propagation over a precomputed spanning-tree order
struct FlipChecker {
    std::vector<std::pair<int, int>> tree_steps;  // (child vertex, via edge idx) root-first
    std::vector<int> parent_vertex;
    std::vector<int> other_edges;  // non-tree non-loop edge indices
    std::vector<int> loop_edges;
    std::vector<std::pair<int, int>> other_ends;  // endpoints of other_edges
    std::vector<std::pair<int, int>> tree_ends;
    int n = 0;

    explicit FlipChecker(const Graph& g) : n(g.num_vertices()) {
        std::vector<char> seen(g.num_vertices(), 0);
        std::vector<char> in_tree(g.num_edges(), 0);
        seen[0] = 1;
        std::vector<VertexId> queue{0};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            VertexId v = queue[qi];
            for (HalfEdgeId h : g.star(v)) {
                EdgeId e = g.edge_of(h);
                VertexId u = g.incv(g.mate(h));
                if (g.is_loop(e) || seen[u]) continue;
                seen[u] = 1;
                in_tree[g.edge_index(e)] = 1;
                tree_steps.push_back({u, g.edge_index(e)});
                tree_ends.push_back({v, u});
                queue.push_back(u);
            }
        }
        for (EdgeId e : g.edges()) {
            int ei = g.edge_index(e);
            if (g.is_loop(e)) {
                loop_edges.push_back(ei);
            } else if (!in_tree[ei]) {
                other_edges.push_back(ei);
                other_ends.push_back(g.endpoints(e));
            }
        }
    }

    bool orientable(const std::vector<char>& neg, std::vector<char>& flip) const {
        for (int ei : loop_edges)
            if (neg[ei]) return false;
        std::fill(flip.begin(), flip.end(), 0);
        for (size_t i = 0; i < tree_steps.size(); ++i)
            flip[tree_steps[i].first] = flip[tree_ends[i].first] ^ neg[tree_steps[i].second];
        for (size_t i = 0; i < other_edges.size(); ++i)
            if ((flip[other_ends[i].first] ^ flip[other_ends[i].second]) != neg[other_edges[i]])
                return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// rotation odometers

// Directed: rotation = [out0, in(p0), out(q1), in(p1), ...] with the least
// out-half fixed first.  Optionally the first in-slot is locked (thread
// partitioning) and bundle members must appear in increasing order
// (symmetry reduction).
struct DirRotor {
    int first_out = -1;
    std::vector<int> out_rest, ins;
    std::vector<int> out_rest0, ins0;  // reset values
    int lock_first_in = -1;            // value locked into ins[0], or -1
    const std::vector<int>* bundle_of = nullptr;  // per half-edge, or null
    VertexId v = -1;

    void init(const Digraph& d, VertexId vv, const std::vector<int>* bundles) {
        v = vv;
        bundle_of = bundles;
        std::vector<int> outs;
        for (HalfEdgeId h : d.star(v))
            (d.outgoing(h) ? outs : ins).push_back(h);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        first_out = outs.empty() ? -1 : outs[0];
        out_rest.assign(outs.begin() + (outs.empty() ? 0 : 1), outs.end());
        out_rest0 = out_rest;
        ins0 = ins;
    }

    void lock_in(int value) {
        lock_first_in = value;
        reset();
    }

    // the fully sorted state is always bundle-valid
    void reset() {
        out_rest = out_rest0;
        ins = ins0;
        if (lock_first_in >= 0) {
            auto it = std::find(ins.begin(), ins.end(), lock_first_in);
            std::rotate(ins.begin(), it, it + 1);
            std::sort(ins.begin() + 1, ins.end());
        }
    }

    bool valid() const {
        if (!bundle_of) return true;
        // bundle members must appear with increasing ids along the out order
        int last_bundle = -1;
        (void)last_bundle;
        std::vector<std::pair<int, int>> seen;  // (bundle, last id)
        auto check = [&](int h) {
            int b = (*bundle_of)[h];
            if (b < 0) return true;
            for (auto& [bb, last] : seen)
                if (bb == b) {
                    if (h < last) return false;
                    last = h;
                    return true;
                }
            seen.push_back({b, h});
            return true;
        };
        if (first_out >= 0 && !check(first_out)) return false;
        for (int h : out_rest)
            if (!check(h)) return false;
        return true;
    }

    bool advance_raw() {
        auto in_begin = ins.begin() + (lock_first_in >= 0 ? 1 : 0);
        if (std::next_permutation(in_begin, ins.end())) return true;
        if (std::next_permutation(out_rest.begin(), out_rest.end())) return true;
        return false;  // wrapped; state is back at the sorted start
    }

    bool advance() {
        for (;;) {
            if (!advance_raw()) return false;
            if (valid()) return true;
        }
    }

    void emit(std::vector<int>& rot) const {
        rot.clear();
        if (first_out < 0) return;
        rot.push_back(first_out);
        rot.push_back(ins[0]);
        for (size_t i = 0; i < out_rest.size(); ++i) {
            rot.push_back(out_rest[i]);
            rot.push_back(ins[i + 1]);
        }
    }

    double count(bool reduced) const {
        double c = 1;
        for (size_t i = 2; i <= out_rest.size(); ++i) c *= static_cast<double>(i);
        double ci = 1;
        size_t in_free = ins.size() - (lock_first_in >= 0 ? 1 : 0);
        for (size_t i = 2; i <= in_free; ++i) ci *= static_cast<double>(i);
        if (reduced && bundle_of) {
            // out orders with bundles ascending and the least out first:
            // (k-1)! * s(first) / prod(s!)
            std::vector<std::pair<int, int>> sizes;
            auto add = [&](int h) {
                int b = (*bundle_of)[h];
                if (b < 0) return;
                for (auto& [bb, cnt] : sizes)
                    if (bb == b) {
                        ++cnt;
                        return;
                    }
                sizes.push_back({b, 1});
            };
            if (first_out >= 0) add(first_out);
            for (int h : out_rest) add(h);
            int first_bundle = first_out >= 0 && bundle_of ? (*bundle_of)[first_out] : -1;
            for (auto [b, cnt] : sizes) {
                if (b == first_bundle) c *= static_cast<double>(cnt);
                for (int i = 2; i <= cnt; ++i) c /= static_cast<double>(i);
            }
        }
        return std::max(c * ci, 1.0);
    }
};

// Undirected: least half-edge fixed first, rest permuted.
struct UndirRotor {
    int first = -1;
    std::vector<int> rest, rest0;

    void init(const Graph& g, VertexId v) {
        std::vector<int> halves = g.star(v);
        std::sort(halves.begin(), halves.end());
        first = halves.empty() ? -1 : halves[0];
        rest.assign(halves.begin() + (halves.empty() ? 0 : 1), halves.end());
        rest0 = rest;
    }

    bool advance() { return std::next_permutation(rest.begin(), rest.end()); }
    void reset() { rest = rest0; }

    void emit(std::vector<int>& rot) const {
        rot.clear();
        if (first < 0) return;
        rot.push_back(first);
        rot.insert(rot.end(), rest.begin(), rest.end());
    }

    double count() const {
        double c = 1;
        for (size_t i = 2; i <= rest.size(); ++i) c *= static_cast<double>(i);
        return c;
    }
};

void set_tables(const std::vector<int>& rot, std::vector<int>& succ, std::vector<int>& pred) {
    const int d = static_cast<int>(rot.size());
    for (int i = 0; i < d; ++i) {
        succ[rot[i]] = rot[(i + 1) % d];
        pred[rot[i]] = rot[(i + d - 1) % d];
    }
}

std::vector<int> arc_bundles(const Digraph& d) {
    // group parallel arcs (same tail and head) and loop groups per vertex
    std::vector<int> bundle(d.num_half_edges(), -1);
    std::map<std::pair<int, int>, std::vector<EdgeId>> groups;
    for (EdgeId a : d.edges()) groups[{d.tail(a), d.head(a)}].push_back(a);
    int next = 0;
    for (auto& [key, arcs] : groups) {
        if (arcs.size() < 2) continue;
        for (EdgeId a : arcs) bundle[d.tail_half(a)] = next;
        ++next;
    }
    return bundle;
}

std::vector<HalfEdgeId> canonical_directed_steps(const Digraph& d,
                                                 std::vector<HalfEdgeId> steps) {
    if (!steps.empty() && !d.outgoing(steps[0])) {
        std::vector<HalfEdgeId> rev;
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) rev.push_back(d.mate(*it));
        steps = std::move(rev);
    }
    ClosedWalk w{std::move(steps), true};
    return w.canonical(d);
}

struct SignaturePlan {
    std::vector<int> free_edges;  // edge indices whose signature varies
    bool tree_fixed = false;      // orientable <=> mask == 0
};

SignaturePlan signature_plan(const Graph& g, bool all_signatures, bool full_space) {
    SignaturePlan plan;
    if (!all_signatures) return plan;
    if (full_space) {
        for (int i = 0; i < g.num_edges(); ++i) plan.free_edges.push_back(i);
        return plan;
    }
    FlipChecker checker(g);
    std::vector<char> in_tree(g.num_edges(), 0);
    for (auto& [child, ei] : checker.tree_steps) in_tree[ei] = 1;
    for (int i = 0; i < g.num_edges(); ++i)
        if (!in_tree[i]) plan.free_edges.push_back(i);
    plan.tree_fixed = true;
    return plan;
}

// ---------------------------------------------------------------------------
// the directed census

struct DirectedWorkerResult {
    EmbeddingCensus census;
    bool any = false;
};

struct DirectedContext {
    const Digraph& d;
    const CensusOptions& opts;
    GraphTables tables;
    std::vector<int> bundles;
    SignaturePlan sig_plan;
    std::optional<FlipChecker> flips;
    std::vector<HalfEdgeId> tracked;
    int partition_vertex = -1;
    std::vector<int> partition_values;

    DirectedContext(const Digraph& dd, const CensusOptions& o)
        : d(dd), opts(o), tables(dd), bundles(arc_bundles(dd)) {
        sig_plan = signature_plan(d, opts.all_signatures, opts.symmetry_reduce);
        if (opts.all_signatures && !sig_plan.tree_fixed) flips.emplace(d);
        if (opts.track_face) {
            ClosedWalk t = *opts.track_face;
            validate_walk(d, t);
            tracked = canonical_directed_steps(d, t.steps);
        }
        for (VertexId v = 0; v < d.num_vertices(); ++v)
            if (partition_vertex < 0 || d.degree(v) > d.degree(partition_vertex))
                partition_vertex = v;
        if (partition_vertex >= 0)
            for (HalfEdgeId h : d.star(partition_vertex))
                if (!d.outgoing(h)) partition_values.push_back(h);
        std::sort(partition_values.begin(), partition_values.end());
    }

    void run_slice(int lock_value, DirectedWorkerResult& out) const {
        std::vector<DirRotor> rotors(d.num_vertices());
        for (VertexId v = 0; v < d.num_vertices(); ++v)
            rotors[v].init(d, v, opts.symmetry_reduce ? &bundles : nullptr);
        if (lock_value >= 0) rotors[partition_vertex].lock_in(lock_value);

        std::vector<int> succ(tables.nh, -1), pred(tables.nh, -1);
        std::vector<std::vector<int>> rotation(d.num_vertices());
        for (VertexId v = 0; v < d.num_vertices(); ++v) {
            rotors[v].emit(rotation[v]);
            set_tables(rotation[v], succ, pred);
        }
        TraceWork work;
        work.resize(tables.nh, tables.m);
        std::vector<char> neg(std::max(tables.m, 1), 0);
        std::vector<char> flip(d.num_vertices(), 0);
        EmbeddingCensus& census = out.census;
        census.tracked_min_faces = tables.m + 2;

        auto consider = [&](std::uint64_t mask) {
            int faces = fast_trace(tables, succ, pred, neg, work);
            bool orientable = true;
            if (opts.all_signatures)
                orientable = sig_plan.tree_fixed ? mask == 0 : flips->orientable(neg, flip);
            census.total += 1;
            census.histogram[faces] += 1;
            if (!orientable) census.nonorientable_histogram[faces] += 1;
            auto witness = [&]() {
                CensusWitness w;
                w.rotation.assign(rotation.begin(), rotation.end());
                w.signature.assign(tables.m, 1);
                for (size_t i = 0; i < sig_plan.free_edges.size(); ++i)
                    if (mask >> i & 1) w.signature[sig_plan.free_edges[i]] = -1;
                w.faces = faces;
                return w;
            };
            if (!census.min_witness || faces < census.min_faces) {
                census.min_faces = faces;
                census.min_witness = witness();
            }
            if (!census.max_witness || faces > census.max_faces) {
                census.max_faces = faces;
                census.max_witness = witness();
            }
            if (faces == 2 && !census.bieulerian_exists && faces_all_euler(tables, work, faces)) {
                census.bieulerian_exists = true;
                census.bieulerian_witness = witness();
            }
            if (!tracked.empty()) {
                const int len = static_cast<int>(tracked.size());
                for (int f = 0; f < faces; ++f) {
                    if (work.face_begin[f + 1] - work.face_begin[f] != len) continue;
                    std::vector<HalfEdgeId> steps(work.steps.begin() + work.face_begin[f],
                                                  work.steps.begin() + work.face_begin[f + 1]);
                    if (canonical_directed_steps(d, std::move(steps)) == tracked) {
                        census.tracked_total += 1;
                        census.tracked_min_faces = std::min(census.tracked_min_faces, faces);
                        break;
                    }
                }
            }
        };

        for (;;) {
            const std::uint64_t sig_count = std::uint64_t{1} << sig_plan.free_edges.size();
            for (std::uint64_t mask = 0; mask < sig_count; ++mask) {
                for (size_t i = 0; i < sig_plan.free_edges.size(); ++i)
                    neg[sig_plan.free_edges[i]] = static_cast<char>(mask >> i & 1);
                consider(mask);
            }
            // odometer step, last vertex fastest
            int v = d.num_vertices() - 1;
            for (; v >= 0; --v) {
                bool moved = rotors[v].advance();
                rotors[v].emit(rotation[v]);
                set_tables(rotation[v], succ, pred);
                if (moved) break;
            }
            if (v < 0) break;
        }
        out.any = true;
    }
};

void merge_census(EmbeddingCensus& into, const EmbeddingCensus& from) {
    into.total += from.total;
    for (auto [k, v] : from.histogram) into.histogram[k] += v;
    for (auto [k, v] : from.nonorientable_histogram) into.nonorientable_histogram[k] += v;
    if (from.min_witness && (!into.min_witness || from.min_faces < into.min_faces)) {
        into.min_faces = from.min_faces;
        into.min_witness = from.min_witness;
    }
    if (from.max_witness && (!into.max_witness || from.max_faces > into.max_faces)) {
        into.max_faces = from.max_faces;
        into.max_witness = from.max_witness;
    }
    if (from.bieulerian_exists && !into.bieulerian_exists) {
        into.bieulerian_exists = true;
        into.bieulerian_witness = from.bieulerian_witness;
    }
    into.tracked_total += from.tracked_total;
    into.tracked_min_faces = std::min(into.tracked_min_faces, from.tracked_min_faces);
}

}  // namespace

EmbeddingCensus enumerate_directed_embeddings(const Digraph& d, const CensusOptions& opts) {
    if (!d.is_eulerian())
        throw PreconditionError("enumerate_directed_embeddings requires an eulerian digraph");
    EmbeddingCensus census;
    census.mode = CensusMode::Directed;
    if (d.num_edges() == 0) {
        census.total = 1;
        census.histogram[1] = 1;
        census.min_faces = census.max_faces = 1;
        return census;
    }

    DirectedContext ctx(d, opts);
    {
        double rotations = 1;
        std::vector<DirRotor> rotors(d.num_vertices());
        for (VertexId v = 0; v < d.num_vertices(); ++v) {
            rotors[v].init(d, v, opts.symmetry_reduce ? &ctx.bundles : nullptr);
            rotations *= rotors[v].count(opts.symmetry_reduce);
        }
        double sigs = std::pow(2.0, static_cast<double>(ctx.sig_plan.free_edges.size()));
        double steps = rotations * sigs * d.num_edges();
        if (steps > opts.budget)
            throw BudgetExceeded("directed census needs about " + std::to_string(steps) +
                                 " face-steps, budget is " + std::to_string(opts.budget));
    }

    int parallelism = opts.threads > 0 ? opts.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    parallelism = std::max(1, std::min<int>(parallelism, 16));
    const auto& values = ctx.partition_values;
    if (parallelism <= 1 || values.size() < 2) {
        DirectedWorkerResult result;
        result.census.mode = CensusMode::Directed;
        ctx.run_slice(-1, result);
        merge_census(census, result.census);
    } else {
        std::vector<DirectedWorkerResult> results(values.size());
        std::vector<std::thread> threads;
        std::atomic<size_t> next{0};
        for (int t = 0; t < std::min<int>(parallelism, values.size()); ++t)
            threads.emplace_back([&]() {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= values.size()) return;
                    ctx.run_slice(values[i], results[i]);
                }
            });
        for (auto& th : threads) th.join();
        for (const auto& r : results) merge_census(census, r.census);
    }
    if (census.tracked_total == 0) census.tracked_min_faces = 0;
    return census;
}

EmbeddingCensus enumerate_embeddings(const Graph& g, bool orientable_only,
                                     const CensusOptions& opts) {
    if (!g.connected()) throw PreconditionError("enumerate_embeddings requires a connected graph");
    EmbeddingCensus census;
    census.mode = orientable_only ? CensusMode::UndirectedOrientable : CensusMode::UndirectedAll;
    if (g.num_edges() == 0) {
        census.total = 1;
        census.histogram[1] = 1;
        census.min_faces = census.max_faces = 1;
        return census;
    }

    GraphTables tables(g);
    SignaturePlan plan = signature_plan(g, !orientable_only, false);
    std::vector<UndirRotor> rotors(g.num_vertices());
    double rotations = 1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        rotors[v].init(g, v);
        rotations *= rotors[v].count();
    }
    double steps = rotations * std::pow(2.0, static_cast<double>(plan.free_edges.size())) *
                   g.num_edges();
    if (steps > opts.budget)
        throw BudgetExceeded("census needs about " + std::to_string(steps) +
                             " face-steps, budget is " + std::to_string(opts.budget));

    std::vector<int> succ(tables.nh, -1), pred(tables.nh, -1);
    std::vector<std::vector<int>> rotation(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        rotors[v].emit(rotation[v]);
        set_tables(rotation[v], succ, pred);
    }
    TraceWork work;
    work.resize(tables.nh, tables.m);
    std::vector<char> neg(std::max(tables.m, 1), 0);

    auto witness = [&](std::uint64_t mask, int faces) {
        CensusWitness w;
        w.rotation.assign(rotation.begin(), rotation.end());
        w.signature.assign(tables.m, 1);
        for (size_t i = 0; i < plan.free_edges.size(); ++i)
            if (mask >> i & 1) w.signature[plan.free_edges[i]] = -1;
        w.faces = faces;
        return w;
    };

    for (;;) {
        const std::uint64_t sig_count = std::uint64_t{1} << plan.free_edges.size();
        for (std::uint64_t mask = 0; mask < sig_count; ++mask) {
            for (size_t i = 0; i < plan.free_edges.size(); ++i)
                neg[plan.free_edges[i]] = static_cast<char>(mask >> i & 1);
            int faces = fast_trace(tables, succ, pred, neg, work);
            bool orientable = orientable_only || mask == 0;
            census.total += 1;
            census.histogram[faces] += 1;
            if (!orientable) census.nonorientable_histogram[faces] += 1;
            if (!census.min_witness || faces < census.min_faces) {
                census.min_faces = faces;
                census.min_witness = witness(mask, faces);
            }
            if (!census.max_witness || faces > census.max_faces) {
                census.max_faces = faces;
                census.max_witness = witness(mask, faces);
            }
            if (faces == 2 && !census.bieulerian_exists && faces_all_euler(tables, work, faces)) {
                census.bieulerian_exists = true;
                census.bieulerian_witness = witness(mask, faces);
            }
        }
        int v = g.num_vertices() - 1;
        for (; v >= 0; --v) {
            bool moved = rotors[v].advance();
            if (!moved) rotors[v].reset();
            rotors[v].emit(rotation[v]);
            set_tables(rotation[v], succ, pred);
            if (moved) break;
        }
        if (v < 0) break;
    }
    return census;
}

bool exists_one_face_orientable(const Graph& g, const CensusOptions& opts) {
    if (!g.connected())
        throw PreconditionError("exists_one_face_orientable requires a connected graph");
    if (g.num_edges() == 0) return true;
    GraphTables tables(g);
    std::vector<UndirRotor> rotors(g.num_vertices());
    double rotations = 1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        rotors[v].init(g, v);
        rotations *= rotors[v].count();
    }
    if (rotations * g.num_edges() > opts.budget)
        throw BudgetExceeded("one-face search exceeds the budget");
    std::vector<int> succ(tables.nh, -1), pred(tables.nh, -1);
    std::vector<std::vector<int>> rotation(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        rotors[v].emit(rotation[v]);
        set_tables(rotation[v], succ, pred);
    }
    TraceWork work;
    work.resize(tables.nh, tables.m);
    std::vector<char> neg(std::max(tables.m, 1), 0);
    for (;;) {
        if (fast_trace(tables, succ, pred, neg, work) == 1) return true;
        int v = g.num_vertices() - 1;
        for (; v >= 0; --v) {
            bool moved = rotors[v].advance();
            if (!moved) rotors[v].reset();
            rotors[v].emit(rotation[v]);
            set_tables(rotation[v], succ, pred);
            if (moved) break;
        }
        if (v < 0) break;
    }
    return false;
}

// ---------------------------------------------------------------------------
// bi-eulerian existence search

namespace {

struct UndoDsu {
    std::vector<int> parent, size_;
    std::vector<int> trail;

    explicit UndoDsu(int n) : parent(n), size_(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    // false if already joined (caller decides whether the close is legal)
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent[b] = a;
        size_[a] += size_[b];
        trail.push_back(b);
        return true;
    }
    int mark() const { return static_cast<int>(trail.size()); }
    void rollback(int mark_) {
        while (static_cast<int>(trail.size()) > mark_) {
            int b = trail.back();
            trail.pop_back();
            size_[parent[b]] -= size_[b];
            parent[b] = b;
        }
    }
};

struct BieulerianSearch {
    const Digraph& d;
    std::vector<HalfEdgeId> in_halves;  // grouped by vertex, id order
    std::vector<std::vector<HalfEdgeId>> outs_at;
    std::vector<char> used1, used2;  // per half-edge: taken as M1/M2 partner
    UndoDsu circ1, circ2, local;
    std::vector<int> local_links;  // per vertex
    int links_done = 0;
    const int m;

    explicit BieulerianSearch(const Digraph& dd)
        : d(dd),
          used1(dd.num_half_edges(), 0),
          used2(dd.num_half_edges(), 0),
          circ1(dd.num_edges()),
          circ2(dd.num_edges()),
          local(dd.num_half_edges()),
          local_links(dd.num_vertices(), 0),
          m(dd.num_edges()) {
        outs_at.resize(d.num_vertices());
        for (VertexId v = 0; v < d.num_vertices(); ++v) {
            for (HalfEdgeId h : d.star(v))
                (d.outgoing(h) ? outs_at[v] : in_halves).push_back(h);
            std::sort(outs_at[v].begin(), outs_at[v].end());
        }
        std::sort(in_halves.begin(), in_halves.end(), [&](HalfEdgeId a, HalfEdgeId b) {
            return std::make_pair(d.incv(a), a) < std::make_pair(d.incv(b), b);
        });
    }

    bool link_circuit(UndoDsu& dsu, HalfEdgeId in_half, HalfEdgeId out_half, bool last_global) {
        int a = d.edge_index(d.edge_of(in_half));
        int b = d.edge_index(d.edge_of(out_half));
        if (dsu.find(a) == dsu.find(b)) return last_global;  // close only at the end
        dsu.unite(a, b);
        return true;
    }

    bool link_local(HalfEdgeId x, HalfEdgeId y, VertexId v, int link_index) {
        if (local.find(x) == local.find(y)) return link_index == d.degree(v);
        local.unite(x, y);
        return true;
    }

    bool search(size_t idx) {
        if (idx == in_halves.size()) return true;
        HalfEdgeId h = in_halves[idx];
        VertexId v = d.incv(h);
        bool last_global = links_done + 1 == m;
        for (HalfEdgeId o1 : outs_at[v]) {
            if (used1[o1]) continue;
            int m1 = circ1.mark();
            if (!link_circuit(circ1, h, o1, last_global)) {
                circ1.rollback(m1);
                continue;
            }
            used1[o1] = 1;
            for (HalfEdgeId o2 : outs_at[v]) {
                if (used2[o2]) continue;
                int m2 = circ2.mark();
                if (!link_circuit(circ2, h, o2, last_global)) {
                    circ2.rollback(m2);
                    continue;
                }
                int ml = local.mark();
                int links = local_links[v];
                bool ok = link_local(h, o1, v, links + 1) && link_local(h, o2, v, links + 2);
                if (ok) {
                    used2[o2] = 1;
                    local_links[v] = links + 2;
                    links_done += 1;
                    if (search(idx + 1)) return true;
                    links_done -= 1;
                    local_links[v] = links;
                    used2[o2] = 0;
                }
                local.rollback(ml);
                circ2.rollback(m2);
            }
            used1[o1] = 0;
            circ1.rollback(m1);
        }
        return false;
    }
};

}  // namespace

bool exists_bieulerian_directed(const Digraph& d) {
    if (!d.is_eulerian()) return false;
    if (d.num_edges() == 0) return false;
    BieulerianSearch search(d);
    return search.search(0);
}

std::vector<std::vector<char>> eulerian_orientations(const Graph& g) {
    if (!g.is_eulerian()) throw PreconditionError("eulerian_orientations requires eulerian input");
    std::vector<std::vector<char>> result;
    std::vector<char> flip(g.num_edges(), 0);
    std::vector<int> out_count(g.num_vertices(), 0), in_count(g.num_vertices(), 0);
    std::vector<int> half(g.num_vertices(), 0);  // non-loop degree / 2 per vertex
    std::vector<EdgeId> nonloops;  // a loop is balanced either way; keep flip 0
    for (EdgeId e : g.edges()) {
        if (g.is_loop(e)) continue;
        nonloops.push_back(e);
        auto [u, v] = g.endpoints(e);
        ++half[u];
        ++half[v];
    }
    for (int& x : half) x /= 2;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == nonloops.size()) {
            result.push_back(flip);
            return;
        }
        EdgeId e = nonloops[i];
        auto [u, v] = g.endpoints(e);
        for (char f = 0; f <= 1; ++f) {
            VertexId tail = f == 0 ? u : v;
            VertexId head = f == 0 ? v : u;
            ++out_count[tail];
            ++in_count[head];
            if (out_count[tail] <= half[tail] && in_count[head] <= half[head]) {
                flip[g.edge_index(e)] = f;
                rec(i + 1);
            }
            --out_count[tail];
            --in_count[head];
        }
    };
    rec(0);
    return result;
}

Digraph orient_graph(const Graph& g, const std::vector<char>& flip) {
    std::vector<VertexId> incv(g.num_half_edges());
    std::vector<HalfEdgeId> mate(g.num_half_edges());
    std::vector<char> outgoing(g.num_half_edges());
    for (HalfEdgeId h = 0; h < g.num_half_edges(); ++h) {
        incv[h] = g.incv(h);
        mate[h] = g.mate(h);
        bool lesser = h < g.mate(h);
        outgoing[h] = lesser ^ (flip[g.edge_index(g.edge_of(h))] != 0);
    }
    return Digraph::from_half_edges(g.num_vertices(), std::move(incv), std::move(mate),
                                    std::move(outgoing));
}

bool exists_orientable_bieulerian(const Graph& g) {
    if (!g.is_eulerian()) return false;
    if (g.num_edges() == 0) return false;
    std::set<std::vector<std::pair<VertexId, VertexId>>> seen;
    for (const auto& flip : eulerian_orientations(g)) {
        Digraph d = orient_graph(g, flip);
        if (!seen.insert(canonical_digraph_key(d)).second) continue;
        if (exists_bieulerian_directed(d)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// canonical forms and canonical enumeration

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

// all permutations respecting the given classes, applied via callback
void for_each_class_permutation(const std::vector<int>& klass,
                                const std::function<void(const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(klass.size());
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[klass[v]].push_back(v);
    std::vector<std::vector<int>> perms;
    for (auto& [c, members] : groups) perms.push_back(members);
    std::vector<std::vector<int>> current = perms;
    std::vector<int> perm(n);
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == perms.size()) {
            for (size_t k = 0; k < perms.size(); ++k)
                for (size_t j = 0; j < perms[k].size(); ++j) perm[perms[k][j]] = current[k][j];
            fn(perm);
            return;
        }
        std::sort(current[gi].begin(), current[gi].end());
        do {
            rec(gi + 1);
        } while (std::next_permutation(current[gi].begin(), current[gi].end()));
    };
    rec(0);
    return;
}

}  // namespace

std::vector<std::pair<VertexId, VertexId>> canonical_graph_key(const Graph& g) {
    std::vector<int> klass(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) klass[v] = g.degree(v);
    EdgeList best;
    bool first = true;
    for_each_class_permutation(klass, [&](const std::vector<int>& perm) {
        EdgeList cur;
        cur.reserve(g.num_edges());
        for (EdgeId e : g.edges()) {
            auto [u, v] = g.endpoints(e);
            int a = perm[u], b = perm[v];
            cur.push_back({std::min(a, b), std::max(a, b)});
        }
        std::sort(cur.begin(), cur.end());
        if (first || cur < best) {
            best = std::move(cur);
            first = false;
        }
    });
    return best;
}

std::vector<std::pair<VertexId, VertexId>> canonical_digraph_key(const Digraph& d) {
    std::vector<int> klass(d.num_vertices());
    for (VertexId v = 0; v < d.num_vertices(); ++v) klass[v] = d.degree(v);
    EdgeList best;
    bool first = true;
    for_each_class_permutation(klass, [&](const std::vector<int>& perm) {
        EdgeList cur;
        cur.reserve(d.num_edges());
        for (EdgeId a : d.edges()) cur.push_back({perm[d.tail(a)], perm[d.head(a)]});
        std::sort(cur.begin(), cur.end());
        if (first || cur < best) {
            best = std::move(cur);
            first = false;
        }
    });
    return best;
}

std::vector<Graph> enumerate_eulerian_multigraphs(int max_vertices, int max_edges,
                                                  bool include_trivial) {
    std::vector<Graph> out;
    if (include_trivial) out.push_back(build_graph({}, 1));
    std::set<EdgeList> seen;
    EdgeList edges;
    std::vector<int> degree(max_vertices, 0);

    std::function<void(int)> rec = [&](int used) {
        if (!edges.empty()) {
            bool even = true;
            for (int v = 0; v < used; ++v)
                if (degree[v] % 2 != 0) even = false;
            if (even) {
                Graph g = build_graph(edges, used);
                if (g.connected()) {
                    auto key = canonical_graph_key(g);
                    if (seen.insert(key).second) out.push_back(build_graph(key));
                }
            }
        }
        if (static_cast<int>(edges.size()) == max_edges) return;
        int odd = 0;
        for (int v = 0; v < used; ++v) odd += degree[v] % 2;
        if (odd > 2 * (max_edges - static_cast<int>(edges.size()))) return;

        std::pair<int, int> lo = edges.empty() ? std::make_pair(0, 0) : edges.back();
        for (int a = lo.first; a <= std::min(used, max_vertices - 1); ++a) {
            int bstart = a == lo.first ? std::max(lo.second, a) : a;
            for (int b = bstart; b <= std::min(used + (a == used ? 1 : 0), max_vertices - 1);
                 ++b) {
                if (b > used + 1) break;
                edges.push_back({a, b});
                ++degree[a];
                ++degree[b];
                rec(std::max(used, b + 1));
                --degree[a];
                --degree[b];
                edges.pop_back();
            }
        }
    };
    rec(0);
    return out;
}

std::vector<Digraph> enumerate_eulerian_digraphs(int max_vertices, int max_arcs) {
    std::vector<Digraph> out;
    for (const Graph& g : enumerate_eulerian_multigraphs(max_vertices, max_arcs)) {
        std::set<EdgeList> seen;
        for (const auto& flip : eulerian_orientations(g)) {
            Digraph d = orient_graph(g, flip);
            if (seen.insert(canonical_digraph_key(d)).second) out.push_back(std::move(d));
        }
    }
    return out;
}

void for_each_circuit_decomposition(
    const Graph& g, const std::function<void(const std::vector<ClosedWalk>&)>& fn) {
    if (!g.is_eulerian())
        throw PreconditionError("circuit decompositions require an eulerian graph");
    const int nh = g.num_half_edges();
    std::vector<HalfEdgeId> partner(nh, -1);
    std::function<void(int)> rec = [&](int h) {
        while (h < nh && partner[h] >= 0) ++h;
        if (h == nh) {
            fn(walks_from_transition_system(g, partner));
            return;
        }
        for (HalfEdgeId h2 : g.star(g.incv(h))) {
            if (h2 <= h || partner[h2] >= 0) continue;
            partner[h] = h2;
            partner[h2] = h;
            rec(h + 1);
            partner[h] = -1;
            partner[h2] = -1;
        }
    };
    rec(0);
}

}  // namespace emberlin

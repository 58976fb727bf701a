#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "emberlin/graph.hpp"

namespace emberlin {

// Two vertices u=0, v=1 with arcs a1, a2 from u to v and b1, b2 from v to u.
Digraph gen_dip4();

// n-cycle with every edge replaced by a directed digon: arcs a_i = v_i -> v_{i+1}
// and b_i = v_{i+1} -> v_i.  Requires n >= 2.
Digraph gen_ddc(int n);

// Chain of directed digons on vertices v_0..v_{l+1}; l vertices of degree 0 mod 4.
// Requires l >= 0.
Digraph gen_dp(int l);

// 4-regular eulerian host containing the configuration F_{s,t}: two chains of
// digons (lengths s and t) with connector edges from the front of the first
// chain to the rear and front of the second, closed up by one balancing vertex.
Graph gen_fst_host(int s, int t);

// Digraph with two degree-8 vertices u, v (joined by one arc each way) whose
// euler circuits never interlace u and v, plus the unlaced circuit itself.
std::pair<Digraph, ClosedWalk> gen_unlaced();

// Tree of cycles: blocks[i] = (attach vertex index, cycle length >= 1); block 0
// attaches at vertex 0.
Graph gen_tree_of_cycles(const std::vector<std::pair<int, int>>& blocks);

// Repeated 2-edge-joins of k copies of dip4; 4-regular with 2k vertices.
Digraph gen_join_chain(int k);

// Random eulerian digraph with at most max_vertices vertices, built as the arc
// sequence of a random closed walk; every vertex is visited an odd number of
// times when odd_visits is set (all degrees 2 mod 4).  Returns the digraph and
// the generating euler circuit.
std::pair<Digraph, ClosedWalk> rand_eulerian_digraph(std::mt19937_64& rng, int max_vertices,
                                                     bool odd_visits);

}  // namespace emberlin

#pragma once

#include "cycleweave/graph.hpp"
#include "cycleweave/rational.hpp"

#include <cstdint>

namespace cycleweave {

/// `parts` cliques covering n vertices with sizes differing by at most
/// one (larger blocks first), vertex ids consecutive per clique.
Graph disjoint_cliques(VertexId n, VertexId parts);

/// Intended part count for the extremal family: round(n^beta) (at least 1).
VertexId parts_from_beta(VertexId n, double beta);

/// G(n, p) with exact rational p. Pairs (u, v), u < v, are visited in
/// lexicographic order; each consumes one std::mt19937_64 draw and the
/// edge is present iff draw < floor(p * 2^64). Same seed, same graph.
Graph uniform_random(VertexId n, const Rational& p, std::uint64_t seed);

/// All a*b cross edges on ids 0..a-1 | a..a+b-1; labels normalized so
/// |side_b| <= |side_a|.
BipartiteGraph complete_bipartite(VertexId a, VertexId b);

/// Random bipartite graph on the same id layout and edge scheme as
/// uniform_random (cross pairs in lexicographic order).
BipartiteGraph bipartite_random(VertexId a, VertexId b, const Rational& p, std::uint64_t seed);

} // namespace cycleweave

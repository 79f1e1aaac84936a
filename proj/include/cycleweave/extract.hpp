#pragma once

#include "cycleweave/graph.hpp"
#include "cycleweave/thresholds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cycleweave {

// ---------------------------------------------------------------- stages

/// Vertices surviving repeated deletion of any vertex with degree < t,
/// always removing the smallest violating id first. The survivor set is
/// the unique maximal one with all degrees >= t.
VertexSet peel_survivors(const Graph& g, const Rational& t);

/// Same, packaged as an induced subgraph (dense local ids + remap).
InducedSubgraph peel_to_min_degree(const Graph& g, const Rational& t);

/// Deterministic single-vertex-switch local search from the parity split:
/// while some vertex has more same-side than cross-side neighbors, flip
/// the smallest such id. Guarantees cross-degree(v) >= ceil(deg(v)/2) for
/// every vertex and cross edges >= e(g)/2. Sides normalized |B| <= |A|.
BipartiteGraph local_bipartition(const Graph& g);

/// Auxiliary graph on side-A index space: {x, y} adjacent iff their
/// codegree in h is >= t_codeg.
Graph build_gamma(const BipartiteGraph& h, const Rational& t_codeg);

/// w is bad for {u, v} iff w is a common neighbor of u and v and has at
/// most t_gamma_deg gamma-neighbors inside N_H(u, v).
bool is_bad(VertexId w, VertexId u, VertexId v, const BipartiteGraph& h, const Graph& gamma,
            const Rational& t_gamma_deg);

/// Number of unordered pairs {u, v} of side B for which w is bad.
std::int64_t count_bad_pairs(VertexId w, const BipartiteGraph& h, const Graph& gamma,
                             const Rational& t_gamma_deg);

struct PivotChoice {
    VertexId pivot = -1;            // original id
    std::int64_t bad_pairs = 0;
    Rational average;               // exact mean over the evaluated set
    std::int64_t evaluated = 0;
};

/// Exhaustive strategy scans all of side A and returns the minimizer
/// (ties -> smallest id); its bad count is <= the exact average. Sampled
/// strategy evaluates `sample_count` seeded uniform draws.
PivotChoice select_pivot(const BipartiteGraph& h, const Graph& gamma, const ExtractConfig& cfg);

struct PrunedSides {
    VertexSet a_prime;  // gamma-neighborhood of the pivot (original ids)
    VertexSet b_prime;  // fixed point of the bad-partner eviction scan
};

PrunedSides prune_sides(const BipartiteGraph& h, const Graph& gamma, VertexId pivot,
                        const ThresholdSet& t);

// ---------------------------------------------------------------- pipeline

struct StageCounts {
    std::int64_t n_input = 0, e_input = 0;
    std::int64_t n_g1 = 0, e_g1 = 0;
    std::int64_t a_size = 0, b_size = 0, e_h = 0;
    std::int64_t gamma_edges = 0;
    std::int64_t nhw_size = 0;
    std::int64_t a_prime_size = 0, b_prime_size = 0, pruned_from_nhw = 0;
    std::int64_t e_gprime = 0;
};

struct StageTiming {
    std::string stage;
    double ms = 0.0;
};

/// Every intermediate object of a run. Vertex sets are original ids
/// except g1 (local ids + remap) and gamma (side-A index space of h).
struct PipelineTrace {
    InducedSubgraph g1;
    BipartiteGraph h;
    Graph gamma;
    VertexId pivot = -1;
    std::int64_t pivot_bad_pairs = 0;
    Rational bad_pair_avg;
    std::int64_t pivot_candidates_evaluated = 0;
    VertexSet nh_w;
    VertexSet a_prime, b_prime;
    BipartiteGraph g_prime;
    StageCounts counts;
    ThresholdSet thresholds;
    std::vector<StageTiming> timings;
};

struct ExtractResult {
    BipartiteGraph g_prime;
    PipelineTrace trace;
};

/// peel -> bipartition -> gamma -> pivot -> prune -> G' = H[A' u B'].
/// Deterministic for a fixed (input, config). Throws PipelineError for
/// EmptyInput / EmptyAfterPeel / NotEnoughEdges /
/// PaperModePreconditionViolated / InvalidThresholds.
ExtractResult extract(const Graph& g, const ExtractConfig& cfg);

// ---------------------------------------------------------------- audit

struct StageAuditReport {
    bool peel_min_degree_ok = false;
    std::int64_t g1_min_degree = 0;
    bool peel_edge_bound_ok = false;
    Rational peel_edge_lower_bound;     // e(G) - n * t_peel

    bool bipartition_degree_ok = false; // 2 * deg_H(v) >= deg_G1(v) for all v
    bool bipartition_edge_ok = false;   // 2 * e(H) >= e(G1)

    bool eq1_ok = false;                // pruned <= bad_pairs / t_bad
    Rational eq1_bound;
    std::int64_t pruned_from_nhw = 0;

    bool prune_fixed_point_ok = false;
    bool a_prime_matches_gamma_ok = false;

    std::int64_t gprime_min_a_degree = -1;     // -1 when A' empty
    std::int64_t gprime_max_bad_partners = -1; // -1 when B' empty
    std::int64_t gprime_edges = 0;

    // paper mode only: measured values against the paper formulas
    std::optional<bool> paper_min_a_degree_ok;
    std::optional<bool> paper_bad_partner_ok;
    std::optional<bool> paper_edge_count_ok;

    bool all_ok() const;
};

StageAuditReport audit_trace(const PipelineTrace& trace, const ThresholdSet& t);

} // namespace cycleweave

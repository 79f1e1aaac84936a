#pragma once

#include "cycleweave/graph.hpp"
#include "cycleweave/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cycleweave {

struct Edge {
    VertexId u = -1, v = -1;
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

enum class PairRelation { disjoint, share_a, share_b };

const char* pair_relation_name(PairRelation r);

/// Two distinct edges of a target graph. In bipartite targets each edge is
/// oriented (A-endpoint, B-endpoint); in plain targets (min, max), with
/// share_a meaning the shared vertex sits in the first slot.
struct EdgePair {
    Edge e, f;
    PairRelation relation = PairRelation::disjoint;
};

EdgePair make_edge_pair(const Graph& g, Edge e, Edge f);
EdgePair make_edge_pair(const BipartiteGraph& gp, Edge e, Edge f);

/// Simple cycle certifying that both pair edges lie on it. `cycle` lists
/// the vertices in order without repeating the first; length == edge count.
struct CycleWitness {
    EdgePair pair;
    std::vector<VertexId> cycle;
    int length = 0;
};

/// Structural check, independent of how the witness was produced: cyclic
/// adjacency, distinct vertices, both edges present as consecutive
/// positions, length <= 8 (<= 6 when the pair shares a vertex).
/// Returns human-readable problems; empty means valid.
std::vector<std::string> witness_problems(const Graph& g, const CycleWitness& w);

/// Exhaustive bounded search for a simple cycle of length <= max_len that
/// contains both e and f as edges; nullopt iff no such cycle exists.
/// This is the ground-truth oracle. Throws ValidationError when e or f is
/// not an edge of g or max_len < 3.
std::optional<CycleWitness> cycle_through_edges(const Graph& g, Edge e, Edge f, int max_len);

struct PairSelection {
    enum class Kind { all, sample } kind = Kind::all;
    std::int64_t count = 0;   // sample only
    std::uint64_t seed = 0;   // sample only
    static PairSelection all() { return {}; }
    static PairSelection sample(std::int64_t count, std::uint64_t seed) {
        return {Kind::sample, count, seed};
    }
};

struct ConnectivityReport {
    bool strongly_c8 = true;   // over the checked pairs; exact iff pairs = all
    bool exact = true;
    std::int64_t pairs_checked = 0;
    std::vector<EdgePair> failures;
    std::optional<std::vector<CycleWitness>> witnesses;
};

/// Checks, per unordered pair of distinct edges: disjoint pairs must lie on
/// a common cycle of length <= max_cycle, vertex-sharing pairs on one of
/// length <= max_cycle - 2. Worker count: CYCLEWEAVE_THREADS caps the
/// hardware default; results do not depend on it.
ConnectivityReport verify_strong_c8(const Graph& g, const PairSelection& sel, int max_cycle = 8,
                                    bool collect_witnesses = false);

struct CertificateReport {
    bool holds = false;
    Rational t1, t2, t3;
    std::int64_t measured_min_a_degree = -1;   // -1 when side A is empty
    std::int64_t measured_max_bad_partners = -1;
    std::int64_t measured_b_size = 0;
    std::vector<std::string> failure_reasons;
};

/// Instance-level sufficient conditions for strong C8-connectivity:
///   C1  every a in A' has degree >= t1
///   C2  every v in B' has fewer than t2 partners u with codegree < t3
///   C3  margins: t3 >= 5 and t1 - t2 >= 4
///   C4  |B'| >= t2
/// holds == true mathematically implies the property; the test corpus
/// cross-checks this against the exhaustive verifier.
CertificateReport check_certificate(const BipartiteGraph& gp, const Rational& t1,
                                    const Rational& t2, const Rational& t3);

struct SelectionExhausted : std::logic_error {
    using std::logic_error::logic_error;
};

/// Constructive witness under a passing certificate, choosing the smallest
/// id at every choice point. Disjoint pairs give an 8-cycle, vertex-sharing
/// pairs a 6-cycle. t2 only backs the nonemptiness guarantee; selections
/// filter by codegree >= t3. Throws SelectionExhausted only if a selection
/// set is empty, which signals a certificate-checker bug.
CycleWitness build_witness(const BipartiteGraph& gp, const EdgePair& pair, const Rational& t2,
                           const Rational& t3);

/// Number of simple 3-edge paths a - b1 - a1 - b, as the neighborhood sum
/// over b1 in N(a) \ {b} of |N(b1) n N(b) \ {a}|.
std::int64_t count_paths_len3(const BipartiteGraph& gp, VertexId a, VertexId b);

struct Path3Violation {
    VertexId a = -1, b = -1;
    std::int64_t count = 0;
    Rational bound;
};

struct Path3Report {
    bool ok = true;
    std::int64_t pairs_checked = 0;
    std::int64_t min_count = -1;
    VertexId min_a = -1, min_b = -1;
    std::vector<Path3Violation> violations;
    std::optional<bool> paper_target_ok; // set when a paper target was supplied
};

/// Asserts count_paths_len3(a, b) >= (deg(a) - t2 - 1) * (t3 - 1) for every
/// (a, b) in A' x B'. When paper_target is given (n^2 / 2^24 k^7), also
/// checks the minimum count against it.
Path3Report verify_path3_bound(const BipartiteGraph& gp, const Rational& t2, const Rational& t3,
                               const std::optional<Rational>& paper_target = std::nullopt);

} // namespace cycleweave

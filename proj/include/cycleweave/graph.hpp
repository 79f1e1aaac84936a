#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cycleweave {

using VertexId = std::int32_t;

/// Raised on malformed graph input (self-loop, id out of range,
/// overlapping sides, bad edge-list line, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sorted set of distinct vertex ids.
struct VertexSet {
    std::vector<VertexId> ids;

    VertexSet() = default;
    explicit VertexSet(std::vector<VertexId> sorted_unique) : ids(std::move(sorted_unique)) {}
    VertexSet(std::initializer_list<VertexId> init) : ids(init) {}
    static VertexSet from_unsorted(std::vector<VertexId> raw);

    bool contains(VertexId v) const;
    std::size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }
    auto begin() const { return ids.begin(); }
    auto end() const { return ids.end(); }
    bool operator==(const VertexSet& o) const { return ids == o.ids; }
};

/// Immutable simple undirected graph on dense 0-based ids.
/// Adjacency lists are sorted; no loops, no parallel edges.
class Graph {
  public:
    Graph() : edges_(0) {}

    /// Builds from unordered pairs; duplicates collapse, (u,v)/(v,u) are the
    /// same edge. Throws ValidationError on a self-loop or out-of-range id,
    /// naming the offending entry.
    static Graph from_edge_list(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& pairs);

    VertexId vertex_count() const { return static_cast<VertexId>(adj_.size()); }
    std::int64_t edge_count() const { return edges_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }
    VertexId degree(VertexId v) const {
        check_vertex(v);
        return static_cast<VertexId>(adj_[static_cast<std::size_t>(v)].size());
    }
    bool has_edge(VertexId u, VertexId v) const;

    /// Common neighborhood of two distinct vertices (rejects u == v).
    VertexSet common_neighbors(VertexId u, VertexId v) const;
    std::int64_t codegree(VertexId u, VertexId v) const;

    std::vector<std::pair<VertexId, VertexId>> edges() const; // sorted (u < v, lex)

  private:
    void check_vertex(VertexId v) const {
        if (v < 0 || v >= vertex_count())
            throw ValidationError("vertex id " + std::to_string(v) + " out of range");
    }

    std::vector<std::vector<VertexId>> adj_;
    std::int64_t edges_;
};

/// Induced subgraph plus the id remap back to the parent graph.
struct InducedSubgraph {
    Graph graph;                         // dense local ids 0..|vs|-1
    std::vector<VertexId> to_original;   // local -> parent id
    std::vector<VertexId> to_local;      // parent -> local id, -1 if absent
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& vs);

enum class Side : std::uint8_t { none = 0, a = 1, b = 2 };

/// Two-sided graph over a fixed id universe; only cross edges exist.
/// Side labels are semantic (the certificate clauses are side-specific),
/// so induce() preserves them; only the view/bipartition constructors
/// normalize |B| <= |A|.
class BipartiteGraph {
  public:
    BipartiteGraph() : universe_(0), edges_(0) {}

    static BipartiteGraph from_cross_edges(VertexId universe, VertexSet side_a, VertexSet side_b,
                                           const std::vector<std::pair<VertexId, VertexId>>& cross_pairs);

    VertexId universe() const { return universe_; }
    const VertexSet& side_a() const { return side_a_; }
    const VertexSet& side_b() const { return side_b_; }
    Side side_of(VertexId v) const {
        return (v < 0 || v >= universe_) ? Side::none : side_[static_cast<std::size_t>(v)];
    }

    std::int64_t edge_count() const { return edges_; }
    std::span<const VertexId> neighbors(VertexId v) const;
    VertexId degree(VertexId v) const { return static_cast<VertexId>(neighbors(v).size()); }
    bool has_edge(VertexId u, VertexId v) const;
    VertexSet common_neighbors(VertexId u, VertexId v) const;
    std::int64_t codegree(VertexId u, VertexId v) const;

    /// index of v within side_a (sorted order), -1 if not on side A
    VertexId a_index_of(VertexId v) const;

    /// Subgraph induced by sub_a u sub_b, keeping side roles and ids.
    BipartiteGraph induce(const VertexSet& sub_a, const VertexSet& sub_b) const;

    /// Forget sides: plain Graph over the same id universe.
    Graph to_graph() const;

    std::vector<std::pair<VertexId, VertexId>> edges() const; // (a, b) pairs, sorted

  private:
    VertexId universe_;
    VertexSet side_a_, side_b_;
    std::vector<Side> side_;
    std::vector<std::vector<VertexId>> adj_;
    std::int64_t edges_;
};

/// Keeps exactly the cross edges of g between the two disjoint sides,
/// normalized so |side_b| <= |side_a| (ties keep the given order).
BipartiteGraph bipartite_view(const Graph& g, const VertexSet& side_a, const VertexSet& side_b);

} // namespace cycleweave

#include "cycleweave/graph.hpp"

#include <algorithm>

namespace cycleweave {

namespace {

std::vector<VertexId> sorted_intersection(std::span<const VertexId> x, std::span<const VertexId> y) {
    std::vector<VertexId> out;
    out.reserve(std::min(x.size(), y.size()));
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

} // namespace

VertexSet VertexSet::from_unsorted(std::vector<VertexId> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return VertexSet(std::move(raw));
}

bool VertexSet::contains(VertexId v) const {
    return std::binary_search(ids.begin(), ids.end(), v);
}

Graph Graph::from_edge_list(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    if (n < 0)
        throw ValidationError("negative vertex count");
    std::vector<std::pair<VertexId, VertexId>> norm;
    norm.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [u, v] = pairs[i];
        if (u == v)
            throw ValidationError("edge " + std::to_string(i) + ": self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ValidationError("edge " + std::to_string(i) + ": vertex id out of range (" +
                                  std::to_string(u) + ", " + std::to_string(v) + ") with n=" + std::to_string(n));
        norm.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

    Graph g;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : norm) {
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : g.adj_)
        std::sort(row.begin(), row.end());
    g.edges_ = static_cast<std::int64_t>(norm.size());
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& row = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(row.begin(), row.end(), v);
}

VertexSet Graph::common_neighbors(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw ValidationError("common_neighbors requires two distinct vertices");
    return VertexSet(sorted_intersection(neighbors(u), neighbors(v)));
}

std::int64_t Graph::codegree(VertexId u, VertexId v) const {
    return static_cast<std::int64_t>(common_neighbors(u, v).size());
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(static_cast<std::size_t>(edges_));
    for (VertexId u = 0; u < vertex_count(); ++u)
        for (VertexId v : adj_[static_cast<std::size_t>(u)])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& vs) {
    InducedSubgraph out;
    out.to_original = vs.ids;
    out.to_local.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vs.ids.size(); ++i) {
        VertexId v = vs.ids[i];
        if (v < 0 || v >= g.vertex_count())
            throw ValidationError("induced_subgraph: vertex id " + std::to_string(v) + " out of range");
        out.to_local[static_cast<std::size_t>(v)] = static_cast<VertexId>(i);
    }
    std::vector<std::pair<VertexId, VertexId>> local_edges;
    for (VertexId v : vs.ids) {
        VertexId lv = out.to_local[static_cast<std::size_t>(v)];
        for (VertexId w : g.neighbors(v)) {
            if (w <= v)
                continue;
            VertexId lw = out.to_local[static_cast<std::size_t>(w)];
            if (lw >= 0)
                local_edges.emplace_back(lv, lw);
        }
    }
    out.graph = Graph::from_edge_list(static_cast<VertexId>(vs.ids.size()), local_edges);
    return out;
}

BipartiteGraph BipartiteGraph::from_cross_edges(VertexId universe, VertexSet side_a, VertexSet side_b,
                                                const std::vector<std::pair<VertexId, VertexId>>& cross_pairs) {
    BipartiteGraph h;
    h.universe_ = universe;
    h.side_.assign(static_cast<std::size_t>(universe), Side::none);
    auto mark = [&](const VertexSet& s, Side tag) {
        for (VertexId v : s.ids) {
            if (v < 0 || v >= universe)
                throw ValidationError("bipartite side vertex " + std::to_string(v) + " out of range");
            if (h.side_[static_cast<std::size_t>(v)] != Side::none)
                throw ValidationError("bipartite sides overlap at vertex " + std::to_string(v));
            h.side_[static_cast<std::size_t>(v)] = tag;
        }
    };
    mark(side_a, Side::a);
    mark(side_b, Side::b);
    h.side_a_ = std::move(side_a);
    h.side_b_ = std::move(side_b);

    std::vector<std::pair<VertexId, VertexId>> norm;
    norm.reserve(cross_pairs.size());
    for (auto [u, v] : cross_pairs) {
        Side su = h.side_of(u), sv = h.side_of(v);
        if (su == Side::none || sv == Side::none || su == sv)
            throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") is not a cross edge of the given sides");
        norm.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

    h.adj_.assign(static_cast<std::size_t>(universe), {});
    for (auto [u, v] : norm) {
        h.adj_[static_cast<std::size_t>(u)].push_back(v);
        h.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : h.adj_)
        std::sort(row.begin(), row.end());
    h.edges_ = static_cast<std::int64_t>(norm.size());
    return h;
}

std::span<const VertexId> BipartiteGraph::neighbors(VertexId v) const {
    if (v < 0 || v >= universe_)
        throw ValidationError("vertex id " + std::to_string(v) + " out of range");
    return adj_[static_cast<std::size_t>(v)];
}

bool BipartiteGraph::has_edge(VertexId u, VertexId v) const {
    auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

VertexSet BipartiteGraph::common_neighbors(VertexId u, VertexId v) const {
    if (u == v)
        throw ValidationError("common_neighbors requires two distinct vertices");
    return VertexSet(sorted_intersection(neighbors(u), neighbors(v)));
}

std::int64_t BipartiteGraph::codegree(VertexId u, VertexId v) const {
    return static_cast<std::int64_t>(common_neighbors(u, v).size());
}

VertexId BipartiteGraph::a_index_of(VertexId v) const {
    auto it = std::lower_bound(side_a_.ids.begin(), side_a_.ids.end(), v);
    if (it == side_a_.ids.end() || *it != v)
        return -1;
    return static_cast<VertexId>(it - side_a_.ids.begin());
}

BipartiteGraph BipartiteGraph::induce(const VertexSet& sub_a, const VertexSet& sub_b) const {
    for (VertexId v : sub_a.ids)
        if (side_of(v) != Side::a)
            throw ValidationError("induce: vertex " + std::to_string(v) + " is not on side A");
    for (VertexId v : sub_b.ids)
        if (side_of(v) != Side::b)
            throw ValidationError("induce: vertex " + std::to_string(v) + " is not on side B");
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (VertexId a : sub_a.ids)
        for (VertexId b : neighbors(a))
            if (sub_b.contains(b))
                kept.emplace_back(a, b);
    return from_cross_edges(universe_, sub_a, sub_b, kept);
}

Graph BipartiteGraph::to_graph() const {
    std::vector<std::pair<VertexId, VertexId>> pairs = edges();
    return Graph::from_edge_list(universe_, pairs);
}

std::vector<std::pair<VertexId, VertexId>> BipartiteGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(static_cast<std::size_t>(edges_));
    for (VertexId a : side_a_.ids)
        for (VertexId b : adj_[static_cast<std::size_t>(a)])
            out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

BipartiteGraph bipartite_view(const Graph& g, const VertexSet& side_a, const VertexSet& side_b) {
    const VertexSet* pa = &side_a;
    const VertexSet* pb = &side_b;
    if (pb->size() > pa->size())
        std::swap(pa, pb);

    std::vector<std::pair<VertexId, VertexId>> cross;
    for (VertexId u : pa->ids)
        for (VertexId v : g.neighbors(u))
            if (pb->contains(v))
                cross.emplace_back(u, v);
    return BipartiteGraph::from_cross_edges(g.vertex_count(), *pa, *pb, cross);
}

} // namespace cycleweave

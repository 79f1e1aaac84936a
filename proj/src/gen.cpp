#include "cycleweave/gen.hpp"

#include <cmath>
#include <random>

namespace cycleweave {

namespace {

// floor(p * 2^64) for p in [0, 1]; p == 1 handled by callers
std::uint64_t bernoulli_threshold(const Rational& p) {
    if (p < Rational(0) || p > Rational(1))
        throw ValidationError("edge probability must lie in [0, 1]");
    if (p.den() > (Int128(1) << 62))
        throw ValidationError("edge probability denominator too large");
    unsigned __int128 num = static_cast<unsigned __int128>(p.num());
    unsigned __int128 den = static_cast<unsigned __int128>(p.den());
    return static_cast<std::uint64_t>((num << 64) / den);
}

} // namespace

Graph disjoint_cliques(VertexId n, VertexId parts) {
    if (n < 1 || parts < 1 || parts > n)
        throw ValidationError("disjoint_cliques needs 1 <= parts <= n");
    const VertexId base = n / parts;
    const VertexId larger = n % parts; // this many cliques get base + 1
    std::vector<std::pair<VertexId, VertexId>> edges;
    VertexId next = 0;
    for (VertexId c = 0; c < parts; ++c) {
        VertexId size = base + (c < larger ? 1 : 0);
        for (VertexId i = 0; i < size; ++i)
            for (VertexId j = i + 1; j < size; ++j)
                edges.emplace_back(next + i, next + j);
        next += size;
    }
    return Graph::from_edge_list(n, edges);
}

VertexId parts_from_beta(VertexId n, double beta) {
    if (n < 1)
        throw ValidationError("parts_from_beta needs n >= 1");
    auto parts = static_cast<VertexId>(std::llround(std::pow(static_cast<double>(n), beta)));
    return std::max<VertexId>(1, std::min(parts, n));
}

Graph uniform_random(VertexId n, const Rational& p, std::uint64_t seed) {
    if (n < 0)
        throw ValidationError("uniform_random needs n >= 0");
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (p == Rational(1)) {
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
        return Graph::from_edge_list(n, edges);
    }
    const std::uint64_t threshold = bernoulli_threshold(p);
    std::mt19937_64 rng(seed);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng() < threshold)
                edges.emplace_back(u, v);
    return Graph::from_edge_list(n, edges);
}

BipartiteGraph complete_bipartite(VertexId a, VertexId b) {
    if (a < 1 || b < 1)
        throw ValidationError("complete_bipartite needs both sides nonempty");
    std::vector<VertexId> sa, sb;
    for (VertexId i = 0; i < a; ++i)
        sa.push_back(i);
    for (VertexId j = 0; j < b; ++j)
        sb.push_back(a + j);
    std::vector<std::pair<VertexId, VertexId>> cross;
    cross.reserve(static_cast<std::size_t>(a) * static_cast<std::size_t>(b));
    for (VertexId i = 0; i < a; ++i)
        for (VertexId j = 0; j < b; ++j)
            cross.emplace_back(i, a + j);
    if (b > a)
        std::swap(sa, sb);
    return BipartiteGraph::from_cross_edges(a + b, VertexSet(std::move(sa)), VertexSet(std::move(sb)),
                                            cross);
}

BipartiteGraph bipartite_random(VertexId a, VertexId b, const Rational& p, std::uint64_t seed) {
    if (a < 1 || b < 1)
        throw ValidationError("bipartite_random needs both sides nonempty");
    std::vector<VertexId> sa, sb;
    for (VertexId i = 0; i < a; ++i)
        sa.push_back(i);
    for (VertexId j = 0; j < b; ++j)
        sb.push_back(a + j);
    std::vector<std::pair<VertexId, VertexId>> cross;
    if (p == Rational(1)) {
        for (VertexId i = 0; i < a; ++i)
            for (VertexId j = 0; j < b; ++j)
                cross.emplace_back(i, a + j);
    } else {
        const std::uint64_t threshold = bernoulli_threshold(p);
        std::mt19937_64 rng(seed);
        for (VertexId i = 0; i < a; ++i)
            for (VertexId j = 0; j < b; ++j)
                if (rng() < threshold)
                    cross.emplace_back(i, a + j);
    }
    if (b > a)
        std::swap(sa, sb);
    return BipartiteGraph::from_cross_edges(a + b, VertexSet(std::move(sa)), VertexSet(std::move(sb)),
                                            cross);
}

} // namespace cycleweave

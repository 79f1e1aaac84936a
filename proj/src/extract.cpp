#include "cycleweave/extract.hpp"

#include "cycleweave/prng.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace cycleweave {

namespace {

std::int64_t clamp_floor_to_i64(const Rational& r) {
    Int128 f = r.floor_int();
    if (f > (Int128)INT64_MAX)
        return INT64_MAX;
    if (f < (Int128)INT64_MIN)
        return INT64_MIN;
    return static_cast<std::int64_t>(f);
}

std::int64_t clamp_ceil_to_i64(const Rational& r) {
    Int128 c = r.ceil_int();
    if (c > (Int128)INT64_MAX)
        return INT64_MAX;
    if (c < (Int128)INT64_MIN)
        return INT64_MIN;
    return static_cast<std::int64_t>(c);
}

// Dense bit rows over the side-A index space; shared by the pivot scan,
// pruning, and the audit recheck. Semantically identical to is_bad(); the
// agreement is property-tested.
struct BadPairContext {
    const BipartiteGraph& h;
    std::size_t words;
    std::vector<std::uint64_t> gamma_rows; // a-index -> gamma neighbors (a-index bits)
    std::vector<std::uint64_t> b_rows;     // b-slot -> A-neighborhood (a-index bits)
    std::vector<VertexId> b_slot;          // universe id -> slot in side_b, -1 outside
    std::int64_t bad_cap;                  // bad iff gamma-degree inside N(u,v) <= bad_cap

    BadPairContext(const BipartiteGraph& h_, const Graph& gamma, const Rational& t_gamma_deg)
        : h(h_) {
        std::size_t acount = h.side_a().size();
        words = (acount + 63) / 64;
        gamma_rows.assign(acount * words, 0);
        for (VertexId x = 0; x < gamma.vertex_count(); ++x)
            for (VertexId y : gamma.neighbors(x))
                gamma_rows[static_cast<std::size_t>(x) * words + static_cast<std::size_t>(y) / 64] |=
                    std::uint64_t{1} << (y % 64);

        b_slot.assign(static_cast<std::size_t>(h.universe()), -1);
        const auto& bs = h.side_b().ids;
        b_rows.assign(bs.size() * words, 0);
        for (std::size_t i = 0; i < bs.size(); ++i) {
            b_slot[static_cast<std::size_t>(bs[i])] = static_cast<VertexId>(i);
            for (VertexId a : h.neighbors(bs[i])) {
                VertexId ai = h.a_index_of(a);
                b_rows[i * words + static_cast<std::size_t>(ai) / 64] |= std::uint64_t{1} << (ai % 64);
            }
        }
        bad_cap = clamp_floor_to_i64(t_gamma_deg);
    }

    // u, v: side-B vertex ids (universe); w_aidx: a-index of a common neighbor
    bool bad(VertexId w_aidx, VertexId u, VertexId v) const {
        const std::uint64_t* gw = &gamma_rows[static_cast<std::size_t>(w_aidx) * words];
        const std::uint64_t* ru = &b_rows[static_cast<std::size_t>(b_slot[static_cast<std::size_t>(u)]) * words];
        const std::uint64_t* rv = &b_rows[static_cast<std::size_t>(b_slot[static_cast<std::size_t>(v)]) * words];
        std::int64_t cnt = 0;
        for (std::size_t i = 0; i < words; ++i)
            cnt += __builtin_popcountll(gw[i] & ru[i] & rv[i]);
        return cnt <= bad_cap;
    }

    std::int64_t count_for_pivot(VertexId w) const {
        VertexId wi = h.a_index_of(w);
        auto nhw = h.neighbors(w);
        std::int64_t cnt = 0;
        for (std::size_t i = 0; i < nhw.size(); ++i)
            for (std::size_t j = i + 1; j < nhw.size(); ++j)
                if (bad(wi, nhw[i], nhw[j]))
                    ++cnt;
        return cnt;
    }
};

} // namespace

VertexSet peel_survivors(const Graph& g, const Rational& t) {
    const VertexId n = g.vertex_count();
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n));
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    // deg < t  <=>  deg < ceil(t)  for integer deg
    const std::int64_t cutoff = clamp_ceil_to_i64(t);

    std::set<VertexId> violating;
    for (VertexId v = 0; v < n; ++v) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        if (deg[static_cast<std::size_t>(v)] < cutoff)
            violating.insert(v);
    }
    while (!violating.empty()) {
        VertexId v = *violating.begin();
        violating.erase(violating.begin());
        alive[static_cast<std::size_t>(v)] = false;
        for (VertexId u : g.neighbors(v)) {
            if (!alive[static_cast<std::size_t>(u)])
                continue;
            if (--deg[static_cast<std::size_t>(u)] < cutoff)
                violating.insert(u);
        }
    }
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v)
        if (alive[static_cast<std::size_t>(v)])
            out.push_back(v);
    return VertexSet(std::move(out));
}

InducedSubgraph peel_to_min_degree(const Graph& g, const Rational& t) {
    return induced_subgraph(g, peel_survivors(g, t));
}

BipartiteGraph local_bipartition(const Graph& g) {
    const VertexId n = g.vertex_count();
    if (n == 0)
        throw ValidationError("local_bipartition needs a nonempty graph");

    std::vector<std::uint8_t> side(static_cast<std::size_t>(n));
    std::vector<VertexId> same(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v)
        side[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v % 2);
    for (VertexId v = 0; v < n; ++v)
        for (VertexId u : g.neighbors(v))
            if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)])
                ++same[static_cast<std::size_t>(v)];

    // same > cross  <=>  2 * same > deg; each flip raises the cut, so this
    // ends within e(g) moves
    std::set<VertexId> unhappy;
    for (VertexId v = 0; v < n; ++v)
        if (2 * same[static_cast<std::size_t>(v)] > g.degree(v))
            unhappy.insert(v);
    while (!unhappy.empty()) {
        VertexId v = *unhappy.begin();
        unhappy.erase(unhappy.begin());
        if (2 * same[static_cast<std::size_t>(v)] <= g.degree(v))
            continue; // stale entry
        side[static_cast<std::size_t>(v)] ^= 1;
        same[static_cast<std::size_t>(v)] = g.degree(v) - same[static_cast<std::size_t>(v)];
        for (VertexId u : g.neighbors(v)) {
            if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)])
                ++same[static_cast<std::size_t>(u)];
            else
                --same[static_cast<std::size_t>(u)];
            if (2 * same[static_cast<std::size_t>(u)] > g.degree(u))
                unhappy.insert(u);
        }
    }

    std::vector<VertexId> sa, sb;
    for (VertexId v = 0; v < n; ++v)
        (side[static_cast<std::size_t>(v)] == 0 ? sa : sb).push_back(v);
    return bipartite_view(g, VertexSet(std::move(sa)), VertexSet(std::move(sb)));
}

Graph build_gamma(const BipartiteGraph& h, const Rational& t_codeg) {
    const auto& as = h.side_a().ids;
    const std::size_t acount = as.size();
    const std::size_t bcount = h.side_b().size();
    const std::size_t words = (bcount + 63) / 64;

    // A-side neighborhoods as bitsets over side-B slots
    std::vector<VertexId> b_slot(static_cast<std::size_t>(h.universe()), -1);
    for (std::size_t i = 0; i < h.side_b().ids.size(); ++i)
        b_slot[static_cast<std::size_t>(h.side_b().ids[i])] = static_cast<VertexId>(i);
    std::vector<std::uint64_t> rows(acount * words, 0);
    for (std::size_t i = 0; i < acount; ++i)
        for (VertexId b : h.neighbors(as[i])) {
            VertexId s = b_slot[static_cast<std::size_t>(b)];
            rows[i * words + static_cast<std::size_t>(s) / 64] |= std::uint64_t{1} << (s % 64);
        }

    // codegree >= t  <=>  codegree >= ceil(t)
    const std::int64_t cutoff = clamp_ceil_to_i64(t_codeg);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t i = 0; i < acount; ++i) {
        const std::uint64_t* ri = &rows[i * words];
        for (std::size_t j = i + 1; j < acount; ++j) {
            const std::uint64_t* rj = &rows[j * words];
            std::int64_t codeg = 0;
            for (std::size_t wdx = 0; wdx < words; ++wdx)
                codeg += __builtin_popcountll(ri[wdx] & rj[wdx]);
            if (codeg >= cutoff)
                edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
        }
    }
    return Graph::from_edge_list(static_cast<VertexId>(acount), edges);
}

bool is_bad(VertexId w, VertexId u, VertexId v, const BipartiteGraph& h, const Graph& gamma,
            const Rational& t_gamma_deg) {
    if (h.side_of(w) != Side::a)
        throw ValidationError("is_bad: w must lie on side A");
    if (h.side_of(u) != Side::b || h.side_of(v) != Side::b || u == v)
        throw ValidationError("is_bad: u, v must be two distinct side-B vertices");
    if (!h.has_edge(u, w) || !h.has_edge(v, w))
        return false;
    VertexSet nhuv = h.common_neighbors(u, v);
    VertexId wi = h.a_index_of(w);
    std::int64_t gamma_deg = 0;
    for (VertexId z : nhuv.ids) {
        VertexId zi = h.a_index_of(z);
        if (zi != wi && std::binary_search(gamma.neighbors(wi).begin(), gamma.neighbors(wi).end(), zi))
            ++gamma_deg;
    }
    return Rational(gamma_deg) <= t_gamma_deg;
}

std::int64_t count_bad_pairs(VertexId w, const BipartiteGraph& h, const Graph& gamma,
                             const Rational& t_gamma_deg) {
    if (h.side_of(w) != Side::a)
        throw ValidationError("count_bad_pairs: w must lie on side A");
    BadPairContext ctx(h, gamma, t_gamma_deg);
    return ctx.count_for_pivot(w);
}

PivotChoice select_pivot(const BipartiteGraph& h, const Graph& gamma, const ExtractConfig& cfg) {
    const auto& as = h.side_a().ids;
    if (as.empty())
        throw ValidationError("select_pivot: side A is empty");
    BadPairContext ctx(h, gamma, cfg.thresholds.t_gamma_deg);

    PivotChoice out;
    if (cfg.pivot_strategy == PivotStrategy::exhaustive) {
        std::int64_t best = -1;
        Rational sum(0);
        for (VertexId w : as) {
            std::int64_t c = ctx.count_for_pivot(w);
            sum = sum + Rational(c);
            if (best < 0 || c < best) { // strict: ties keep the smaller id
                best = c;
                out.pivot = w;
            }
        }
        out.bad_pairs = best;
        out.average = sum / Rational(static_cast<std::int64_t>(as.size()));
        out.evaluated = static_cast<std::int64_t>(as.size());
        return out;
    }

    if (cfg.sample_count < 1)
        throw PipelineError(PipelineErrorKind::invalid_thresholds, "sampled pivot needs count >= 1");
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::int64_t> memo(as.size(), -1);
    std::int64_t best = -1;
    Rational sum(0);
    for (std::int64_t s = 0; s < cfg.sample_count; ++s) {
        auto idx = static_cast<std::size_t>(bounded_rand(rng, as.size()));
        if (memo[idx] < 0)
            memo[idx] = ctx.count_for_pivot(as[idx]);
        std::int64_t c = memo[idx];
        sum = sum + Rational(c);
        if (best < 0 || c < best || (c == best && as[idx] < out.pivot)) {
            best = c;
            out.pivot = as[idx];
        }
    }
    out.bad_pairs = best;
    out.average = sum / Rational(cfg.sample_count);
    out.evaluated = cfg.sample_count;
    return out;
}

PrunedSides prune_sides(const BipartiteGraph& h, const Graph& gamma, VertexId pivot,
                        const ThresholdSet& t) {
    VertexId wi = h.a_index_of(pivot);
    if (wi < 0)
        throw ValidationError("prune_sides: pivot must lie on side A");

    PrunedSides out;
    {
        std::vector<VertexId> ap;
        for (VertexId ai : gamma.neighbors(wi))
            ap.push_back(h.side_a().ids[static_cast<std::size_t>(ai)]);
        std::sort(ap.begin(), ap.end());
        out.a_prime = VertexSet(std::move(ap));
    }

    auto nhw_span = h.neighbors(pivot);
    std::vector<VertexId> nhw(nhw_span.begin(), nhw_span.end());
    const std::size_t m = nhw.size();
    const std::size_t words = (m + 63) / 64;

    BadPairContext ctx(h, gamma, t.t_gamma_deg);
    std::vector<std::uint64_t> bad_rows(m * words, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (ctx.bad(wi, nhw[i], nhw[j])) {
                bad_rows[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
                bad_rows[j * words + i / 64] |= std::uint64_t{1} << (i % 64);
            }

    // evict iff count >= t_bad  <=>  count >= ceil(t_bad)
    const std::int64_t evict_cutoff = clamp_ceil_to_i64(t.t_bad_per_vertex);
    std::vector<std::uint64_t> alive(words, 0);
    for (std::size_t i = 0; i < m; ++i)
        alive[i / 64] |= std::uint64_t{1} << (i % 64);

    // ascending scan over the current set, restarting after every eviction
    bool removed = true;
    while (removed) {
        removed = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (!(alive[i / 64] >> (i % 64) & 1))
                continue;
            std::int64_t cnt = 0;
            const std::uint64_t* row = &bad_rows[i * words];
            for (std::size_t wdx = 0; wdx < words; ++wdx)
                cnt += __builtin_popcountll(row[wdx] & alive[wdx]);
            if (cnt >= evict_cutoff) {
                alive[i / 64] &= ~(std::uint64_t{1} << (i % 64));
                removed = true;
                break;
            }
        }
    }

    std::vector<VertexId> bp;
    for (std::size_t i = 0; i < m; ++i)
        if (alive[i / 64] >> (i % 64) & 1)
            bp.push_back(nhw[i]);
    std::sort(bp.begin(), bp.end());
    out.b_prime = VertexSet(std::move(bp));
    return out;
}

ExtractResult extract(const Graph& g, const ExtractConfig& cfg) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };

    const ThresholdSet& th = cfg.thresholds;
    th.validate();
    if (g.vertex_count() == 0)
        throw PipelineError(PipelineErrorKind::empty_input, "input graph has no vertices");
    if (th.n != g.vertex_count())
        throw PipelineError(PipelineErrorKind::invalid_thresholds,
                            "thresholds were built for n=" + std::to_string(th.n) +
                                " but the graph has n=" + std::to_string(g.vertex_count()));
    if (th.mode == ThresholdMode::paper) {
        Rational rn(th.n);
        Rational k5 = pow_rational(*th.k, 5);
        if (!(rn > Rational(1 << 20) * k5))
            throw PipelineError(PipelineErrorKind::paper_mode_precondition,
                                "paper mode requires n > 2^20 k^5");
        if (Rational(g.edge_count()) < rn * rn / *th.k)
            throw PipelineError(PipelineErrorKind::not_enough_edges,
                                "paper mode requires e(G) >= n^2 / k; got e=" +
                                    std::to_string(g.edge_count()));
    }

    PipelineTrace trace;
    trace.thresholds = th;
    trace.counts.n_input = g.vertex_count();
    trace.counts.e_input = g.edge_count();

    auto t0 = clock::now();
    VertexSet survivors = peel_survivors(g, th.t_peel);
    if (survivors.empty())
        throw PipelineError(PipelineErrorKind::empty_after_peel,
                            "peeling to minimum degree " + th.t_peel.str() + " removed every vertex");
    trace.g1 = induced_subgraph(g, survivors);
    trace.counts.n_g1 = trace.g1.graph.vertex_count();
    trace.counts.e_g1 = trace.g1.graph.edge_count();
    trace.timings.push_back({"peel", ms_since(t0)});

    t0 = clock::now();
    BipartiteGraph local_h = local_bipartition(trace.g1.graph);
    {
        // lift to original ids
        auto lift_set = [&](const VertexSet& s) {
            std::vector<VertexId> v;
            v.reserve(s.size());
            for (VertexId x : s.ids)
                v.push_back(trace.g1.to_original[static_cast<std::size_t>(x)]);
            std::sort(v.begin(), v.end());
            return VertexSet(std::move(v));
        };
        std::vector<std::pair<VertexId, VertexId>> cross;
        cross.reserve(static_cast<std::size_t>(local_h.edge_count()));
        for (auto [a, b] : local_h.edges())
            cross.emplace_back(trace.g1.to_original[static_cast<std::size_t>(a)],
                               trace.g1.to_original[static_cast<std::size_t>(b)]);
        trace.h = BipartiteGraph::from_cross_edges(g.vertex_count(), lift_set(local_h.side_a()),
                                                   lift_set(local_h.side_b()), cross);
    }
    trace.counts.a_size = static_cast<std::int64_t>(trace.h.side_a().size());
    trace.counts.b_size = static_cast<std::int64_t>(trace.h.side_b().size());
    trace.counts.e_h = trace.h.edge_count();
    trace.timings.push_back({"bipartition", ms_since(t0)});

    t0 = clock::now();
    trace.gamma = build_gamma(trace.h, th.t_codeg);
    trace.counts.gamma_edges = trace.gamma.edge_count();
    trace.timings.push_back({"gamma", ms_since(t0)});

    t0 = clock::now();
    PivotChoice pc = select_pivot(trace.h, trace.gamma, cfg);
    trace.pivot = pc.pivot;
    trace.pivot_bad_pairs = pc.bad_pairs;
    trace.bad_pair_avg = pc.average;
    trace.pivot_candidates_evaluated = pc.evaluated;
    {
        auto nhw = trace.h.neighbors(pc.pivot);
        trace.nh_w = VertexSet(std::vector<VertexId>(nhw.begin(), nhw.end()));
    }
    trace.counts.nhw_size = static_cast<std::int64_t>(trace.nh_w.size());
    trace.timings.push_back({"pivot", ms_since(t0)});

    t0 = clock::now();
    PrunedSides pruned = prune_sides(trace.h, trace.gamma, pc.pivot, th);
    trace.a_prime = pruned.a_prime;
    trace.b_prime = pruned.b_prime;
    trace.counts.a_prime_size = static_cast<std::int64_t>(trace.a_prime.size());
    trace.counts.b_prime_size = static_cast<std::int64_t>(trace.b_prime.size());
    trace.counts.pruned_from_nhw =
        trace.counts.nhw_size - static_cast<std::int64_t>(trace.b_prime.size());
    trace.timings.push_back({"prune", ms_since(t0)});

    t0 = clock::now();
    trace.g_prime = trace.h.induce(trace.a_prime, trace.b_prime);
    trace.counts.e_gprime = trace.g_prime.edge_count();
    trace.timings.push_back({"induce", ms_since(t0)});

    return ExtractResult{trace.g_prime, std::move(trace)};
}

bool StageAuditReport::all_ok() const {
    bool ok = peel_min_degree_ok && peel_edge_bound_ok && bipartition_degree_ok &&
              bipartition_edge_ok && eq1_ok && prune_fixed_point_ok && a_prime_matches_gamma_ok;
    for (const auto& extra : {paper_min_a_degree_ok, paper_bad_partner_ok, paper_edge_count_ok})
        if (extra.has_value())
            ok = ok && *extra;
    return ok;
}

StageAuditReport audit_trace(const PipelineTrace& trace, const ThresholdSet& t) {
    StageAuditReport r;

    // (a) peel guarantees
    std::int64_t min_deg = INT64_MAX;
    const Graph& g1 = trace.g1.graph;
    for (VertexId v = 0; v < g1.vertex_count(); ++v)
        min_deg = std::min<std::int64_t>(min_deg, g1.degree(v));
    if (g1.vertex_count() == 0)
        min_deg = 0;
    r.g1_min_degree = min_deg;
    r.peel_min_degree_ok = Rational(min_deg) >= t.t_peel;
    r.peel_edge_lower_bound = Rational(trace.counts.e_input) - Rational(trace.counts.n_input) * t.t_peel;
    r.peel_edge_bound_ok = Rational(trace.counts.e_g1) >= r.peel_edge_lower_bound;

    // (b) bipartition guarantees: deg_H(v) >= ceil(deg_G1(v) / 2)
    r.bipartition_degree_ok = true;
    for (VertexId lv = 0; lv < g1.vertex_count(); ++lv) {
        VertexId orig = trace.g1.to_original[static_cast<std::size_t>(lv)];
        if (2 * static_cast<std::int64_t>(trace.h.degree(orig)) < g1.degree(lv)) {
            r.bipartition_degree_ok = false;
            break;
        }
    }
    r.bipartition_edge_ok = 2 * trace.counts.e_h >= trace.counts.e_g1;

    // (c) eq-1 arithmetic: evictions cost >= t_bad bad pairs each
    r.pruned_from_nhw = trace.counts.pruned_from_nhw;
    r.eq1_bound = Rational(trace.pivot_bad_pairs) / t.t_bad_per_vertex;
    r.eq1_ok = Rational(r.pruned_from_nhw) <= r.eq1_bound;

    // prune fixed point + A' characterization
    BadPairContext ctx(trace.h, trace.gamma, t.t_gamma_deg);
    VertexId wi = trace.h.a_index_of(trace.pivot);
    r.prune_fixed_point_ok = true;
    r.gprime_max_bad_partners = trace.b_prime.empty() ? -1 : 0;
    for (VertexId v : trace.b_prime.ids) {
        std::int64_t cnt = 0;
        for (VertexId u : trace.b_prime.ids)
            if (u != v && ctx.bad(wi, u, v))
                ++cnt;
        r.gprime_max_bad_partners = std::max(r.gprime_max_bad_partners, cnt);
        if (Rational(cnt) >= t.t_bad_per_vertex)
            r.prune_fixed_point_ok = false;
    }
    {
        std::vector<VertexId> expect;
        for (VertexId ai : trace.gamma.neighbors(wi))
            expect.push_back(trace.h.side_a().ids[static_cast<std::size_t>(ai)]);
        std::sort(expect.begin(), expect.end());
        r.a_prime_matches_gamma_ok = expect == trace.a_prime.ids;
    }

    // (d) G' measurements: min A'-degree, worst bad-partner count, edges
    r.gprime_min_a_degree = trace.a_prime.empty() ? -1 : INT64_MAX;
    for (VertexId a : trace.a_prime.ids)
        r.gprime_min_a_degree = std::min<std::int64_t>(r.gprime_min_a_degree, trace.g_prime.degree(a));
    r.gprime_edges = trace.g_prime.edge_count();

    if (t.mode == ThresholdMode::paper) {
        Rational rn(t.n);
        Rational k2 = *t.k * *t.k;
        Rational min_a_target = rn / (Rational(1 << 6) * k2);          // n / 2^6 k^2
        Rational edge_target = rn * rn / (Rational(1 << 6) * k2);      // n^2 / 2^6 k^2
        r.paper_min_a_degree_ok =
            !trace.a_prime.empty() && Rational(r.gprime_min_a_degree) >= min_a_target;
        r.paper_bad_partner_ok = r.prune_fixed_point_ok; // t_bad == n / 2^7 k^2 in paper mode
        r.paper_edge_count_ok = Rational(r.gprime_edges) >= edge_target;
    }
    return r;
}

} // namespace cycleweave

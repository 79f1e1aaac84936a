#include "cycleweave/connect.hpp"

#include "cycleweave/prng.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <thread>

namespace cycleweave {

const char* pair_relation_name(PairRelation r) {
    switch (r) {
    case PairRelation::disjoint: return "disjoint";
    case PairRelation::share_a: return "share_a";
    case PairRelation::share_b: return "share_b";
    }
    return "?";
}

namespace {

void require_edge(const Graph& g, Edge e) {
    if (!g.has_edge(e.u, e.v))
        throw ValidationError("(" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") is not an edge of the graph");
}

// lazily computed BFS distance fields, one per requested target
class BfsDistances {
  public:
    explicit BfsDistances(const Graph& g) : g_(&g), cache_(static_cast<std::size_t>(g.vertex_count())) {}

    const std::vector<std::int32_t>& from(VertexId target) {
        auto& field = cache_[static_cast<std::size_t>(target)];
        if (!field.empty())
            return field;
        field.assign(static_cast<std::size_t>(g_->vertex_count()), INT32_MAX);
        field[static_cast<std::size_t>(target)] = 0;
        std::deque<VertexId> q{target};
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            for (VertexId u : g_->neighbors(v))
                if (field[static_cast<std::size_t>(u)] == INT32_MAX) {
                    field[static_cast<std::size_t>(u)] = field[static_cast<std::size_t>(v)] + 1;
                    q.push_back(u);
                }
        }
        return field;
    }

  private:
    const Graph* g_;
    std::vector<std::vector<std::int32_t>> cache_;
};

// Exhaustive enumeration of simple paths source -> target with at most
// `budget` edges, skipping vertices marked used. Neighbors are scanned in
// ascending id order, so the first completion is canonical. Sink returns
// true to accept and stop. Branches that provably cannot reach the target
// within budget (full-graph BFS distance) are pruned; pruned branches
// contain no completions, so the enumeration stays exhaustive.
struct PathSearch {
    const Graph& g;
    std::vector<char>& used;
    const std::vector<std::int32_t>& dist_to_target;
    VertexId target;
    std::vector<VertexId> path;

    template <typename Sink>
    bool run(VertexId source, int budget, int min_edges, Sink&& sink) {
        path.clear();
        path.push_back(source);
        return dfs(source, budget, min_edges, sink);
    }

  private:
    template <typename Sink>
    bool dfs(VertexId cur, int remaining, int min_edges, Sink&& sink) {
        if (remaining >= 1 && min_edges <= 1 && g.has_edge(cur, target)) {
            path.push_back(target);
            bool accepted = sink(path);
            path.pop_back();
            if (accepted)
                return true;
        }
        if (remaining < 2)
            return false;
        for (VertexId w : g.neighbors(cur)) {
            if (w == target || used[static_cast<std::size_t>(w)])
                continue;
            if (dist_to_target[static_cast<std::size_t>(w)] > remaining - 1)
                continue;
            used[static_cast<std::size_t>(w)] = 1;
            path.push_back(w);
            bool done = dfs(w, remaining - 1, min_edges - 1, sink);
            path.pop_back();
            used[static_cast<std::size_t>(w)] = 0;
            if (done)
                return true;
        }
        return false;
    }
};

std::optional<CycleWitness> search_cycle(const Graph& g, const EdgePair& pair, int max_len,
                                         BfsDistances& dists) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<char> used(n, 0);
    CycleWitness found;
    found.pair = pair;

    auto shared_case = [&](VertexId s, VertexId x, VertexId y) -> bool {
        // cycle = s, x, ..., y with a simple x -> y path avoiding s
        used.assign(n, 0);
        used[static_cast<std::size_t>(s)] = 1;
        used[static_cast<std::size_t>(x)] = 1;
        PathSearch ps{g, used, dists.from(y), y, {}};
        return ps.run(x, max_len - 2, 1, [&](const std::vector<VertexId>& p) {
            found.cycle.clear();
            found.cycle.push_back(s);
            found.cycle.insert(found.cycle.end(), p.begin(), p.end());
            found.length = static_cast<int>(found.cycle.size());
            return true;
        });
    };

    if (pair.relation != PairRelation::disjoint) {
        VertexId s, x, y;
        if (pair.e == pair.f) {
            // one edge: any simple cycle through it
            used.assign(n, 0);
            used[static_cast<std::size_t>(pair.e.u)] = 1;
            PathSearch ps{g, used, dists.from(pair.e.u), pair.e.u, {}};
            bool ok = ps.run(pair.e.v, max_len - 1, 2, [&](const std::vector<VertexId>& p) {
                found.cycle.assign(1, pair.e.u);
                found.cycle.insert(found.cycle.end(), p.begin(), p.end() - 1);
                found.length = static_cast<int>(found.cycle.size());
                return true;
            });
            return ok ? std::optional<CycleWitness>(found) : std::nullopt;
        }
        if (pair.e.u == pair.f.u) {
            s = pair.e.u; x = pair.e.v; y = pair.f.v;
        } else if (pair.e.v == pair.f.v) {
            s = pair.e.v; x = pair.e.u; y = pair.f.u;
        } else if (pair.e.u == pair.f.v) {
            s = pair.e.u; x = pair.e.v; y = pair.f.u;
        } else {
            s = pair.e.v; x = pair.e.u; y = pair.f.v;
        }
        if (shared_case(s, x, y))
            return found;
        return std::nullopt;
    }

    // disjoint: cycle = a, b, [P: b->c], c, d?  No: orient as
    // a - b ... c - d ... a, i.e. path P from b to c, path Q from d to a,
    // vertex-disjoint; try both orientations of f
    VertexId a = pair.e.u, b = pair.e.v;
    for (auto [c, d] : {std::pair{pair.f.u, pair.f.v}, std::pair{pair.f.v, pair.f.u}}) {
        used.assign(n, 0);
        used[static_cast<std::size_t>(a)] = 1;
        used[static_cast<std::size_t>(b)] = 1;
        used[static_cast<std::size_t>(c)] = 1;
        used[static_cast<std::size_t>(d)] = 1;
        PathSearch outer{g, used, dists.from(c), c, {}};
        bool ok = outer.run(b, max_len - 3, 1, [&](const std::vector<VertexId>& p) {
            // mark P's interior, then search Q: d -> a
            for (std::size_t i = 1; i + 1 < p.size(); ++i)
                used[static_cast<std::size_t>(p[i])] = 1;
            int q_budget = max_len - 2 - static_cast<int>(p.size() - 1);
            PathSearch inner{g, used, dists.from(a), a, {}};
            bool got = inner.run(d, q_budget, 1, [&](const std::vector<VertexId>& q) {
                found.cycle.clear();
                found.cycle.push_back(a);
                found.cycle.insert(found.cycle.end(), p.begin(), p.end());   // b ... c
                found.cycle.insert(found.cycle.end(), q.begin(), q.end() - 1); // d ... (a dropped)
                found.length = static_cast<int>(found.cycle.size());
                return true;
            });
            for (std::size_t i = 1; i + 1 < p.size(); ++i)
                used[static_cast<std::size_t>(p[i])] = 0;
            return got;
        });
        if (ok)
            return found;
    }
    return std::nullopt;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("CYCLEWEAVE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(cap, &end, 10);
        if (end && *end == '\0' && v >= 1)
            hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
    }
    return std::max<std::size_t>(1, std::min(hw, jobs == 0 ? 1 : jobs));
}

// unrank pair index -> (i, j), i < j < m, lexicographic by i
std::pair<std::int64_t, std::int64_t> unrank_pair(std::int64_t idx, std::int64_t m) {
    std::int64_t lo = 0, hi = m - 1; // i in [0, m-1)
    auto before = [&](std::int64_t i) { return i * (2 * m - i - 1) / 2; };
    while (lo < hi) {
        std::int64_t mid = (lo + hi + 1) / 2;
        if (before(mid) <= idx)
            lo = mid;
        else
            hi = mid - 1;
    }
    std::int64_t i = lo;
    std::int64_t j = i + 1 + (idx - before(i));
    return {i, j};
}

} // namespace

EdgePair make_edge_pair(const Graph& g, Edge e, Edge f) {
    require_edge(g, e);
    require_edge(g, f);
    Edge ce{std::min(e.u, e.v), std::max(e.u, e.v)};
    Edge cf{std::min(f.u, f.v), std::max(f.u, f.v)};
    if (ce == cf)
        throw ValidationError("edge pair needs two distinct edges");
    EdgePair out{ce, cf, PairRelation::disjoint};
    if (ce.u == cf.u || ce.u == cf.v)
        out.relation = PairRelation::share_a;
    else if (ce.v == cf.u || ce.v == cf.v)
        out.relation = PairRelation::share_b;
    return out;
}

EdgePair make_edge_pair(const BipartiteGraph& gp, Edge e, Edge f) {
    auto orient = [&](Edge x) -> Edge {
        if (gp.side_of(x.u) == Side::b && gp.side_of(x.v) == Side::a)
            std::swap(x.u, x.v);
        if (gp.side_of(x.u) != Side::a || gp.side_of(x.v) != Side::b || !gp.has_edge(x.u, x.v))
            throw ValidationError("(" + std::to_string(x.u) + ", " + std::to_string(x.v) +
                                  ") is not a cross edge of the bipartite graph");
        return x;
    };
    Edge ce = orient(e), cf = orient(f);
    if (ce == cf)
        throw ValidationError("edge pair needs two distinct edges");
    EdgePair out{ce, cf, PairRelation::disjoint};
    if (ce.u == cf.u)
        out.relation = PairRelation::share_a;
    else if (ce.v == cf.v)
        out.relation = PairRelation::share_b;
    return out;
}

std::vector<std::string> witness_problems(const Graph& g, const CycleWitness& w) {
    std::vector<std::string> problems;
    const auto& c = w.cycle;
    if (c.size() < 3) {
        problems.push_back("cycle has fewer than 3 vertices");
        return problems;
    }
    if (w.length != static_cast<int>(c.size()))
        problems.push_back("length field disagrees with cycle size");
    std::set<VertexId> uniq(c.begin(), c.end());
    if (uniq.size() != c.size())
        problems.push_back("cycle repeats a vertex");
    for (std::size_t i = 0; i < c.size(); ++i) {
        VertexId u = c[i], v = c[(i + 1) % c.size()];
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)) {
            problems.push_back("consecutive vertices " + std::to_string(u) + ", " + std::to_string(v) +
                               " are not adjacent");
            break;
        }
    }
    auto on_cycle = [&](Edge e) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            VertexId u = c[i], v = c[(i + 1) % c.size()];
            if ((u == e.u && v == e.v) || (u == e.v && v == e.u))
                return true;
        }
        return false;
    };
    if (!on_cycle(w.pair.e))
        problems.push_back("first pair edge is not on the cycle");
    if (!on_cycle(w.pair.f))
        problems.push_back("second pair edge is not on the cycle");
    int limit = w.pair.relation == PairRelation::disjoint ? 8 : 6;
    if (static_cast<int>(c.size()) > limit)
        problems.push_back("cycle length " + std::to_string(c.size()) + " exceeds " +
                           std::to_string(limit));
    return problems;
}

std::optional<CycleWitness> cycle_through_edges(const Graph& g, Edge e, Edge f, int max_len) {
    if (max_len < 3)
        throw ValidationError("max_len must be at least 3");
    require_edge(g, e);
    require_edge(g, f);
    Edge ce{std::min(e.u, e.v), std::max(e.u, e.v)};
    Edge cf{std::min(f.u, f.v), std::max(f.u, f.v)};
    EdgePair pair;
    if (ce == cf)
        pair = EdgePair{ce, cf, PairRelation::share_a};
    else
        pair = make_edge_pair(g, e, f);
    BfsDistances dists(g);
    return search_cycle(g, pair, max_len, dists);
}

ConnectivityReport verify_strong_c8(const Graph& g, const PairSelection& sel, int max_cycle,
                                    bool collect_witnesses) {
    if (max_cycle < 3)
        throw ValidationError("max cycle length must be at least 3");
    auto edge_list = g.edges();
    const std::int64_t m = static_cast<std::int64_t>(edge_list.size());
    const std::int64_t all_pairs = m * (m - 1) / 2;

    // pairs=all stays implicit (unranked on the fly); samples are materialized
    std::vector<std::pair<std::int64_t, std::int64_t>> sampled;
    std::int64_t job_count = all_pairs;
    if (sel.kind == PairSelection::Kind::sample) {
        std::mt19937_64 rng(sel.seed);
        std::set<std::int64_t> seen;
        for (std::int64_t s = 0; s < sel.count && all_pairs > 0; ++s) {
            auto idx = static_cast<std::int64_t>(bounded_rand(rng, static_cast<std::uint64_t>(all_pairs)));
            if (seen.insert(idx).second)
                sampled.push_back(unrank_pair(idx, m));
        }
        job_count = static_cast<std::int64_t>(sampled.size());
    }

    ConnectivityReport report;
    report.exact = sel.kind == PairSelection::Kind::all;
    report.pairs_checked = job_count;
    if (collect_witnesses)
        report.witnesses.emplace();

    const std::size_t workers = worker_count(static_cast<std::size_t>(job_count));
    struct ChunkOut {
        std::vector<EdgePair> failures;
        std::vector<CycleWitness> witnesses;
    };
    std::vector<ChunkOut> outs(workers);

    auto run_chunk = [&](std::size_t wi) {
        BfsDistances dists(g);
        ChunkOut& out = outs[wi];
        for (std::int64_t t = static_cast<std::int64_t>(wi); t < job_count;
             t += static_cast<std::int64_t>(workers)) {
            auto [i, j] = sel.kind == PairSelection::Kind::all
                              ? unrank_pair(t, m)
                              : sampled[static_cast<std::size_t>(t)];
            Edge e{edge_list[static_cast<std::size_t>(i)].first, edge_list[static_cast<std::size_t>(i)].second};
            Edge f{edge_list[static_cast<std::size_t>(j)].first, edge_list[static_cast<std::size_t>(j)].second};
            EdgePair pair = make_edge_pair(g, e, f);
            int budget = pair.relation == PairRelation::disjoint ? max_cycle : max_cycle - 2;
            std::optional<CycleWitness> w;
            if (budget >= 3)
                w = search_cycle(g, pair, budget, dists);
            if (!w)
                out.failures.push_back(pair);
            else if (collect_witnesses)
                out.witnesses.push_back(std::move(*w));
        }
    };

    if (workers <= 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t wi = 0; wi < workers; ++wi)
            pool.emplace_back(run_chunk, wi);
        for (auto& th : pool)
            th.join();
    }

    // interleaved chunks: merge back in global pair order
    auto pair_key = [&](const EdgePair& p) {
        return std::tuple(p.e.u, p.e.v, p.f.u, p.f.v);
    };
    for (auto& out : outs) {
        report.failures.insert(report.failures.end(), out.failures.begin(), out.failures.end());
        if (collect_witnesses)
            report.witnesses->insert(report.witnesses->end(),
                                     std::make_move_iterator(out.witnesses.begin()),
                                     std::make_move_iterator(out.witnesses.end()));
    }
    std::sort(report.failures.begin(), report.failures.end(),
              [&](const EdgePair& x, const EdgePair& y) { return pair_key(x) < pair_key(y); });
    if (collect_witnesses)
        std::sort(report.witnesses->begin(), report.witnesses->end(),
                  [&](const CycleWitness& x, const CycleWitness& y) {
                      return pair_key(x.pair) < pair_key(y.pair);
                  });
    report.strongly_c8 = report.failures.empty();
    return report;
}

CertificateReport check_certificate(const BipartiteGraph& gp, const Rational& t1,
                                    const Rational& t2, const Rational& t3) {
    CertificateReport r;
    r.t1 = t1;
    r.t2 = t2;
    r.t3 = t3;
    r.measured_b_size = static_cast<std::int64_t>(gp.side_b().size());

    bool c1 = true;
    for (VertexId a : gp.side_a().ids) {
        std::int64_t d = gp.degree(a);
        if (r.measured_min_a_degree < 0 || d < r.measured_min_a_degree)
            r.measured_min_a_degree = d;
        if (c1 && Rational(d) < t1) {
            c1 = false;
            r.failure_reasons.push_back("C1: vertex " + std::to_string(a) + " has degree " +
                                        std::to_string(d) + " < t1 = " + t1.str());
        }
    }

    bool c2 = true;
    const auto& bs = gp.side_b().ids;
    for (VertexId v : bs) {
        std::int64_t cnt = 0;
        for (VertexId u : bs)
            if (u != v && Rational(gp.codegree(u, v)) < t3)
                ++cnt;
        r.measured_max_bad_partners = std::max(r.measured_max_bad_partners, cnt);
        if (c2 && !(Rational(cnt) < t2)) {
            c2 = false;
            r.failure_reasons.push_back("C2: vertex " + std::to_string(v) + " has " +
                                        std::to_string(cnt) + " low-codegree partners, not < t2 = " +
                                        t2.str());
        }
    }

    bool c3 = t3 >= Rational(5) && t1 - t2 >= Rational(4);
    if (!c3)
        r.failure_reasons.push_back("C3: margins need t3 >= 5 and t1 - t2 >= 4 (t1 = " + t1.str() +
                                    ", t2 = " + t2.str() + ", t3 = " + t3.str() + ")");
    bool c4 = Rational(r.measured_b_size) >= t2;
    if (!c4)
        r.failure_reasons.push_back("C4: |B'| = " + std::to_string(r.measured_b_size) +
                                    " < t2 = " + t2.str());

    r.holds = c1 && c2 && c3 && c4;
    return r;
}

namespace {

VertexId first_neighbor_excluding(const BipartiteGraph& gp, VertexId v,
                                  std::initializer_list<VertexId> excluded) {
    for (VertexId x : gp.neighbors(v)) {
        bool skip = false;
        for (VertexId e : excluded)
            if (x == e)
                skip = true;
        if (!skip)
            return x;
    }
    return -1;
}

// smallest neighbor of `from` outside `excluded` whose codegree with
// `anchor` is at least t3
VertexId first_high_codegree_neighbor(const BipartiteGraph& gp, VertexId from, VertexId anchor,
                                      std::initializer_list<VertexId> excluded, const Rational& t3) {
    for (VertexId x : gp.neighbors(from)) {
        bool skip = x == anchor;
        for (VertexId e : excluded)
            if (x == e)
                skip = true;
        if (skip)
            continue;
        if (Rational(gp.codegree(x, anchor)) >= t3)
            return x;
    }
    return -1;
}

VertexId first_common_neighbor_excluding(const BipartiteGraph& gp, VertexId x, VertexId y,
                                         std::initializer_list<VertexId> excluded) {
    for (VertexId z : gp.common_neighbors(x, y).ids) {
        bool skip = false;
        for (VertexId e : excluded)
            if (z == e)
                skip = true;
        if (!skip)
            return z;
    }
    return -1;
}

[[noreturn]] void selection_failed(const char* which) {
    throw SelectionExhausted(std::string("witness selection \"") + which +
                             "\" found no candidate; the certificate checker must be wrong");
}

} // namespace

CycleWitness build_witness(const BipartiteGraph& gp, const EdgePair& pair, const Rational& /*t2*/,
                           const Rational& t3) {
    CycleWitness w;
    w.pair = pair;
    const VertexId a = pair.e.u, b = pair.e.v;
    const VertexId a2 = pair.f.u, b2 = pair.f.v;

    switch (pair.relation) {
    case PairRelation::disjoint: {
        VertexId b1 = first_high_codegree_neighbor(gp, a, b2, {b}, t3);
        if (b1 < 0)
            selection_failed("b1");
        VertexId a1 = first_common_neighbor_excluding(gp, b1, b2, {a, a2});
        if (a1 < 0)
            selection_failed("a1");
        VertexId bx = first_high_codegree_neighbor(gp, a2, b, {b, b2, b1}, t3);
        if (bx < 0)
            selection_failed("b2");
        VertexId ax = first_common_neighbor_excluding(gp, bx, b, {a, a2, a1});
        if (ax < 0)
            selection_failed("a2");
        w.cycle = {a, b1, a1, b2, a2, bx, ax, b};
        break;
    }
    case PairRelation::share_a: {
        // edges (a, b), (a, b2)
        VertexId a1 = first_neighbor_excluding(gp, b, {a});
        if (a1 < 0)
            selection_failed("a1");
        VertexId b1 = first_high_codegree_neighbor(gp, a1, b2, {b}, t3);
        if (b1 < 0)
            selection_failed("b1");
        VertexId ax = first_common_neighbor_excluding(gp, b1, b2, {a, a1});
        if (ax < 0)
            selection_failed("a2");
        w.cycle = {a, b, a1, b1, ax, b2};
        break;
    }
    case PairRelation::share_b: {
        // edges (a, b), (a2, b)
        VertexId b1 = first_neighbor_excluding(gp, a, {b});
        if (b1 < 0)
            selection_failed("b1");
        VertexId bx = first_high_codegree_neighbor(gp, a2, b1, {b}, t3);
        if (bx < 0)
            selection_failed("b2");
        VertexId ax = first_common_neighbor_excluding(gp, b1, bx, {a, a2});
        if (ax < 0)
            selection_failed("a2");
        w.cycle = {a, b, a2, bx, ax, b1};
        break;
    }
    }
    w.length = static_cast<int>(w.cycle.size());
    return w;
}

std::int64_t count_paths_len3(const BipartiteGraph& gp, VertexId a, VertexId b) {
    if (gp.side_of(a) != Side::a)
        throw ValidationError("count_paths_len3: first vertex must lie on side A");
    if (gp.side_of(b) != Side::b)
        throw ValidationError("count_paths_len3: second vertex must lie on side B");
    std::int64_t total = 0;
    for (VertexId b1 : gp.neighbors(a)) {
        if (b1 == b)
            continue;
        VertexSet mid = gp.common_neighbors(b1, b);
        total += static_cast<std::int64_t>(mid.size());
        if (mid.contains(a))
            --total;
    }
    return total;
}

Path3Report verify_path3_bound(const BipartiteGraph& gp, const Rational& t2, const Rational& t3,
                               const std::optional<Rational>& paper_target) {
    Path3Report r;
    for (VertexId a : gp.side_a().ids) {
        Rational bound = (Rational(gp.degree(a)) - t2 - Rational(1)) * (t3 - Rational(1));
        for (VertexId b : gp.side_b().ids) {
            std::int64_t cnt = count_paths_len3(gp, a, b);
            ++r.pairs_checked;
            if (r.min_count < 0 || cnt < r.min_count) {
                r.min_count = cnt;
                r.min_a = a;
                r.min_b = b;
            }
            if (Rational(cnt) < bound) {
                r.ok = false;
                r.violations.push_back({a, b, cnt, bound});
            }
        }
    }
    if (paper_target && r.min_count >= 0)
        r.paper_target_ok = Rational(r.min_count) >= *paper_target;
    return r;
}

} // namespace cycleweave

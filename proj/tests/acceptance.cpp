// Acceptance suite: runs every acceptance criterion and prints one
// PASS/FAIL line per criterion. Exit code = number of failed criteria.
//
// Usage: acceptance --cli <path-to-cycleweave-binary>

#include "cycleweave/connect.hpp"
#include "cycleweave/edge_list.hpp"
#include "cycleweave/extract.hpp"
#include "cycleweave/gen.hpp"
#include "cycleweave/report.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cycleweave;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Criterion {
    int id;
    std::string label;
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.empty())
            detail = why;
    }
    void note(const std::string& text) {
        if (detail.empty())
            detail = text;
    }
};

int run_cmd(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    if (rc == -1)
        return -1;
    if (WIFEXITED(rc))
        return WEXITSTATUS(rc);
    return -2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CertifiedInstance {
    std::string name;
    BipartiteGraph gp;
    Rational t1, t2, t3;
};

ExtractConfig corpus_extract_config(std::int64_t n) {
    ExtractConfig cfg;
    cfg.thresholds =
        ThresholdSet::custom(n, Rational(10), Rational(12), Rational(5), Rational(2));
    return cfg;
}

// 64 complete-bipartite fixtures plus certified extraction outputs
std::vector<CertifiedInstance> build_certified_corpus(Criterion& c) {
    std::vector<CertifiedInstance> corpus;
    for (VertexId a = 5; a <= 12; ++a)
        for (VertexId b = 5; b <= 12; ++b) {
            CertifiedInstance inst{"K_{" + std::to_string(a) + "," + std::to_string(b) + "}",
                                   complete_bipartite(a, b), Rational(std::min(a, b)), Rational(1),
                                   Rational(5)};
            if (!check_certificate(inst.gp, inst.t1, inst.t2, inst.t3).holds) {
                c.fail(inst.name + " unexpectedly fails its certificate");
                continue;
            }
            corpus.push_back(std::move(inst));
        }

    int extracted = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Graph g = uniform_random(48, Rational(4, 5), seed);
        ExtractConfig cfg = corpus_extract_config(48);
        ExtractResult res = extract(g, cfg);
        Rational t1 = cfg.thresholds.t_codeg - Rational(res.trace.counts.pruned_from_nhw);
        Rational t2 = cfg.thresholds.t_bad_per_vertex;
        Rational t3 = cfg.thresholds.t_gamma_deg;
        if (check_certificate(res.g_prime, t1, t2, t3).holds) {
            corpus.push_back({"extract(n=48, p=4/5, seed=" + std::to_string(seed) + ")",
                              res.g_prime, t1, t2, t3});
            ++extracted;
        }
    }
    if (extracted == 0)
        c.fail("no extraction output certified; corpus lacks pipeline instances");
    return corpus;
}

// ------------------------------------------------------------ criteria

Criterion criterion_stage_invariants() {
    Criterion c{1, "stage invariants on 100 random + 10 clique instances"};
    auto t0 = clock_type::now();

    auto check_instance = [&](const Graph& g, const ExtractConfig& cfg, const std::string& name) {
        ExtractResult res;
        try {
            res = extract(g, cfg);
        } catch (const PipelineError& e) {
            c.fail(name + ": pipeline error " + pipeline_error_name(e.kind));
            return;
        }
        const PipelineTrace& tr = res.trace;
        const ThresholdSet& th = cfg.thresholds;

        const Graph& g1 = tr.g1.graph;
        for (VertexId v = 0; v < g1.vertex_count(); ++v)
            if (Rational(g1.degree(v)) < th.t_peel) {
                c.fail(name + ": G1 degree below t_peel");
                return;
            }
        if (Rational(tr.counts.e_g1) <
            Rational(tr.counts.e_input) - Rational(tr.counts.n_input) * th.t_peel) {
            c.fail(name + ": peel edge bound violated");
            return;
        }
        for (VertexId lv = 0; lv < g1.vertex_count(); ++lv) {
            VertexId orig = tr.g1.to_original[static_cast<std::size_t>(lv)];
            if (2 * static_cast<std::int64_t>(tr.h.degree(orig)) < g1.degree(lv)) {
                c.fail(name + ": H degree below half the G1 degree");
                return;
            }
        }
        if (2 * tr.counts.e_h < tr.counts.e_g1) {
            c.fail(name + ": e(H) below half of e(G1)");
            return;
        }
        // prune fixed point, rechecked through the public is_bad
        for (VertexId v : tr.b_prime.ids) {
            std::int64_t cnt = 0;
            for (VertexId u : tr.b_prime.ids)
                if (u != v && is_bad(tr.pivot, u, v, tr.h, tr.gamma, th.t_gamma_deg))
                    ++cnt;
            if (!(Rational(cnt) < th.t_bad_per_vertex)) {
                c.fail(name + ": B' fixed point violated");
                return;
            }
        }
    };

    int idx = 0;
    for (int i = 0; i < 100; ++i) {
        VertexId n = 20 + 20 * (i % 10);
        Rational p = i % 3 == 0 ? Rational(3, 10) : i % 3 == 1 ? Rational(1, 2) : Rational(4, 5);
        Graph g = uniform_random(n, p, 1000 + static_cast<std::uint64_t>(i));
        ExtractConfig cfg;
        cfg.thresholds = ThresholdSet::custom(n, Rational(1), Rational(2), Rational(1), Rational(3));
        check_instance(g, cfg, "random #" + std::to_string(idx++));
        if (!c.pass)
            return c;
    }
    for (int i = 0; i < 10; ++i) {
        VertexId n = 40 + 8 * static_cast<VertexId>(i);
        VertexId parts = 2 + static_cast<VertexId>(i % 4);
        Graph g = disjoint_cliques(n, parts);
        ExtractConfig cfg;
        cfg.thresholds = ThresholdSet::custom(n, Rational(2), Rational(1), Rational(1, 2), Rational(5));
        check_instance(g, cfg, "cliques #" + std::to_string(i));
        if (!c.pass)
            return c;
    }

    double secs = seconds_since(t0);
    if (secs >= 120.0)
        c.fail("exceeded the 120 s budget");
    std::ostringstream note;
    note << "110 instances in " << secs << " s";
    c.note(note.str());
    return c;
}

Criterion criterion_certificate_soundness(const std::vector<CertifiedInstance>& corpus) {
    Criterion c{2, "certified instances are strongly C8-connected (exhaustive verifier)"};
    if (corpus.size() < 50)
        c.fail("corpus has only " + std::to_string(corpus.size()) + " certified instances");
    std::int64_t pairs = 0;
    for (const auto& inst : corpus) {
        ConnectivityReport r = verify_strong_c8(inst.gp.to_graph(), PairSelection::all());
        pairs += r.pairs_checked;
        if (!r.strongly_c8) {
            c.fail(inst.name + ": " + std::to_string(r.failures.size()) + " failing pairs");
            return c;
        }
    }
    c.note(std::to_string(corpus.size()) + " instances, " + std::to_string(pairs) +
           " pairs, zero failures");
    return c;
}

Criterion criterion_witness_agreement(const std::vector<CertifiedInstance>& corpus) {
    Criterion c{3, "witness construction succeeds and validates on every edge pair"};
    std::int64_t built = 0;
    for (const auto& inst : corpus) {
        Graph plain = inst.gp.to_graph();
        auto edges = inst.gp.edges();
        for (std::size_t i = 0; i < edges.size() && c.pass; ++i)
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                EdgePair pair = make_edge_pair(inst.gp, {edges[i].first, edges[i].second},
                                               {edges[j].first, edges[j].second});
                CycleWitness w;
                try {
                    w = build_witness(inst.gp, pair, inst.t2, inst.t3);
                } catch (const SelectionExhausted& e) {
                    c.fail(inst.name + ": SelectionExhausted: " + e.what());
                    break;
                }
                auto problems = witness_problems(plain, w);
                if (!problems.empty()) {
                    c.fail(inst.name + ": invalid witness: " + problems.front());
                    break;
                }
                int limit = pair.relation == PairRelation::disjoint ? 8 : 6;
                if (w.length > limit) {
                    c.fail(inst.name + ": witness length over the bound");
                    break;
                }
                ++built;
            }
        if (!c.pass)
            return c;
    }
    c.note(std::to_string(built) + " witnesses built and validated");
    return c;
}

Criterion criterion_pivot_derandomization() {
    Criterion c{4, "exhaustive pivot equals the enumerated minimum and is at most the average"};
    int evaluated = 0;
    for (int i = 0; i < 50; ++i) {
        VertexId a = 8 + static_cast<VertexId>(i % 7);
        VertexId b = 8 + static_cast<VertexId>((i / 7) % 7);
        BipartiteGraph h = bipartite_random(a, b, Rational(3, 5), 5000 + static_cast<std::uint64_t>(i));
        if (h.side_a().empty() || h.edge_count() == 0)
            continue;
        ++evaluated;
        Rational t_gamma(1 + i % 3);
        Graph gamma = build_gamma(h, Rational(2));
        ExtractConfig cfg;
        cfg.thresholds = ThresholdSet::custom(h.universe(), Rational(1), Rational(2), t_gamma,
                                              Rational(10));
        PivotChoice pc = select_pivot(h, gamma, cfg);

        // independent enumeration through the public single-pair predicate
        const auto& bs = h.side_b().ids;
        std::int64_t best = INT64_MAX, sum = 0;
        VertexId best_w = -1;
        for (VertexId w : h.side_a().ids) {
            std::int64_t cnt = 0;
            for (std::size_t x = 0; x < bs.size(); ++x)
                for (std::size_t y = x + 1; y < bs.size(); ++y)
                    if (is_bad(w, bs[x], bs[y], h, gamma, t_gamma))
                        ++cnt;
            sum += cnt;
            if (cnt < best) {
                best = cnt;
                best_w = w;
            }
        }
        Rational avg = Rational(sum) / Rational((long long)h.side_a().size());
        if (pc.pivot != best_w || pc.bad_pairs != best) {
            c.fail("instance " + std::to_string(i) + ": pivot disagrees with enumeration");
            return c;
        }
        if (!(Rational(pc.bad_pairs) <= avg) || pc.average != avg) {
            c.fail("instance " + std::to_string(i) + ": average disagrees");
            return c;
        }
    }
    if (evaluated != 50)
        c.fail("only " + std::to_string(evaluated) + " of 50 instances were usable");
    c.note(std::to_string(evaluated) + " instances, exact agreement");
    return c;
}

Criterion criterion_path3_equivalence() {
    Criterion c{5, "path-3 closed form equals direct enumeration"};
    auto brute = [](const BipartiteGraph& gp, VertexId a, VertexId b) {
        std::int64_t total = 0;
        for (VertexId b1 : gp.neighbors(a))
            if (b1 != b)
                for (VertexId a1 : gp.neighbors(b1))
                    if (a1 != a && gp.has_edge(a1, b))
                        ++total;
        return total;
    };
    for (int i = 0; i < 30; ++i) {
        VertexId a = 4 + static_cast<VertexId>(i % 27);
        VertexId b = 4 + static_cast<VertexId>((i * 7) % 27);
        if (a + b > 60)
            b = 60 - a;
        BipartiteGraph gp = bipartite_random(a, b, Rational(1, 2), 9000 + static_cast<std::uint64_t>(i));
        for (VertexId x : gp.side_a().ids)
            for (VertexId y : gp.side_b().ids)
                if (count_paths_len3(gp, x, y) != brute(gp, x, y)) {
                    c.fail("mismatch on instance " + std::to_string(i));
                    return c;
                }
    }
    if (count_paths_len3(complete_bipartite(2, 2), 0, 2) != 1)
        c.fail("K22 adjacent pair should have exactly 1 path");
    if (count_paths_len3(complete_bipartite(3, 3), 0, 3) != 4)
        c.fail("K33 adjacent pair should have exactly 4 paths");
    c.note("30 instances plus the K22/K33 anchors");
    return c;
}

Criterion criterion_path3_lower_bound(const std::vector<CertifiedInstance>& corpus) {
    Criterion c{6, "generalized path-3 lower bound holds on every certified instance"};
    std::int64_t pairs = 0;
    for (const auto& inst : corpus) {
        Path3Report r = verify_path3_bound(inst.gp, inst.t2, inst.t3);
        pairs += r.pairs_checked;
        if (!r.ok) {
            c.fail(inst.name + ": " + std::to_string(r.violations.size()) + " violations");
            return c;
        }
    }
    c.note(std::to_string(pairs) + " (a, b) pairs, zero violations");
    return c;
}

Criterion criterion_tightness_structure() {
    Criterion c{7, "extraction on 4 disjoint cliques stays inside the pivot's clique"};
    Graph g = disjoint_cliques(256, 4);
    ExtractConfig cfg;
    cfg.thresholds =
        ThresholdSet::custom(256, Rational(7), Rational(1), Rational(1, 2), Rational(1000000));
    ExtractResult res = extract(g, cfg);
    if (res.trace.a_prime.empty()) {
        c.fail("A' came out empty");
        return c;
    }
    VertexId block = res.trace.pivot / 64;
    for (VertexId v : res.trace.a_prime.ids)
        if (v / 64 != block)
            c.fail("A' leaks outside the pivot's clique");
    for (VertexId v : res.trace.b_prime.ids)
        if (v / 64 != block)
            c.fail("B' leaks outside the pivot's clique");
    c.note("pivot clique " + std::to_string(block) + ", |A'| = " +
           std::to_string(res.trace.a_prime.size()) + ", |B'| = " +
           std::to_string(res.trace.b_prime.size()));
    return c;
}

Criterion criterion_paper_guard(const std::string& cli, const std::string& dir) {
    Criterion c{8, "paper-mode guards: precondition and edge-count errors"};
    try {
        ThresholdSet::paper(1000, Rational(2));
        c.fail("n = 1000, k = 2 should violate the paper precondition");
    } catch (const PipelineError& e) {
        if (e.kind != PipelineErrorKind::paper_mode_precondition)
            c.fail("wrong error kind for the paper precondition");
    }
    {
        const std::int64_t n = (1 << 20) + 1;
        ExtractConfig cfg;
        cfg.thresholds = ThresholdSet::paper(n, Rational(1));
        Graph sparse = Graph::from_edge_list(static_cast<VertexId>(n), {{0, 1}});
        try {
            extract(sparse, cfg);
            c.fail("sparse paper-mode input should raise NotEnoughEdges");
        } catch (const PipelineError& e) {
            if (e.kind != PipelineErrorKind::not_enough_edges)
                c.fail("wrong error kind for the edge-count guard");
        }
    }

    // same contract via the CLI
    std::string small = dir + "/guard_small.el";
    write_edge_list_file(small, uniform_random(10, Rational(1), 1));
    std::string err = dir + "/guard.err";
    if (run_cmd(cli + " extract -i " + small + " --mode paper --k 2/1 > /dev/null 2> " + err) != 4)
        c.fail("CLI paper guard should exit 4");
    if (slurp(err).find("PaperModePreconditionViolated") == std::string::npos)
        c.fail("CLI error message should cite the precondition");

    std::string big = dir + "/guard_big.el";
    {
        std::ofstream out(big);
        out << ((1 << 20) + 1) << " 1\n0 1\n";
    }
    if (run_cmd(cli + " extract -i " + big + " --mode paper --k 1/1 > /dev/null 2> " + err) != 4)
        c.fail("CLI edge-count guard should exit 4");
    if (slurp(err).find("NotEnoughEdges") == std::string::npos)
        c.fail("CLI error message should cite NotEnoughEdges");
    return c;
}

Criterion criterion_determinism(const std::string& cli, const std::string& dir) {
    Criterion c{9, "identical invocations produce byte-identical files"};
    auto in_dir = [&](const std::string& s) { return dir + "/" + s; };
    const std::string quiet = " > /dev/null 2> /dev/null";

    std::string gen = cli + " generate random --n 60 --p 1/2 --seed 31 -o " + in_dir("d.el") + quiet;
    if (run_cmd(gen) != 0)
        c.fail("generate failed");
    std::string el1 = slurp(in_dir("d.el")), meta1 = slurp(in_dir("d.el.meta.json"));
    if (run_cmd(gen) != 0)
        c.fail("generate rerun failed");
    if (el1.empty() || el1 != slurp(in_dir("d.el")) || meta1 != slurp(in_dir("d.el.meta.json")))
        c.fail("generate outputs differ between runs");

    std::string extract_cmd = cli + " extract -i " + in_dir("d.el") +
                              " --t-peel 2 --t-codeg 3 --t-gamma-deg 1 --t-bad 3 -o " +
                              in_dir("d_gp.el") + " --trace " + in_dir("d_tr.json") + " --report " +
                              in_dir("d_rep.json") + quiet;
    run_cmd(extract_cmd);
    std::string gp1 = slurp(in_dir("d_gp.el")), tr1 = slurp(in_dir("d_tr.json")),
                rep1 = slurp(in_dir("d_rep.json")), sides1 = slurp(in_dir("d_gp.el.sides.json"));
    run_cmd(extract_cmd);
    if (gp1.empty() || gp1 != slurp(in_dir("d_gp.el")))
        c.fail("G' files differ");
    if (tr1.empty() || tr1 != slurp(in_dir("d_tr.json")))
        c.fail("trace files differ");
    if (rep1.empty() || rep1 != slurp(in_dir("d_rep.json")))
        c.fail("report files differ");
    if (sides1.empty() || sides1 != slurp(in_dir("d_gp.el.sides.json")))
        c.fail("sides files differ");

    std::string verify_cmd = cli + " verify -i " + in_dir("d.el") +
                             " --pairs sample:300 --seed 17 --report " + in_dir("d_ver.json") + quiet;
    run_cmd(verify_cmd);
    std::string ver1 = slurp(in_dir("d_ver.json"));
    run_cmd(verify_cmd);
    if (ver1.empty() || ver1 != slurp(in_dir("d_ver.json")))
        c.fail("verify reports differ");
    return c;
}

Criterion criterion_performance() {
    Criterion c{10, "performance envelope: n = 512 extraction and 64-vertex verification"};
    auto t0 = clock_type::now();
    Graph g = uniform_random(512, Rational(1, 2), 77);
    ExtractConfig cfg;
    cfg.thresholds = ThresholdSet::custom(512, Rational(3), Rational(4), Rational(2), Rational(5));
    ExtractResult res = extract(g, cfg);
    double extract_secs = seconds_since(t0);
    if (extract_secs >= 60.0)
        c.fail("extraction took too long");

    BipartiteGraph k = complete_bipartite(32, 32);
    if (!check_certificate(k, Rational(32), Rational(1), Rational(5)).holds)
        c.fail("K_{32,32} should certify");
    t0 = clock_type::now();
    ConnectivityReport r = verify_strong_c8(k.to_graph(), PairSelection::all());
    double verify_secs = seconds_since(t0);
    if (!r.strongly_c8)
        c.fail("K_{32,32} should verify");
    if (verify_secs >= 60.0)
        c.fail("verification took too long");

    std::ostringstream note;
    note << "extract " << extract_secs << " s (e(G') = " << res.g_prime.edge_count()
         << "), verify " << verify_secs << " s over " << r.pairs_checked << " pairs";
    c.note(note.str());
    return c;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli")
            cli = argv[i + 1];
    if (cli.empty()) {
        std::cerr << "usage: acceptance --cli <cycleweave binary>\n";
        return 2;
    }
    const std::string dir = "acceptance_tmp";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    std::vector<Criterion> results;
    Criterion corpus_health{2, ""};
    std::vector<CertifiedInstance> corpus = build_certified_corpus(corpus_health);

    results.push_back(criterion_stage_invariants());
    {
        Criterion c2 = criterion_certificate_soundness(corpus);
        if (!corpus_health.pass) {
            c2.pass = false;
            c2.detail = corpus_health.detail;
        }
        results.push_back(c2);
    }
    results.push_back(criterion_witness_agreement(corpus));
    results.push_back(criterion_pivot_derandomization());
    results.push_back(criterion_path3_equivalence());
    results.push_back(criterion_path3_lower_bound(corpus));
    results.push_back(criterion_tightness_structure());
    results.push_back(criterion_paper_guard(cli, dir));
    results.push_back(criterion_determinism(cli, dir));
    results.push_back(criterion_performance());

    int failed = 0;
    for (const auto& c : results) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.label;
        if (!c.detail.empty())
            std::cout << " [" << c.detail << "]";
        std::cout << "\n";
        if (!c.pass)
            ++failed;
    }
    return failed;
}

// cycleweave: extract a dense subgraph in which every pair of edges lies
// on a short cycle, verify that property exhaustively, check the
// sufficiency certificate, and generate test instances.
//
// Exit codes: 0 ok, 3 certificate failed, 4 pipeline precondition,
// 5 verification failed, 64 usage/input error.

#include "cycleweave/connect.hpp"
#include "cycleweave/edge_list.hpp"
#include "cycleweave/extract.hpp"
#include "cycleweave/gen.hpp"
#include "cycleweave/report.hpp"
#include "cycleweave/thresholds.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace cycleweave;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_certificate = 3;
constexpr int exit_precondition = 4;
constexpr int exit_verification = 5;
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::int64_t parse_count_flag(const std::string& text, const char* flag) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size())
            throw UsageError(std::string(flag) + ": trailing characters in \"" + text + "\"");
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": \"" + text + "\" is not an integer");
    }
}

double parse_double_flag(const std::string& text, const char* flag) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size())
            throw UsageError(std::string(flag) + ": trailing characters in \"" + text + "\"");
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": \"" + text + "\" is not a number");
    }
}

void emit_report(const std::optional<std::string>& path, const json& j) {
    if (path)
        write_json_file(*path, j);
    else
        std::cout << dump_canonical(j);
}

json sides_json(const BipartiteGraph& gp) {
    return json{{"side_a", to_json(gp.side_a())}, {"side_b", to_json(gp.side_b())}};
}

void write_sides_file(const std::string& path, const BipartiteGraph& gp) {
    write_json_file(path, sides_json(gp));
}

BipartiteGraph load_bipartite(const std::string& graph_path, const std::string& sides_path) {
    auto read = read_edge_list_file(graph_path);
    if (read.warning)
        std::cerr << "warning: " << *read.warning << "\n";
    std::ifstream in(sides_path);
    if (!in)
        throw ValidationError("cannot open " + sides_path);
    json j = json::parse(in);
    auto to_set = [](const json& arr) {
        std::vector<VertexId> v;
        for (const auto& x : arr)
            v.push_back(x.get<VertexId>());
        return VertexSet::from_unsorted(std::move(v));
    };
    // side labels are semantic (the certificate clauses are side-specific),
    // so the declared roles are kept verbatim; any non-cross edge is an error
    return BipartiteGraph::from_cross_edges(read.graph.vertex_count(), to_set(j.at("side_a")),
                                            to_set(j.at("side_b")), read.graph.edges());
}

// ------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family;
    std::int64_t n = 0, parts = 0, side_a = 0, side_b = 0;
    std::optional<double> beta;
    std::string p_text = "1/2";
    std::uint64_t seed = 0;
    std::string output;
};

int run_generate(const GenerateArgs& args) {
    json meta{{"family", args.family}, {"seed", args.seed}};
    Graph g;
    std::optional<BipartiteGraph> gp;

    if (args.family == "cliques") {
        auto parts = static_cast<VertexId>(args.parts);
        if (args.beta) {
            parts = parts_from_beta(static_cast<VertexId>(args.n), *args.beta);
            meta["beta"] = *args.beta; // parts = round(n^beta)
        }
        g = disjoint_cliques(static_cast<VertexId>(args.n), parts);
        meta["n"] = args.n;
        meta["parts"] = parts;
    } else if (args.family == "random") {
        Rational p = parse_rational_flag(args.p_text, "--p");
        if (p < Rational(0) || p > Rational(1))
            throw UsageError("--p must lie in [0, 1]");
        g = uniform_random(static_cast<VertexId>(args.n), p, args.seed);
        meta["n"] = args.n;
        meta["p"] = p.str();
    } else if (args.family == "complete-bipartite") {
        gp = complete_bipartite(static_cast<VertexId>(args.side_a), static_cast<VertexId>(args.side_b));
        g = gp->to_graph();
        meta["a"] = args.side_a;
        meta["b"] = args.side_b;
    } else if (args.family == "bipartite-random") {
        Rational p = parse_rational_flag(args.p_text, "--p");
        if (p < Rational(0) || p > Rational(1))
            throw UsageError("--p must lie in [0, 1]");
        gp = bipartite_random(static_cast<VertexId>(args.side_a), static_cast<VertexId>(args.side_b),
                              p, args.seed);
        g = gp->to_graph();
        meta["a"] = args.side_a;
        meta["b"] = args.side_b;
        meta["p"] = p.str();
    } else {
        throw UsageError("unknown family " + args.family);
    }

    write_edge_list_file(args.output, g);
    write_json_file(args.output + ".meta.json", meta);
    if (gp)
        write_sides_file(args.output + ".sides.json", *gp);
    return exit_ok;
}

// ------------------------------------------------------------- extract

struct ExtractArgs {
    std::string input;
    std::optional<std::string> output;
    std::optional<std::string> report_path;
    std::optional<std::string> trace_path;
    std::optional<std::string> config_path;
    std::optional<std::string> mode;
    std::optional<std::string> k_text, beta_text;
    std::optional<std::string> t_peel, t_codeg, t_gamma_deg, t_bad;
    std::optional<std::string> cert_t1;
    std::string pivot = "exhaustive";
    std::uint64_t seed = 0;
    bool run_verify = false;
    bool timings = false;
};

ExtractConfig assemble_config(const ExtractArgs& args, std::int64_t n) {
    ExtractConfigText file;
    if (args.config_path) {
        std::ifstream in(*args.config_path);
        if (!in)
            throw ValidationError("cannot open " + *args.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        file = parse_extract_config(buf.str());
    }

    std::string mode = args.mode.value_or(file.mode.value_or("custom"));
    std::optional<Rational> k;
    if (args.k_text)
        k = parse_rational_flag(*args.k_text, "--k");
    else if (file.k)
        k = *file.k;
    std::optional<double> beta;
    if (args.beta_text)
        beta = parse_double_flag(*args.beta_text, "--beta");
    else if (file.beta)
        beta = *file.beta;

    auto need = [&](const std::optional<std::string>& flag, const std::optional<Rational>& from_file,
                    const char* name) {
        if (flag)
            return parse_rational_flag(*flag, name);
        if (from_file)
            return *from_file;
        throw UsageError(std::string("custom mode needs ") + name);
    };

    ExtractConfig cfg;
    if (mode == "paper") {
        if (k)
            cfg.thresholds = ThresholdSet::paper(n, *k);
        else if (beta)
            cfg.thresholds = ThresholdSet::paper_from_beta(n, *beta);
        else
            throw UsageError("paper mode needs --k or --beta");
    } else if (mode == "custom") {
        cfg.thresholds = ThresholdSet::custom(
            n, need(args.t_peel, file.t_peel, "--t-peel"), need(args.t_codeg, file.t_codeg, "--t-codeg"),
            need(args.t_gamma_deg, file.t_gamma_deg, "--t-gamma-deg"),
            need(args.t_bad, file.t_bad, "--t-bad"), k);
    } else {
        throw UsageError("--mode must be paper or custom");
    }

    std::string pivot = args.pivot;
    if (pivot == "exhaustive" && file.pivot)
        pivot = *file.pivot;
    if (pivot == "exhaustive") {
        cfg.pivot_strategy = PivotStrategy::exhaustive;
    } else if (pivot.rfind("sampled:", 0) == 0) {
        cfg.pivot_strategy = PivotStrategy::sampled;
        cfg.sample_count = parse_count_flag(pivot.substr(8), "--pivot");
        if (cfg.sample_count < 1)
            throw UsageError("--pivot sampled:N needs N >= 1");
    } else {
        throw UsageError("--pivot must be exhaustive or sampled:N");
    }
    cfg.seed = args.seed != 0 ? args.seed : file.seed.value_or(0);
    return cfg;
}

int run_extract(const ExtractArgs& args) {
    auto read = read_edge_list_file(args.input);
    if (read.warning)
        std::cerr << "warning: " << *read.warning << "\n";
    const Graph& g = read.graph;

    json report{{"command", "extract"},
                {"input", {{"path", args.input},
                           {"vertices", g.vertex_count()},
                           {"edges", g.edge_count()}}}};

    ExtractConfig cfg;
    ExtractResult result;
    try {
        cfg = assemble_config(args, g.vertex_count());
        result = extract(g, cfg);
    } catch (const PipelineError& e) {
        report["error"] = {{"kind", pipeline_error_name(e.kind)}, {"message", e.what()}};
        report["exit_status"] = exit_precondition;
        emit_report(args.report_path, report);
        std::cerr << pipeline_error_name(e.kind) << ": " << e.what() << "\n";
        return exit_precondition;
    }

    const PipelineTrace& trace = result.trace;
    StageAuditReport audit = audit_trace(trace, cfg.thresholds);

    // certificate thresholds: t2 and t3 are the pipeline's own cut-offs; t1
    // defaults to the guaranteed min A'-degree (paper formula in paper mode)
    Rational t1;
    if (args.cert_t1) {
        t1 = parse_rational_flag(*args.cert_t1, "--cert-t1");
    } else if (cfg.thresholds.mode == ThresholdMode::paper) {
        Rational k2 = *cfg.thresholds.k * *cfg.thresholds.k;
        t1 = Rational(cfg.thresholds.n) / (Rational(1 << 6) * k2);
    } else {
        t1 = cfg.thresholds.t_codeg - Rational(trace.counts.pruned_from_nhw);
    }
    CertificateReport cert =
        check_certificate(result.g_prime, t1, cfg.thresholds.t_bad_per_vertex,
                          cfg.thresholds.t_gamma_deg);

    report["config"] = {{"thresholds", to_json(cfg.thresholds)},
                        {"pivot", args.pivot},
                        {"seed", cfg.seed},
                        {"cert_t1", to_json(t1)}};
    json trace_doc = to_json(trace, args.timings);
    report["stages"] = trace_doc["stages"];
    if (args.timings)
        report["timings_ms"] = trace_doc["timings_ms"];
    report["audit"] = to_json(audit);
    report["certificate"] = to_json(cert);

    if (cert.holds) {
        Path3Report p3 = verify_path3_bound(result.g_prime, cfg.thresholds.t_bad_per_vertex,
                                            cfg.thresholds.t_gamma_deg);
        report["path3"] = to_json(p3);
    }
    if (args.run_verify) {
        ConnectivityReport conn = verify_strong_c8(result.g_prime.to_graph(), PairSelection::all());
        report["connectivity"] = to_json(conn);
    }

    if (args.output) {
        write_edge_list_file(*args.output, result.g_prime.to_graph());
        write_sides_file(*args.output + ".sides.json", result.g_prime);
        report["outputs"] = {{"g_prime", *args.output},
                             {"sides", *args.output + ".sides.json"}};
    }
    if (args.trace_path)
        write_json_file(*args.trace_path, to_json(trace, args.timings));

    int status = cert.holds ? exit_ok : exit_certificate;
    report["exit_status"] = status;
    emit_report(args.report_path, report);
    if (!cert.holds)
        for (const auto& reason : cert.failure_reasons)
            std::cerr << "certificate: " << reason << "\n";
    return status;
}

// ------------------------------------------------------------- verify

struct VerifyArgs {
    std::string input;
    int max_cycle = 8;
    std::string pairs = "all";
    std::uint64_t seed = 0;
    bool witnesses = false;
    std::optional<std::string> report_path;
};

int run_verify(const VerifyArgs& args) {
    auto read = read_edge_list_file(args.input);
    if (read.warning)
        std::cerr << "warning: " << *read.warning << "\n";

    PairSelection sel = PairSelection::all();
    if (args.pairs != "all") {
        if (args.pairs.rfind("sample:", 0) != 0)
            throw UsageError("--pairs must be all or sample:N");
        std::int64_t count = parse_count_flag(args.pairs.substr(7), "--pairs");
        if (count < 1)
            throw UsageError("--pairs sample:N needs N >= 1");
        sel = PairSelection::sample(count, args.seed);
    }
    if (args.max_cycle < 3)
        throw UsageError("--max-cycle must be at least 3");

    ConnectivityReport conn =
        verify_strong_c8(read.graph, sel, args.max_cycle, args.witnesses);
    json report{{"command", "verify"},
                {"input", {{"path", args.input},
                           {"vertices", read.graph.vertex_count()},
                           {"edges", read.graph.edge_count()}}},
                {"max_cycle", args.max_cycle},
                {"pairs", args.pairs},
                {"seed", args.seed},
                {"connectivity", to_json(conn)},
                {"exit_status", conn.strongly_c8 ? exit_ok : exit_verification}};
    emit_report(args.report_path, report);
    return conn.strongly_c8 ? exit_ok : exit_verification;
}

// ------------------------------------------------------------- audit

struct AuditArgs {
    std::string input;
    std::optional<std::string> sides;
    std::string t1, t2, t3;
    bool run_verify = false;
    std::optional<std::string> report_path;
};

int run_audit(const AuditArgs& args) {
    std::string sides = args.sides.value_or(args.input + ".sides.json");
    BipartiteGraph gp = load_bipartite(args.input, sides);
    Rational t1 = parse_rational_flag(args.t1, "--t1");
    Rational t2 = parse_rational_flag(args.t2, "--t2");
    Rational t3 = parse_rational_flag(args.t3, "--t3");

    CertificateReport cert = check_certificate(gp, t1, t2, t3);
    json report{{"command", "audit"},
                {"input", {{"path", args.input}, {"sides", sides}}},
                {"certificate", to_json(cert)}};
    if (cert.holds)
        report["path3"] = to_json(verify_path3_bound(gp, t2, t3));
    if (args.run_verify)
        report["connectivity"] = to_json(verify_strong_c8(gp.to_graph(), PairSelection::all()));
    int status = cert.holds ? exit_ok : exit_certificate;
    report["exit_status"] = status;
    emit_report(args.report_path, report);
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense subgraphs with every edge pair on a short cycle"};
    app.require_subcommand(1);

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "write a test instance");
    gen_cmd->add_option("family", gen_args.family,
                        "cliques | random | bipartite-random | complete-bipartite")
        ->required();
    gen_cmd->add_option("--n", gen_args.n, "vertex count (cliques, random)");
    gen_cmd->add_option("--parts", gen_args.parts, "number of cliques");
    gen_cmd->add_option("--beta",
                        [&](const CLI::results_t& r) {
                            gen_args.beta = parse_double_flag(r[0], "--beta");
                            return true;
                        },
                        "derive parts = round(n^beta) instead of --parts");
    gen_cmd->add_option("--a", gen_args.side_a, "side A size (bipartite families)");
    gen_cmd->add_option("--b", gen_args.side_b, "side B size (bipartite families)");
    gen_cmd->add_option("--p", gen_args.p_text, "edge probability as NUM/DEN");
    gen_cmd->add_option("--seed", gen_args.seed, "rng seed");
    gen_cmd->add_option("-o,--output", gen_args.output, "edge-list output path")->required();

    ExtractArgs ex_args;
    auto* ex_cmd = app.add_subcommand("extract", "run the extraction pipeline");
    ex_cmd->add_option("-i,--input", ex_args.input, "edge-list input")->required();
    ex_cmd->add_option("-o,--output", [&](const CLI::results_t& r) { ex_args.output = r[0]; return true; },
                       "G' edge-list output (plus .sides.json)");
    ex_cmd->add_option("--report", [&](const CLI::results_t& r) { ex_args.report_path = r[0]; return true; },
                       "report JSON path (default stdout)");
    ex_cmd->add_option("--trace", [&](const CLI::results_t& r) { ex_args.trace_path = r[0]; return true; },
                       "trace JSON path");
    ex_cmd->add_option("--config", [&](const CLI::results_t& r) { ex_args.config_path = r[0]; return true; },
                       "key = value config file; explicit flags win");
    ex_cmd->add_option("--mode", [&](const CLI::results_t& r) { ex_args.mode = r[0]; return true; },
                       "paper | custom (default custom)");
    ex_cmd->add_option("--k", [&](const CLI::results_t& r) { ex_args.k_text = r[0]; return true; },
                       "k as NUM/DEN (paper mode)");
    ex_cmd->add_option("--beta", [&](const CLI::results_t& r) { ex_args.beta_text = r[0]; return true; },
                       "derive k = round(n^beta * 2^20) / 2^20");
    ex_cmd->add_option("--t-peel", [&](const CLI::results_t& r) { ex_args.t_peel = r[0]; return true; },
                       "peel threshold NUM/DEN");
    ex_cmd->add_option("--t-codeg", [&](const CLI::results_t& r) { ex_args.t_codeg = r[0]; return true; },
                       "codegree threshold NUM/DEN");
    ex_cmd->add_option("--t-gamma-deg",
                       [&](const CLI::results_t& r) { ex_args.t_gamma_deg = r[0]; return true; },
                       "gamma-degree threshold NUM/DEN");
    ex_cmd->add_option("--t-bad", [&](const CLI::results_t& r) { ex_args.t_bad = r[0]; return true; },
                       "bad-partner threshold NUM/DEN");
    ex_cmd->add_option("--cert-t1", [&](const CLI::results_t& r) { ex_args.cert_t1 = r[0]; return true; },
                       "certificate min-degree threshold (default: derived)");
    ex_cmd->add_option("--pivot", ex_args.pivot, "exhaustive | sampled:N");
    ex_cmd->add_option("--seed", ex_args.seed, "seed for sampled pivot");
    ex_cmd->add_flag("--verify", ex_args.run_verify, "also run the exhaustive verifier on G'");
    ex_cmd->add_flag("--timings", ex_args.timings, "include stage timings (breaks byte determinism)");

    VerifyArgs ver_args;
    auto* ver_cmd = app.add_subcommand("verify", "exhaustively verify strong C8-connectivity");
    ver_cmd->add_option("-i,--input", ver_args.input, "edge-list input")->required();
    ver_cmd->add_option("--max-cycle", ver_args.max_cycle, "cycle budget for disjoint pairs (default 8)");
    ver_cmd->add_option("--pairs", ver_args.pairs, "all | sample:N");
    ver_cmd->add_option("--seed", ver_args.seed, "seed for pair sampling");
    ver_cmd->add_flag("--witnesses", ver_args.witnesses, "include found cycles in the report");
    ver_cmd->add_option("--report", [&](const CLI::results_t& r) { ver_args.report_path = r[0]; return true; },
                        "report JSON path (default stdout)");

    AuditArgs aud_args;
    auto* aud_cmd = app.add_subcommand("audit", "check the certificate on a bipartite instance");
    aud_cmd->add_option("-i,--input", aud_args.input, "edge-list input")->required();
    aud_cmd->add_option("--sides", [&](const CLI::results_t& r) { aud_args.sides = r[0]; return true; },
                        "sides JSON (default <input>.sides.json)");
    aud_cmd->add_option("--t1", aud_args.t1, "min A-degree threshold")->required();
    aud_cmd->add_option("--t2", aud_args.t2, "bad-partner count threshold")->required();
    aud_cmd->add_option("--t3", aud_args.t3, "codegree threshold")->required();
    aud_cmd->add_flag("--verify", aud_args.run_verify, "also run the exhaustive verifier");
    aud_cmd->add_option("--report", [&](const CLI::results_t& r) { aud_args.report_path = r[0]; return true; },
                        "report JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const UsageError& e) { // thrown inside option callbacks
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (gen_cmd->parsed())
            return run_generate(gen_args);
        if (ex_cmd->parsed())
            return run_extract(ex_args);
        if (ver_cmd->parsed())
            return run_verify(ver_args);
        if (aud_cmd->parsed())
            return run_audit(aud_args);
        std::cerr << "no subcommand\n";
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PipelineError& e) {
        std::cerr << pipeline_error_name(e.kind) << ": " << e.what() << "\n";
        return exit_precondition;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

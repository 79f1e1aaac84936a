#include "cycleweave/report.hpp"

#include <fstream>

namespace cycleweave {

using nlohmann::json;

namespace {

json int128_json(Int128 v) {
    if (v >= (Int128)INT64_MIN && v <= (Int128)INT64_MAX)
        return static_cast<std::int64_t>(v);
    return int128_to_string(v);
}

} // namespace

json to_json(const Rational& r) {
    return json{{"num", int128_json(r.num())}, {"den", int128_json(r.den())}};
}

json to_json(const ThresholdSet& t) {
    json j{
        {"mode", t.mode == ThresholdMode::paper ? "paper" : "custom"},
        {"n", t.n},
        {"t_peel", to_json(t.t_peel)},
        {"t_codeg", to_json(t.t_codeg)},
        {"t_gamma_deg", to_json(t.t_gamma_deg)},
        {"t_bad_per_vertex", to_json(t.t_bad_per_vertex)},
    };
    if (t.k)
        j["k"] = to_json(*t.k);
    if (t.beta)
        j["beta_rounded_to_k"] = *t.beta;
    return j;
}

json to_json(const VertexSet& s) { return json(s.ids); }

json to_json(const PipelineTrace& trace, bool include_timings) {
    json stages{
        {"input", {{"vertices", trace.counts.n_input}, {"edges", trace.counts.e_input}}},
        {"g1",
         {{"vertices", trace.counts.n_g1},
          {"edges", trace.counts.e_g1},
          {"vertex_set", json(trace.g1.to_original)}}},
        {"h",
         {{"side_a", to_json(trace.h.side_a())},
          {"side_b", to_json(trace.h.side_b())},
          {"edges", trace.counts.e_h}}},
        {"gamma", {{"vertices", trace.counts.a_size}, {"edges", trace.counts.gamma_edges}}},
        {"pivot",
         {{"vertex", trace.pivot},
          {"bad_pairs", trace.pivot_bad_pairs},
          {"bad_pair_avg", to_json(trace.bad_pair_avg)},
          {"candidates_evaluated", trace.pivot_candidates_evaluated},
          {"neighborhood", to_json(trace.nh_w)}}},
        {"prune",
         {{"a_prime", to_json(trace.a_prime)},
          {"b_prime", to_json(trace.b_prime)},
          {"removed_from_pivot_neighborhood", trace.counts.pruned_from_nhw}}},
        {"g_prime",
         {{"side_a", to_json(trace.g_prime.side_a())},
          {"side_b", to_json(trace.g_prime.side_b())},
          {"edges", trace.counts.e_gprime}}},
    };
    json j{{"thresholds", to_json(trace.thresholds)}, {"stages", stages}};
    if (include_timings) {
        json t = json::object();
        for (const auto& st : trace.timings)
            t[st.stage] = st.ms;
        j["timings_ms"] = t;
    }
    return j;
}

json to_json(const StageAuditReport& r) {
    json j{
        {"peel",
         {{"min_degree_ok", r.peel_min_degree_ok},
          {"g1_min_degree", r.g1_min_degree},
          {"edge_bound_ok", r.peel_edge_bound_ok},
          {"edge_lower_bound", to_json(r.peel_edge_lower_bound)}}},
        {"bipartition",
         {{"degree_ok", r.bipartition_degree_ok}, {"edge_ok", r.bipartition_edge_ok}}},
        {"eq1",
         {{"ok", r.eq1_ok},
          {"bound", to_json(r.eq1_bound)},
          {"removed_from_pivot_neighborhood", r.pruned_from_nhw}}},
        {"prune_fixed_point_ok", r.prune_fixed_point_ok},
        {"a_prime_matches_gamma_ok", r.a_prime_matches_gamma_ok},
        {"g_prime",
         {{"min_a_degree", r.gprime_min_a_degree},
          {"max_bad_partners", r.gprime_max_bad_partners},
          {"edges", r.gprime_edges}}},
        {"all_ok", r.all_ok()},
    };
    if (r.paper_min_a_degree_ok)
        j["paper"] = json{{"min_a_degree_ok", *r.paper_min_a_degree_ok},
                          {"bad_partner_ok", *r.paper_bad_partner_ok},
                          {"edge_count_ok", *r.paper_edge_count_ok}};
    return j;
}

json to_json(const CertificateReport& r) {
    return json{
        {"holds", r.holds},
        {"t1", to_json(r.t1)},
        {"t2", to_json(r.t2)},
        {"t3", to_json(r.t3)},
        {"measured_min_a_degree", r.measured_min_a_degree},
        {"measured_max_bad_partners", r.measured_max_bad_partners},
        {"measured_b_size", r.measured_b_size},
        {"failure_reasons", json(r.failure_reasons)},
    };
}

json to_json(const EdgePair& p) {
    return json{{"e", json::array({p.e.u, p.e.v})},
                {"f", json::array({p.f.u, p.f.v})},
                {"relation", pair_relation_name(p.relation)}};
}

json to_json(const CycleWitness& w) {
    return json{{"pair", to_json(w.pair)}, {"cycle", json(w.cycle)}, {"length", w.length}};
}

json to_json(const ConnectivityReport& r) {
    json failures = json::array();
    for (const auto& p : r.failures)
        failures.push_back(to_json(p));
    json j{{"strongly_c8", r.strongly_c8},
           {"exact", r.exact},
           {"pairs_checked", r.pairs_checked},
           {"failures", failures}};
    if (r.witnesses) {
        json ws = json::array();
        for (const auto& w : *r.witnesses)
            ws.push_back(to_json(w));
        j["witnesses"] = ws;
    }
    return j;
}

json to_json(const Path3Report& r) {
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back(json{
            {"a", v.a}, {"b", v.b}, {"count", v.count}, {"bound", to_json(v.bound)}});
    json j{{"ok", r.ok},
           {"pairs_checked", r.pairs_checked},
           {"min_count", r.min_count},
           {"min_pair", json::array({r.min_a, r.min_b})},
           {"violations", violations}};
    if (r.paper_target_ok)
        j["paper_target_ok"] = *r.paper_target_ok;
    return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << dump_canonical(j);
}

} // namespace cycleweave

#pragma once

#include "cycleweave/connect.hpp"
#include "cycleweave/extract.hpp"

#include <json.hpp>

#include <string>

namespace cycleweave {

// Rationals serialize as {"num": ..., "den": ...}; values beyond int64
// fall back to decimal strings. Keys are emitted sorted, so identical
// inputs give byte-identical documents.
nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const ThresholdSet& t);
nlohmann::json to_json(const VertexSet& s);
nlohmann::json to_json(const PipelineTrace& trace, bool include_timings = false);
nlohmann::json to_json(const StageAuditReport& r);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const EdgePair& p);
nlohmann::json to_json(const CycleWitness& w);
nlohmann::json to_json(const ConnectivityReport& r);
nlohmann::json to_json(const Path3Report& r);

std::string dump_canonical(const nlohmann::json& j); // 2-space indent + trailing newline
void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace cycleweave

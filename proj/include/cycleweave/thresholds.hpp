#pragma once

#include "cycleweave/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace cycleweave {

enum class PipelineErrorKind {
    empty_input,
    empty_after_peel,
    not_enough_edges,
    paper_mode_precondition,
    invalid_thresholds,
};

struct PipelineError : std::runtime_error {
    PipelineErrorKind kind;
    PipelineError(PipelineErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

const char* pipeline_error_name(PipelineErrorKind k);

enum class ThresholdMode { paper, custom };

/// The four cut-offs that drive the pipeline, all exact rationals.
/// Paper mode derives them from (n, k):
///   t_peel      = n / (2k)        minimum degree enforced by peeling
///   t_codeg     = n / (32 k^2)    codegree required for a gamma edge
///   t_gamma_deg = n / (2^16 k^5)  gamma-degree at or below which a common
///                                 neighbor counts as bad
///   t_bad       = n / (2^7 k^2)   bad-partner count that evicts a B vertex
/// and additionally requires n > 2^20 k^5.
struct ThresholdSet {
    ThresholdMode mode = ThresholdMode::custom;
    std::int64_t n = 0;
    std::optional<Rational> k;
    Rational t_peel;
    Rational t_codeg;
    Rational t_gamma_deg;
    Rational t_bad_per_vertex;

    // set when k was derived from beta: k = round(n^beta * 2^20) / 2^20
    std::optional<double> beta;

    static ThresholdSet paper(std::int64_t n, Rational k);
    static ThresholdSet paper_from_beta(std::int64_t n, double beta);
    static ThresholdSet custom(std::int64_t n, Rational t_peel, Rational t_codeg,
                               Rational t_gamma_deg, Rational t_bad_per_vertex,
                               std::optional<Rational> k = std::nullopt);

    void validate() const; // throws PipelineError(invalid_thresholds / paper_mode_precondition)
};

/// k = round(n^beta * 2^20) / 2^20, the only place floating point touches
/// a threshold; the rounding is recorded via ThresholdSet::beta.
Rational k_from_beta(std::int64_t n, double beta);

enum class PivotStrategy { exhaustive, sampled };

struct ExtractConfig {
    ThresholdSet thresholds;
    PivotStrategy pivot_strategy = PivotStrategy::exhaustive;
    std::int64_t sample_count = 0;     // sampled strategy only, >= 1
    std::uint64_t seed = 0;            // sampled strategy only
    bool record_trace = true;
};

/// "key = value" text config ('#' comments). Keys: mode, k, beta, t_peel,
/// t_codeg, t_gamma_deg, t_bad, pivot (exhaustive | sampled:N), seed.
/// Threshold construction needs n, which comes from the input graph, so
/// this returns the raw fields for the caller to assemble.
struct ExtractConfigText {
    std::optional<std::string> mode;
    std::optional<Rational> k;
    std::optional<double> beta;
    std::optional<Rational> t_peel, t_codeg, t_gamma_deg, t_bad;
    std::optional<std::string> pivot;
    std::optional<std::uint64_t> seed;
};

ExtractConfigText parse_extract_config(const std::string& text);

} // namespace cycleweave

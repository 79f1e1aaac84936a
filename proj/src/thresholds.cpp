#include "cycleweave/thresholds.hpp"

#include "cycleweave/graph.hpp"

#include <cmath>
#include <sstream>

namespace cycleweave {

const char* pipeline_error_name(PipelineErrorKind k) {
    switch (k) {
    case PipelineErrorKind::empty_input: return "EmptyInput";
    case PipelineErrorKind::empty_after_peel: return "EmptyAfterPeel";
    case PipelineErrorKind::not_enough_edges: return "NotEnoughEdges";
    case PipelineErrorKind::paper_mode_precondition: return "PaperModePreconditionViolated";
    case PipelineErrorKind::invalid_thresholds: return "InvalidThresholds";
    }
    return "UnknownPipelineError";
}

namespace {

PipelineError invalid(const std::string& msg) {
    return PipelineError(PipelineErrorKind::invalid_thresholds, msg);
}

} // namespace

ThresholdSet ThresholdSet::paper(std::int64_t n, Rational k) {
    if (n <= 0)
        throw invalid("paper mode needs n >= 1");
    if (!(k > Rational(0)))
        throw invalid("paper mode needs k > 0");
    Rational rn(n);
    Rational k2, k5;
    try {
        k2 = k * k;
        k5 = k2 * k2 * k;
    } catch (const std::overflow_error&) {
        throw invalid("k too large for exact paper-mode thresholds");
    }
    // n > 2^20 k^5
    if (!(rn > Rational(1 << 20) * k5))
        throw PipelineError(PipelineErrorKind::paper_mode_precondition,
                            "paper mode requires n > 2^20 k^5 (n=" + std::to_string(n) +
                                ", k=" + k.str() + ")");
    ThresholdSet t;
    t.mode = ThresholdMode::paper;
    t.n = n;
    t.k = k;
    t.t_peel = rn / (Rational(2) * k);
    t.t_codeg = rn / (Rational(32) * k2);
    t.t_gamma_deg = rn / (Rational((std::int64_t)1 << 16) * k5);
    t.t_bad_per_vertex = rn / (Rational(1 << 7) * k2);
    return t;
}

ThresholdSet ThresholdSet::paper_from_beta(std::int64_t n, double beta) {
    ThresholdSet t = paper(n, k_from_beta(n, beta));
    t.beta = beta;
    return t;
}

ThresholdSet ThresholdSet::custom(std::int64_t n, Rational t_peel, Rational t_codeg,
                                  Rational t_gamma_deg, Rational t_bad_per_vertex,
                                  std::optional<Rational> k) {
    ThresholdSet t;
    t.mode = ThresholdMode::custom;
    t.n = n;
    t.k = std::move(k);
    t.t_peel = t_peel;
    t.t_codeg = t_codeg;
    t.t_gamma_deg = t_gamma_deg;
    t.t_bad_per_vertex = t_bad_per_vertex;
    t.validate();
    return t;
}

void ThresholdSet::validate() const {
    Rational zero(0);
    if (!(t_peel > zero) || !(t_codeg > zero) || !(t_gamma_deg > zero) || !(t_bad_per_vertex > zero))
        throw invalid("all thresholds must be positive");
    if (n < 0)
        throw invalid("negative n");
    if (mode == ThresholdMode::paper && !k)
        throw invalid("paper mode without k");
}

Rational k_from_beta(std::int64_t n, double beta) {
    if (n <= 0)
        throw invalid("beta derivation needs n >= 1");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw invalid("beta must lie in (0, 1)");
    long double scaled = std::pow(static_cast<long double>(n), static_cast<long double>(beta)) *
                         static_cast<long double>(1 << 20);
    if (!(scaled > 0.0L) || scaled > 9.0e18L)
        throw invalid("n^beta out of range for exact rounding");
    auto num = static_cast<std::int64_t>(std::llroundl(scaled));
    if (num <= 0)
        throw invalid("rounded k is not positive");
    return Rational(num, (std::int64_t)1 << 20);
}

ExtractConfigText parse_extract_config(const std::string& text) {
    ExtractConfigText out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("config line " + std::to_string(line_no) + ": empty key or value");
        try {
            if (key == "mode")
                out.mode = value;
            else if (key == "k")
                out.k = Rational::parse(value);
            else if (key == "beta")
                out.beta = std::stod(value);
            else if (key == "t_peel")
                out.t_peel = Rational::parse(value);
            else if (key == "t_codeg")
                out.t_codeg = Rational::parse(value);
            else if (key == "t_gamma_deg")
                out.t_gamma_deg = Rational::parse(value);
            else if (key == "t_bad")
                out.t_bad = Rational::parse(value);
            else if (key == "pivot")
                out.pivot = value;
            else if (key == "seed")
                out.seed = std::stoull(value);
            else
                throw ValidationError("config line " + std::to_string(line_no) + ": unknown key \"" +
                                      key + "\"");
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception& e) {
            throw ValidationError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

} // namespace cycleweave

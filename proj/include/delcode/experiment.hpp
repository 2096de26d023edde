#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delcode/error.hpp"

namespace delcode::sim {

enum class Scheme {
    marker,   // marker boundaries + BMA per block
    rll_bma,  // run-length-limited code, BMA over the whole trace
};

std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

struct ExperimentConfig {
    Scheme scheme = Scheme::marker;
    std::size_t n = 1000;
    double k = 10;
    double alpha = 1;
    int delta = 3;
    int t = 4;
    std::size_t runs = 1000;
    std::uint64_t seed = 1;
    /// Replaces k / n^alpha on the channel only (code geometry still uses k).
    std::optional<double> p_override;
    bool zero_del_shortcut = false;
};

struct RunOutcome {
    double norm_edit = 0;       // Lev(x, x_hat) / n
    bool exact = false;         // x_hat == x
    bool boundary_fail = false; // some trace got a wrong count for some block
};

struct ExperimentResult {
    ExperimentConfig cfg;
    double mean_norm_edit = 0;
    double stderr_norm_edit = 0;
    double p_e = 0;
    double boundary_fail_rate = 0;
    double wall_ms = 0;
};

/// Throws ParameterError when the code or channel parameters are invalid.
void validate(const ExperimentConfig& cfg);

/// Run r draws its codeword from substream(substream(seed, r), 0) and its
/// traces from substream(substream(seed, r), 1). Trace i therefore does not
/// depend on t, and results do not depend on scheduling.
RunOutcome run_once(const ExperimentConfig& cfg, std::size_t r);

/// Runs distributed over OpenMP threads (jobs <= 0: runtime default).
/// Outcomes are summed in run order, so every thread count gives the same
/// numbers.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 0);

/// Single-threaded reference for run_experiment.
ExperimentResult run_experiment_serial(const ExperimentConfig& cfg);

/// Expands a JSON config into concrete configurations.
///
///   scheme | schemes, n, k, alpha, delta, t, runs, seed: scalar or list
///   p_override, zero_del_shortcut: optional scalars
///   series: optional list of objects whose fields override the top level
///
/// Lists expand as a Cartesian product in the order scheme, n, k, alpha,
/// delta, t; series are expanded one after another.
std::vector<ExperimentConfig> parse_config(std::string_view json_text);

inline constexpr std::string_view kCsvHeader =
    "scheme,n,k,alpha,delta,t,runs,seed,mean_norm_edit,stderr,p_e,boundary_fail_rate,wall_ms";

/// Header plus one row per result, numbers with 6 significant digits.
std::string to_csv(std::span<const ExperimentResult> results);

/// Throws IoError when the file cannot be written.
void write_csv(std::span<const ExperimentResult> results, const std::string& path);

}  // namespace delcode::sim

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frlab/recovery.hpp"

namespace frlab {

inline constexpr const char* kCodeVersion = "frlab 0.1.0";

/// Runs task(i) for i in [0, n) on up to `jobs` threads. Each index is
/// processed exactly once; callers write results by index.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& task);

/// Adds complex Gaussian noise rescaled to ||e||_2 = norm (no-op when norm is 0).
void add_sample_noise(ComplexVector& y, double norm, std::uint64_t seed);

struct PhaseConfig {
    std::string system = "dft:64";
    std::vector<std::string> signals{"sparse:3"};
    std::vector<double> p_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t trials = 50;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    double epsilon = 0.0;  // sigma = epsilon ||f||_2
    double noise = 0.0;    // Gaussian sample noise with ||e||_2 = noise * sigma, in [0, 1]
    std::optional<double> success_threshold;  // default max(11.47 epsilon, 1e-5)
    RecoveryConfig solver;

    double threshold() const;
    void validate() const;
};

struct TrialRecord {
    std::size_t grid_index = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string signal;
    double p = 0.0;
    std::size_t samples = 0;
    double fr = 0.0;
    double relative_error = 0.0;
    bool converged = false;
    int iterations = 0;
    bool success = false;
};

struct GridSummary {
    std::size_t grid_index = 0;
    std::string system;
    std::size_t M = 0;
    std::string signal;
    double p = 0.0;
    std::size_t trials = 0;
    double success_rate = 0.0;
    double mean_relative_error = 0.0;
    double median_relative_error = 0.0;
    double q90_relative_error = 0.0;
    double mean_fr = 0.0;
};

struct PhaseReport {
    PhaseConfig config;
    std::vector<TrialRecord> trials;  // grid-major, then trial order
    std::vector<GridSummary> summaries;
    std::string code_version = kCodeVersion;
};

/// Grid index g enumerates (signal, p) with p fastest. Trial seeds are
/// derive_seed(config.seed, g, t); results do not depend on `jobs`.
PhaseReport run_phase_sweep(const PhaseConfig& config);

/// Aggregates recomputed from per-trial records.
std::vector<GridSummary> summarize(const PhaseConfig& config, const std::vector<TrialRecord>& trials);

nlohmann::json to_json(const PhaseConfig& config);
nlohmann::json to_json(const PhaseReport& report);
/// Header: system,M,signal,r,p,trials,success_rate,mean_relative_error
std::string to_csv(const PhaseReport& report);

/// Quantile by linear interpolation on the sorted sample (q in [0,1]).
double quantile(std::vector<double> values, double q);

}  // namespace frlab

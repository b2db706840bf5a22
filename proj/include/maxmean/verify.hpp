#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maxmean/bound_check.hpp"
#include "maxmean/continuous.hpp"
#include "maxmean/discrete.hpp"

namespace maxmean {

// O(N*n) literal transcription of the windowed p-mean definition: direct
// summation per window. Oracle for windowed_pnorm; identical contract.
WindowedNormResult brute_force_windowed_pnorm(const SampleSeries& x, const WindowSpec& spec);

// Dense-grid lower bound for interval_pnorm: max of (1/T) integral over t on
// a uniform grid spanning [b_0 - T, b_K], each window integrated directly.
// Always <= the sweep value; the gap is at most max|c_k|^p * grid_step / T.
double grid_oracle_interval_pnorm(const StepFunction& f, double p, double T,
                                  double grid_step);

struct SizeBounds {
    std::size_t max_len = 200;        // discrete series length
    double max_abs_value = 10.0;      // discrete value range
    std::size_t max_pieces = 50;      // step-function piece count
    double max_abs_value_cont = 5.0;  // step-function value range
};

struct Incident {
    std::string fingerprint;  // enough to reproduce the input from (seed, trial)
    BoundCheck check;
};

struct CampaignReport {
    std::string check;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<Incident> failures;  // violations of theorem-backed inequalities
    std::vector<Incident> findings;  // expected counterexamples (naive monotonicity)
    std::map<std::string, double> stats;
    double elapsed_seconds = 0.0;
};

// Registered check names accepted by run_campaign.
const std::vector<std::string>& campaign_names();

// Deterministic given (which, trials, seed): each trial derives its own
// sub-seed, so sharding cannot change results.
CampaignReport run_campaign(const std::string& which, std::size_t trials, std::uint64_t seed,
                            const SizeBounds& bounds = {});

// Line-oriented JSON: one object per failure/finding plus a summary object.
std::string to_jsonl(const CampaignReport& report);

}  // namespace maxmean

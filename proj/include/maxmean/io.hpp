#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxmean/continuous.hpp"
#include "maxmean/discrete.hpp"

namespace maxmean {

// CSV with a header containing "t" plus named value columns, strictly
// increasing t. If timestamps are uniform within 1e-6 relative, dt comes from
// the data; otherwise resample must be given and values are linearly
// interpolated onto a uniform grid spanning [t_first, t_last].
SampleSeries ingest_series(const std::string& path, const std::string& column,
                           std::optional<double> resample = std::nullopt);

// Forward differences divided by dt: rates[i] = (x[i+1] - x[i]) / dt.
// For p = 1 the window-n mean of the rates over [j, j+n-1] equals the average
// rate (x[j+n] - x[j]) / (n*dt).
SampleSeries derive_rates(const SampleSeries& x);

std::string series_to_csv(const SampleSeries& x, const std::string& column = "value");

// Step functions serialize as "breakpoint,value": K+1 rows, the last row's
// value field empty.
std::string step_function_to_csv(const StepFunction& f);
StepFunction step_function_from_csv(const std::string& text);

// Whole-file atomic write: temp file in the same directory, then rename.
void atomic_write_file(const std::string& path, const std::string& content);

struct MonitorLimit {
    double window_seconds = 0.0;
    double limit = 0.0;
    std::string label;
};

struct MonitorConfig {
    double p = 1.0;
    std::vector<MonitorLimit> limits;
};

MonitorConfig parse_monitor_config(const std::string& json_text);
MonitorConfig load_monitor_config(const std::string& path);

// round(window/dt) with a hard error when the rounding deviates by more than
// 1% relative; silent rounding would change the mathematics being claimed.
std::size_t duration_to_samples(double window_seconds, double dt);

std::string read_file(const std::string& path);

}  // namespace maxmean

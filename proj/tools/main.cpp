// maxmean: maximal windowed p-means of time series at multiple scales.
//
// Subcommands: analyze (scale ladder), monitor (multi-scale limits),
// counterexample (impulse/bump trains), verify (randomized campaigns).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxmean/continuous.hpp"
#include "maxmean/discrete.hpp"
#include "maxmean/io.hpp"
#include "maxmean/verify.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        maxmean::atomic_write_file(out_path, content);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct AnalyzeArgs {
    std::string input, column = "value", format = "json", out, plot;
    double p = 1.0;
    bool rates = false;
    std::vector<std::size_t> windows;
    std::vector<double> durations;
    std::optional<double> resample;
};

int run_analyze(const AnalyzeArgs& a) {
    maxmean::SampleSeries x = maxmean::ingest_series(a.input, a.column, a.resample);
    if (a.rates) x = maxmean::derive_rates(x);
    std::vector<std::size_t> windows = a.windows;
    for (double d : a.durations) windows.push_back(maxmean::duration_to_samples(d, x.dt));
    if (windows.empty())
        maxmean::fail(maxmean::ErrorCode::EmptyLadder, "give --windows and/or --durations");

    maxmean::ScaleReport report = maxmean::scale_ladder(x, a.p, windows);
    report.source = a.input;

    std::string body;
    if (a.format == "csv") {
        std::string csv = "window,duration,value,value_pow_p,arg_start,violates_naive_monotonicity\n";
        for (const auto& r : report.rows)
            csv += std::to_string(r.window) + "," + fmt(r.duration) + "," + fmt(r.value) + "," +
                   fmt(r.value_pow_p) + "," + std::to_string(r.arg_start) + "," +
                   (r.violates_naive_monotonicity ? "1" : "0") + "\n";
        body = csv;
    } else {
        json rows = json::array();
        for (const auto& r : report.rows)
            rows.push_back({{"window", r.window},
                            {"duration", r.duration},
                            {"value", r.value},
                            {"value_pow_p", r.value_pow_p},
                            {"arg_start", r.arg_start},
                            {"arg_time", static_cast<double>(r.arg_start) * x.dt},
                            {"violates_naive_monotonicity", r.violates_naive_monotonicity}});
        body = json{{"source", report.source},
                    {"column", a.column},
                    {"p", report.p},
                    {"dt", x.dt},
                    {"rows", rows}}
                   .dump(2) +
               "\n";
    }
    emit(a.out, body);

    if (!a.plot.empty()) {
        std::string plot = "window,value\n";
        for (const auto& r : report.rows)
            plot += std::to_string(r.window) + "," + fmt(r.value) + "\n";
        maxmean::atomic_write_file(a.plot, plot);
    }
    return 0;
}

struct MonitorArgs {
    std::string input, column = "value", config, out;
    bool rates = false;
    std::optional<double> resample;
};

int run_monitor(const MonitorArgs& a) {
    maxmean::SampleSeries x = maxmean::ingest_series(a.input, a.column, a.resample);
    if (a.rates) x = maxmean::derive_rates(x);
    const maxmean::MonitorConfig cfg = maxmean::load_monitor_config(a.config);

    bool any_violation = false;
    json results = json::array();
    for (const auto& lim : cfg.limits) {
        const std::size_t n = maxmean::duration_to_samples(lim.window_seconds, x.dt);
        const maxmean::WindowedNormResult r =
            maxmean::windowed_pnorm(x, maxmean::WindowSpec{cfg.p, n});
        const bool violated = r.value > lim.limit;
        any_violation = any_violation || violated;
        results.push_back({{"label", lim.label},
                           {"window_seconds", lim.window_seconds},
                           {"window_samples", n},
                           {"limit", lim.limit},
                           {"value", r.value},
                           {"violated", violated},
                           {"witness_time", static_cast<double>(r.arg_start) * x.dt},
                           {"witness_start", r.arg_start}});
    }
    emit(a.out, json{{"source", a.input},
                     {"column", a.column},
                     {"p", cfg.p},
                     {"dt", x.dt},
                     {"any_violation", any_violation},
                     {"results", results}}
                    .dump(2) +
                "\n");
    return any_violation ? 1 : 0;
}

struct CounterexampleArgs {
    bool discrete = false, continuous = false;
    std::size_t n = 3, m = 4, length = 0;
    double T = 1.0, S = 2.5, p = 1.0;
    std::string out;
};

int run_counterexample(const CounterexampleArgs& a) {
    if (a.discrete == a.continuous)
        maxmean::fail(maxmean::ErrorCode::ParseError, "choose exactly one of --discrete/--continuous");

    if (a.discrete) {
        if (a.n < 2 || a.m <= a.n || a.m % a.n == 0)
            maxmean::fail(maxmean::ErrorCode::NotACounterexampleCase,
                          "need n >= 2 and m > n with n no factor of m");
        const std::size_t ones = a.m / a.n + 1;
        const std::size_t L = a.length ? a.length : a.m + 2 * a.n;
        if (L < a.m)
            maxmean::fail(maxmean::ErrorCode::LengthTooShort, "length must be at least m");
        const maxmean::SampleSeries x = maxmean::impulse_train(a.n, L);
        const double at_n = maxmean::windowed_pnorm(x, {a.p, a.n}).value_pow_p;
        const double at_m = maxmean::windowed_pnorm(x, {a.p, a.m}).value_pow_p;
        emit("", json{{"mode", "discrete"},
                      {"n", a.n},
                      {"m", a.m},
                      {"p", a.p},
                      {"length", L},
                      {"norm_pow_p_at_n", at_n},
                      {"norm_pow_p_at_m", at_m},
                      {"predicted_at_n", 1.0 / static_cast<double>(a.n)},
                      {"predicted_at_m", static_cast<double>(ones) / static_cast<double>(a.m)},
                      {"note", "larger window, larger max mean"}}
                     .dump(2) +
                 "\n");
        if (!a.out.empty()) maxmean::atomic_write_file(a.out, maxmean::series_to_csv(x));
        return 0;
    }

    const maxmean::BumpTrain bt = maxmean::bump_train(a.T, a.S, a.p);
    const double at_T = maxmean::interval_pnorm(bt.f, a.p, a.T).value_pow_p;
    const double at_S = maxmean::interval_pnorm(bt.f, a.p, a.S).value_pow_p;
    emit("", json{{"mode", "continuous"},
                  {"T", a.T},
                  {"S", a.S},
                  {"p", a.p},
                  {"d", bt.d},
                  {"epsilon", bt.epsilon},
                  {"norm_pow_p_at_T", at_T},
                  {"norm_pow_p_at_S", at_S},
                  {"predicted_at_T", 1.0 / a.T},
                  {"predicted_at_S", static_cast<double>(bt.d + 1) / a.S},
                  {"note", "larger interval, larger max mean"}}
                 .dump(2) +
             "\n");
    if (!a.out.empty()) maxmean::atomic_write_file(a.out, maxmean::step_function_to_csv(bt.f));
    return 0;
}

struct VerifyArgs {
    std::string check, out;
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
};

int run_verify(const VerifyArgs& a) {
    const maxmean::CampaignReport report = maxmean::run_campaign(a.check, a.trials, a.seed);
    emit(a.out, maxmean::to_jsonl(report));
    return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal windowed p-means of time series at multiple scales"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    double an_resample = 0.0;
    auto* analyze = app.add_subcommand("analyze", "tabulate maximal p-means over a window ladder");
    analyze->add_option("--input", an.input, "input CSV with a 't' column")->required();
    analyze->add_option("--column", an.column, "value column name");
    analyze->add_option("--p", an.p, "exponent p > 0");
    analyze->add_option("--windows", an.windows, "window sizes in samples")->delimiter(',');
    analyze->add_option("--durations", an.durations, "window sizes in seconds")->delimiter(',');
    auto* an_rs = analyze->add_option("--resample", an_resample, "resample spacing in seconds");
    analyze->add_flag("--rates", an.rates,
                      "treat the column as cumulative and analyze its forward-difference rates");
    analyze->add_option("--format", an.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    analyze->add_option("--out", an.out, "write the report to a file");
    analyze->add_option("--plot", an.plot, "write two-column (window,value) CSV");

    MonitorArgs mo;
    double mo_resample = 0.0;
    auto* monitor = app.add_subcommand("monitor", "check maximal p-means against limits");
    monitor->add_option("--input", mo.input, "input CSV with a 't' column")->required();
    monitor->add_option("--column", mo.column, "value column name");
    monitor->add_option("--config", mo.config, "MonitorConfig JSON file")->required();
    auto* mo_rs = monitor->add_option("--resample", mo_resample, "resample spacing in seconds");
    monitor->add_flag("--rates", mo.rates,
                      "treat the column as cumulative and monitor its forward-difference rates");
    monitor->add_option("--out", mo.out, "write the report to a file");

    CounterexampleArgs ce;
    auto* cex = app.add_subcommand("counterexample",
                                   "emit an input whose maximal mean grows with the scale");
    cex->add_flag("--discrete", ce.discrete, "impulse-train counterexample");
    cex->add_flag("--continuous", ce.continuous, "bump-train counterexample");
    cex->add_option("--n", ce.n, "smaller window (samples)");
    cex->add_option("--m", ce.m, "larger window (samples), n no factor of m");
    cex->add_option("--T", ce.T, "smaller interval length");
    cex->add_option("--S", ce.S, "larger interval length, T no factor of S");
    cex->add_option("--p", ce.p, "exponent p > 0");
    cex->add_option("--length", ce.length, "series length (discrete mode; default m+2n)");
    cex->add_option("--out", ce.out, "write the series/step-function CSV to a file");

    VerifyArgs ve;
    auto* verify = app.add_subcommand("verify", "run a randomized verification campaign");
    std::string known;
    for (const auto& name : maxmean::campaign_names())
        known += (known.empty() ? "" : ", ") + name;
    verify->add_option("--check", ve.check, "one of: " + known)->required();
    verify->add_option("--trials", ve.trials, "number of random trials");
    verify->add_option("--seed", ve.seed, "RNG seed");
    verify->add_option("--out", ve.out, "write the JSONL report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (an_rs->count()) an.resample = an_resample;
        if (mo_rs->count()) mo.resample = mo_resample;
        if (app.got_subcommand(analyze)) return run_analyze(an);
        if (app.got_subcommand(monitor)) return run_monitor(mo);
        if (app.got_subcommand(cex)) return run_counterexample(ce);
        if (app.got_subcommand(verify)) return run_verify(ve);
    } catch (const maxmean::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

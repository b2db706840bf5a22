#include "maxmean/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maxmean {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        fail(ErrorCode::ParseError, "bad " + what + " value '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split_lines(const std::string& text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line(text.data() + start, i - start);
            if (!trim(line).empty()) lines.push_back(line);
            start = i + 1;
        }
    }
    return lines;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::ParseError, "cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) fail(ErrorCode::ParseError, "write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(ErrorCode::ParseError, "cannot rename '" + tmp + "' to '" + path + "'");
}

SampleSeries ingest_series(const std::string& path, const std::string& column,
                           std::optional<double> resample) {
    const std::string text = read_file(path);
    const auto lines = split_lines(text);
    if (lines.size() < 2)
        fail(ErrorCode::ParseError, "need a header and at least 2 samples in '" + path + "'");

    const auto header = split_fields(lines[0]);
    std::size_t t_col = header.size(), v_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t") t_col = i;
        if (header[i] == std::string_view(column)) v_col = i;
    }
    if (t_col == header.size())
        fail(ErrorCode::ParseError, "no 't' column in '" + path + "'");
    if (v_col == header.size())
        fail(ErrorCode::ParseError, "no '" + column + "' column in '" + path + "'");

    std::vector<double> t, v;
    t.reserve(lines.size() - 1);
    v.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        if (fields.size() <= std::max(t_col, v_col))
            fail(ErrorCode::ParseError, "row " + std::to_string(r) + " has too few fields");
        t.push_back(parse_double(fields[t_col], "t"));
        v.push_back(parse_double(fields[v_col], column));
    }
    if (t.size() < 2) fail(ErrorCode::ParseError, "need at least 2 samples to establish dt");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1]))
            fail(ErrorCode::NonMonotoneTime, "t must be strictly increasing (row " +
                                                 std::to_string(i + 2) + ")");

    const double span = t.back() - t.front();
    const double dt = span / static_cast<double>(t.size() - 1);
    bool uniform = true;
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (std::fabs((t[i + 1] - t[i]) - dt) > 1e-6 * dt) uniform = false;

    if (!resample) {
        if (!uniform)
            fail(ErrorCode::IrregularSamplingWithoutResample,
                 "timestamps in '" + path + "' are not uniform; supply a resample spacing");
        return SampleSeries{std::move(v), dt};
    }
    const double step = *resample;
    if (!std::isfinite(step) || step <= 0.0)
        fail(ErrorCode::ParseError, "resample spacing must be positive");

    const std::size_t count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
    SampleSeries out;
    out.dt = step;
    out.values.reserve(count);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        double tk = t.front() + static_cast<double>(k) * step;
        tk = std::min(tk, t.back());
        while (seg + 2 < t.size() && t[seg + 1] < tk) ++seg;
        const double w = (tk - t[seg]) / (t[seg + 1] - t[seg]);
        out.values.push_back(v[seg] + w * (v[seg + 1] - v[seg]));
    }
    return out;
}

SampleSeries derive_rates(const SampleSeries& x) {
    validate(x);
    if (x.size() < 2) fail(ErrorCode::TooShort, "need at least 2 samples to derive rates");
    SampleSeries rates;
    rates.dt = x.dt;
    rates.values.resize(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        rates.values[i] = (x.values[i + 1] - x.values[i]) / x.dt;
    return rates;
}

std::string series_to_csv(const SampleSeries& x, const std::string& column) {
    std::ostringstream os;
    os << "t," << column << "\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << fmt(static_cast<double>(i) * x.dt) << "," << fmt(x.values[i]) << "\n";
    return os.str();
}

std::string step_function_to_csv(const StepFunction& f) {
    std::ostringstream os;
    os << "breakpoint,value\n";
    for (std::size_t k = 0; k < f.pieces(); ++k)
        os << fmt(f.breakpoints()[k]) << "," << fmt(f.values()[k]) << "\n";
    os << fmt(f.breakpoints().back()) << ",\n";
    return os.str();
}

StepFunction step_function_from_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.size() < 3 || split_fields(lines[0]) != split_fields("breakpoint,value"))
        fail(ErrorCode::ParseError, "expected 'breakpoint,value' rows");
    std::vector<double> bp, vs;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        if (fields.empty()) fail(ErrorCode::ParseError, "empty step-function row");
        bp.push_back(parse_double(fields[0], "breakpoint"));
        const bool last = r + 1 == lines.size();
        if (!last) {
            if (fields.size() < 2) fail(ErrorCode::ParseError, "missing value field");
            vs.push_back(parse_double(fields[1], "value"));
        } else if (fields.size() >= 2 && !fields[1].empty()) {
            fail(ErrorCode::ParseError, "last row must leave the value field empty");
        }
    }
    return StepFunction(std::move(bp), std::move(vs));
}

MonitorConfig parse_monitor_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("monitor config: ") + e.what());
    }
    MonitorConfig cfg;
    try {
        cfg.p = j.at("p").get<double>();
        for (const auto& item : j.at("limits")) {
            MonitorLimit lim;
            lim.window_seconds = item.at("window").get<double>();
            lim.limit = item.at("limit").get<double>();
            lim.label = item.value("label", "");
            cfg.limits.push_back(std::move(lim));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("monitor config: ") + e.what());
    }
    if (!(cfg.p > 0.0)) fail(ErrorCode::ParseError, "monitor config: p must be positive");
    if (cfg.limits.empty()) fail(ErrorCode::ParseError, "monitor config: no limits given");
    for (const auto& lim : cfg.limits) {
        if (!(lim.window_seconds > 0.0))
            fail(ErrorCode::ParseError, "monitor config: windows must be positive");
        if (!(lim.limit >= 0.0))
            fail(ErrorCode::ParseError, "monitor config: limits must be nonnegative");
    }
    for (std::size_t i = 0; i < cfg.limits.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.limits.size(); ++k)
            if (cfg.limits[i].window_seconds == cfg.limits[k].window_seconds)
                fail(ErrorCode::ParseError, "monitor config: windows must be distinct");
    return cfg;
}

MonitorConfig load_monitor_config(const std::string& path) {
    return parse_monitor_config(read_file(path));
}

std::size_t duration_to_samples(double window_seconds, double dt) {
    if (!(window_seconds > 0.0) || !std::isfinite(window_seconds))
        fail(ErrorCode::InvalidWindowDuration, "window duration must be positive");
    const double exact = window_seconds / dt;
    const long long rounded = std::llround(exact);
    if (rounded < 1)
        fail(ErrorCode::InvalidWindowDuration,
             "window of " + fmt(window_seconds) + "s is shorter than half a sample");
    const double achieved = static_cast<double>(rounded) * dt;
    if (std::fabs(achieved - window_seconds) > 0.01 * window_seconds)
        fail(ErrorCode::InvalidWindowDuration,
             "window of " + fmt(window_seconds) + "s is not within 1% of a whole number of samples (dt=" +
                 fmt(dt) + ")");
    return static_cast<std::size_t>(rounded);
}

}  // namespace maxmean

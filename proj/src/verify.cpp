#include "maxmean/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "maxmean/pmean.hpp"

namespace maxmean {
namespace {

// ---------------------------------------------------------------------------
// Deterministic per-trial randomness (splitmix64)
// ---------------------------------------------------------------------------

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return mix64(state_ += 0x9E3779B97F4A7C15ull); }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    // inclusive range
    std::size_t range(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
    double pick(std::initializer_list<double> xs) {
        return *(xs.begin() + range(0, xs.size() - 1));
    }

private:
    std::uint64_t state_;
};

Rng sub_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(mix64(seed + 0x9E3779B97F4A7C15ull * (trial + 1)));
}

// ---------------------------------------------------------------------------
// Input families: generic uniform, 0/1 Bernoulli (exact regime), and
// adversarial impulse/bump trains.
// ---------------------------------------------------------------------------

struct MadeSeries {
    SampleSeries x;
    std::string kind;
};

MadeSeries make_series(Rng& rng, const SizeBounds& b) {
    MadeSeries m;
    const std::size_t len = rng.range(8, b.max_len);
    switch (rng.range(0, 2)) {
        case 0: {
            m.kind = "uniform";
            m.x.values.resize(len);
            for (auto& v : m.x.values) v = rng.uniform(-b.max_abs_value, b.max_abs_value);
            break;
        }
        case 1: {
            m.kind = "bernoulli";
            const double q = rng.uniform(0.1, 0.9);
            m.x.values.resize(len);
            for (auto& v : m.x.values) v = rng.uniform01() < q ? 1.0 : 0.0;
            break;
        }
        default: {
            const std::size_t n = rng.range(1, 8);
            m.kind = "impulse_train(" + std::to_string(n) + ")";
            m.x = impulse_train(n, std::max(len, n));
            break;
        }
    }
    m.x.dt = 1.0;
    return m;
}

struct MadeStep {
    std::vector<double> breakpoints;
    std::vector<double> values;
    std::string kind;
    double span = 1.0;
};

MadeStep make_step_parts(Rng& rng, const SizeBounds& b) {
    MadeStep m;
    const std::size_t pieces = rng.range(1, b.max_pieces);
    const double start = rng.uniform(-5.0, 5.0);
    m.span = rng.uniform(0.5, 10.0);
    m.kind = "step(" + std::to_string(pieces) + ")";
    std::vector<double> cuts(pieces + 1);
    cuts.front() = start;
    cuts.back() = start + m.span;
    for (std::size_t k = 1; k < pieces; ++k) cuts[k] = rng.uniform(start, start + m.span);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    m.breakpoints = cuts;
    m.values.resize(m.breakpoints.size() - 1);
    for (auto& v : m.values) v = rng.uniform(-b.max_abs_value_cont, b.max_abs_value_cont);
    return m;
}

struct MadeFunction {
    StepFunction f;
    std::string kind;
    double span;
};

MadeFunction make_function(Rng& rng, const SizeBounds& b, std::size_t trial) {
    if (trial % 5 == 4) {
        const double T = rng.uniform(0.2, 2.0);
        double S = T * rng.uniform(1.1, 4.0);
        if (std::fabs(S / T - std::round(S / T)) <= 1e-9) S += 0.021 * T;
        BumpTrain bt = bump_train(T, S, rng.pick({1.0, 2.0}));
        const double span = bt.f.support_length();
        return MadeFunction{std::move(bt.f), "bump_train", span};
    }
    MadeStep m = make_step_parts(rng, b);
    return MadeFunction{StepFunction(m.breakpoints, m.values), m.kind, m.span};
}

std::string fingerprint(std::size_t trial, const std::string& kind, const std::string& extra) {
    std::ostringstream os;
    os << "trial=" << trial << ";kind=" << kind << ";" << extra;
    return os.str();
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale == 0.0) return 0.0;
    return std::fabs(a - b) / scale;
}

// ---------------------------------------------------------------------------
// Per-trial drivers for each registered check
// ---------------------------------------------------------------------------

struct TrialResult {
    std::vector<Incident> failures;
    std::vector<Incident> findings;
};

void note_failure(TrialResult& out, std::string fp, BoundCheck bc) {
    if (!bc.passed) out.failures.push_back({std::move(fp), std::move(bc)});
}

TrialResult trial_equivalence_bounds(Rng& rng, const SizeBounds& b, std::size_t trial,
                                     std::map<std::string, double>&) {
    TrialResult out;
    MadeSeries m = make_series(rng, b);
    const WindowSpec spec{rng.pick({1.0, 1.5, 2.0, 3.0}), rng.range(1, m.x.size())};
    note_failure(out, fingerprint(trial, m.kind, "len=" + std::to_string(m.x.size()) +
                                                     ";p=" + std::to_string(spec.p) +
                                                     ";n=" + std::to_string(spec.n)),
                 check_equivalence_bounds(m.x, spec));
    return out;
}

TrialResult trial_partition_inequality(Rng& rng, const SizeBounds& b, std::size_t trial,
                                       std::map<std::string, double>&) {
    TrialResult out;
    MadeSeries m = make_series(rng, b);
    const double p = rng.pick({1.0, 1.5, 2.0, 3.0});
    const std::size_t d = rng.range(1, std::min<std::size_t>(6, m.x.size()));
    const std::size_t total = rng.range(d, m.x.size());
    std::vector<std::size_t> parts(d, 1);
    for (std::size_t e = 0; e < total - d; ++e) parts[rng.range(0, d - 1)] += 1;
    note_failure(out, fingerprint(trial, m.kind, "len=" + std::to_string(m.x.size()) +
                                                     ";p=" + std::to_string(p) +
                                                     ";d=" + std::to_string(d) +
                                                     ";n=" + std::to_string(total)),
                 check_partition_inequality(m.x, p, parts));
    return out;
}

TrialResult trial_divisor_ordering(Rng& rng, const SizeBounds& b, std::size_t trial,
                                   std::map<std::string, double>&) {
    TrialResult out;
    MadeSeries m = make_series(rng, b);
    const double p = rng.pick({1.0, 1.5, 2.0, 3.0});
    const std::size_t n = rng.range(1, m.x.size());
    const std::size_t d = rng.range(1, m.x.size() / n);
    note_failure(out, fingerprint(trial, m.kind, "len=" + std::to_string(m.x.size()) +
                                                     ";p=" + std::to_string(p) +
                                                     ";n=" + std::to_string(n) +
                                                     ";d=" + std::to_string(d)),
                 check_multiple_ordering(m.x, p, n, d));
    return out;
}

TrialResult trial_two_scale_bound(Rng& rng, const SizeBounds& b, std::size_t trial,
                                  std::map<std::string, double>& stats) {
    TrialResult out;
    MadeSeries m = make_series(rng, b);
    while (m.x.size() < 3) m = make_series(rng, b);
    const double p = rng.pick({1.0, 1.5, 2.0, 3.0});
    const std::size_t n = rng.range(1, (m.x.size() - 1) / 2);
    const std::size_t mm = rng.range(n + 1, m.x.size() - n);
    BoundCheck bc = check_two_scale_bound(m.x, p, n, mm);
    const double factor = bc.witness.at("factor").get<double>();
    stats["max_factor"] = std::max(stats["max_factor"], factor);
    if (bc.rhs > 0.0)
        stats["max_ratio"] = std::max(stats["max_ratio"], bc.lhs / (bc.rhs / factor));
    note_failure(out, fingerprint(trial, m.kind, "len=" + std::to_string(m.x.size()) +
                                                     ";p=" + std::to_string(p) +
                                                     ";n=" + std::to_string(n) +
                                                     ";m=" + std::to_string(mm)),
                 bc);
    return out;
}

TrialResult trial_norm_laws(Rng& rng, const SizeBounds& b, std::size_t trial,
                            std::map<std::string, double>&) {
    TrialResult out;
    MadeSeries mx = make_series(rng, b);
    SampleSeries y;
    y.values.resize(mx.x.size());
    for (auto& v : y.values) v = rng.uniform(-b.max_abs_value, b.max_abs_value);
    const WindowSpec spec{rng.pick({1.0, 1.5, 2.0, 3.0}), rng.range(1, mx.x.size())};
    const std::string fp = fingerprint(
        trial, mx.kind, "len=" + std::to_string(mx.x.size()) + ";p=" + std::to_string(spec.p) +
                            ";n=" + std::to_string(spec.n));

    SampleSeries sum = mx.x;
    for (std::size_t i = 0; i < sum.size(); ++i) sum.values[i] += y.values[i];
    const double nx = windowed_pnorm(mx.x, spec).value;
    const double ny = windowed_pnorm(y, spec).value;
    const double nsum = windowed_pnorm(sum, spec).value;

    BoundCheck triangle;
    triangle.name = "triangle_inequality";
    triangle.tol = 1e-9;
    triangle.lhs = nsum;
    triangle.rhs = nx + ny;
    triangle.passed = leq_rel(triangle.lhs, triangle.rhs, 1e-9);
    triangle.witness = {{"p", spec.p}, {"n", spec.n}};
    note_failure(out, fp, triangle);

    const double c = rng.uniform(-5.0, 5.0);
    SampleSeries scaled = mx.x;
    for (auto& v : scaled.values) v *= c;
    BoundCheck homog;
    homog.name = "homogeneity";
    homog.tol = 1e-12;
    homog.lhs = windowed_pnorm(scaled, spec).value;
    homog.rhs = std::fabs(c) * nx;
    homog.passed = rel_diff(homog.lhs, homog.rhs) <= 1e-12;
    homog.witness = {{"c", c}, {"p", spec.p}, {"n", spec.n}};
    note_failure(out, fp, homog);

    if (trial % 16 == 0) {
        SampleSeries zero;
        zero.values.assign(mx.x.size(), 0.0);
        BoundCheck definite;
        definite.name = "definiteness";
        definite.tol = 0.0;
        definite.lhs = windowed_pnorm(zero, spec).value;
        definite.rhs = 0.0;
        definite.passed = definite.lhs == 0.0;
        definite.witness = {{"p", spec.p}, {"n", spec.n}};
        note_failure(out, fp, definite);
    }
    return out;
}

TrialResult trial_oracle_agreement(Rng& rng, const SizeBounds& b, std::size_t trial,
                                   std::map<std::string, double>& stats) {
    TrialResult out;
    MadeSeries m = make_series(rng, b);
    const WindowSpec spec{rng.pick({1.0, 1.5, 2.0, 3.0}), rng.range(1, m.x.size())};
    const WindowedNormResult fast = windowed_pnorm(m.x, spec);
    const WindowedNormResult slow = brute_force_windowed_pnorm(m.x, spec);

    BoundCheck bc;
    bc.name = "oracle_agreement";
    bc.tol = 1e-12;
    bc.lhs = rel_diff(fast.value, slow.value);
    bc.rhs = 1e-12;
    bc.passed = bc.lhs <= bc.rhs && fast.arg_start == slow.arg_start;
    bc.witness = {{"fast_value", fast.value},
                  {"oracle_value", slow.value},
                  {"fast_arg", fast.arg_start},
                  {"oracle_arg", slow.arg_start},
                  {"p", spec.p},
                  {"n", spec.n}};
    stats["max_rel_diff"] = std::max(stats["max_rel_diff"], bc.lhs);
    note_failure(out, fingerprint(trial, m.kind, "len=" + std::to_string(m.x.size()) +
                                                     ";p=" + std::to_string(spec.p) +
                                                     ";n=" + std::to_string(spec.n)),
                 bc);
    return out;
}

TrialResult trial_divisor_ordering_cont(Rng& rng, const SizeBounds& b, std::size_t trial,
                                        std::map<std::string, double>&) {
    TrialResult out;
    MadeFunction m = make_function(rng, b, trial);
    const double p = rng.pick({1.0, 2.0, 3.0});
    const double V = rng.uniform(0.05 * m.span, 1.5 * m.span);
    const std::size_t d = rng.range(1, 4);
    note_failure(out, fingerprint(trial, m.kind, "p=" + std::to_string(p) +
                                                     ";V=" + std::to_string(V) +
                                                     ";d=" + std::to_string(d)),
                 check_multiple_ordering_cont(m.f, p, V, d));
    return out;
}

TrialResult trial_partition_inequality_cont(Rng& rng, const SizeBounds& b, std::size_t trial,
                                            std::map<std::string, double>&) {
    TrialResult out;
    MadeFunction m = make_function(rng, b, trial);
    const double p = rng.pick({1.0, 2.0, 3.0});
    const std::size_t d = rng.range(1, 5);
    std::vector<double> parts(d);
    for (auto& a : parts) a = rng.uniform(0.02 * m.span, 0.8 * m.span);
    note_failure(out, fingerprint(trial, m.kind, "p=" + std::to_string(p) +
                                                     ";d=" + std::to_string(d)),
                 check_partition_inequality_cont(m.f, p, parts));
    return out;
}

TrialResult trial_two_scale_bound_cont(Rng& rng, const SizeBounds& b, std::size_t trial,
                                       std::map<std::string, double>& stats) {
    TrialResult out;
    MadeFunction m = make_function(rng, b, trial);
    const double p = rng.pick({1.0, 2.0, 3.0});
    const double T = rng.uniform(0.05 * m.span, m.span);
    const double S = T * rng.uniform(1.01, 4.0);
    BoundCheck bc = check_two_scale_bound_cont(m.f, p, T, S);
    stats["max_factor"] = std::max(stats["max_factor"], bc.witness.at("factor").get<double>());
    note_failure(out, fingerprint(trial, m.kind, "p=" + std::to_string(p) +
                                                     ";T=" + std::to_string(T) +
                                                     ";S=" + std::to_string(S)),
                 bc);
    return out;
}

TrialResult trial_norm_laws_cont(Rng& rng, const SizeBounds& b, std::size_t trial,
                                 std::map<std::string, double>&) {
    TrialResult out;
    MadeStep grid = make_step_parts(rng, b);
    std::vector<double> other(grid.values.size());
    for (auto& v : other) v = rng.uniform(-b.max_abs_value_cont, b.max_abs_value_cont);
    const double p = rng.pick({1.0, 2.0, 3.0});
    const double T = rng.uniform(0.05 * grid.span, 1.5 * grid.span);
    const std::string fp =
        fingerprint(trial, grid.kind, "p=" + std::to_string(p) + ";T=" + std::to_string(T));

    const StepFunction f(grid.breakpoints, grid.values);
    const StepFunction g(grid.breakpoints, other);
    std::vector<double> summed(grid.values.size());
    for (std::size_t k = 0; k < summed.size(); ++k) summed[k] = grid.values[k] + other[k];
    const StepFunction fg(grid.breakpoints, summed);

    BoundCheck triangle;
    triangle.name = "triangle_inequality_cont";
    triangle.tol = 1e-9;
    triangle.lhs = interval_pnorm(fg, p, T).value;
    triangle.rhs = interval_pnorm(f, p, T).value + interval_pnorm(g, p, T).value;
    triangle.passed = leq_rel(triangle.lhs, triangle.rhs, 1e-9);
    triangle.witness = {{"p", p}, {"T", T}};
    note_failure(out, fp, triangle);

    const double c = rng.uniform(-5.0, 5.0);
    std::vector<double> scaled(grid.values.size());
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = c * grid.values[k];
    BoundCheck homog;
    homog.name = "homogeneity_cont";
    homog.tol = 1e-12;
    homog.lhs = interval_pnorm(StepFunction(grid.breakpoints, scaled), p, T).value;
    homog.rhs = std::fabs(c) * interval_pnorm(f, p, T).value;
    homog.passed = rel_diff(homog.lhs, homog.rhs) <= 1e-12;
    homog.witness = {{"c", c}, {"p", p}, {"T", T}};
    note_failure(out, fp, homog);
    return out;
}

TrialResult trial_naive_monotonicity(Rng& rng, const SizeBounds& b, std::size_t trial,
                                     std::map<std::string, double>& stats) {
    TrialResult out;
    SampleSeries x;
    std::vector<std::size_t> windows;
    std::string kind;
    double p = 1.0;

    if (trial % 4 == 0) {
        // Injected counterexample: impulse train with a window pair (n, m),
        // n no factor of m. Provably violates naive monotonicity.
        const std::size_t n = rng.range(2, 8);
        const std::size_t d = rng.range(1, 3);
        const std::size_t j = rng.range(1, n - 1);
        const std::size_t m = d * n + j;
        x = impulse_train(n, m + 2 * n);
        windows = {n, m};
        p = rng.pick({1.0, 2.0});
        kind = "injected_impulse_train(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")";
    } else {
        MadeSeries m = make_series(rng, b);
        x = std::move(m.x);
        kind = m.kind;
        p = rng.pick({1.0, 1.5, 2.0, 3.0});
        const std::size_t count = rng.range(2, 5);
        for (std::size_t k = 0; k < count; ++k) windows.push_back(rng.range(1, x.size()));
    }

    const ScaleReport report = scale_ladder(x, p, windows);
    double smaller_min = std::numeric_limits<double>::infinity();
    for (const ScaleRow& row : report.rows) {
        if (row.violates_naive_monotonicity) {
            BoundCheck bc;
            bc.name = "naive_monotonicity";
            bc.tol = 1e-12;
            bc.lhs = row.value;
            bc.rhs = smaller_min;
            bc.passed = false;  // the naive claim value(m) <= value(n) is violated
            bc.witness = {{"window", row.window}, {"arg_start", row.arg_start}, {"p", p}};
            out.findings.push_back(
                {fingerprint(trial, kind, "window=" + std::to_string(row.window)), bc});
        }
        smaller_min = std::min(smaller_min, row.value);
    }
    stats["flagged_rows"] += static_cast<double>(out.findings.size());
    return out;
}

using TrialFn = TrialResult (*)(Rng&, const SizeBounds&, std::size_t,
                                std::map<std::string, double>&);

struct CheckEntry {
    const char* name;
    TrialFn fn;
};

constexpr CheckEntry kChecks[] = {
    {"equivalence_bounds", trial_equivalence_bounds},
    {"partition_inequality", trial_partition_inequality},
    {"divisor_ordering", trial_divisor_ordering},
    {"two_scale_bound", trial_two_scale_bound},
    {"norm_laws", trial_norm_laws},
    {"oracle_agreement", trial_oracle_agreement},
    {"divisor_ordering_cont", trial_divisor_ordering_cont},
    {"partition_inequality_cont", trial_partition_inequality_cont},
    {"two_scale_bound_cont", trial_two_scale_bound_cont},
    {"norm_laws_cont", trial_norm_laws_cont},
    {"naive_monotonicity", trial_naive_monotonicity},
};

}  // namespace

WindowedNormResult brute_force_windowed_pnorm(const SampleSeries& x, const WindowSpec& spec) {
    validate(x);
    if (!std::isfinite(spec.p) || spec.p <= 0.0)
        fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (spec.n < 1) fail(ErrorCode::InvalidWindow, "window length must be >= 1");
    if (spec.n > x.size())
        fail(ErrorCode::WindowTooLong, "window of " + std::to_string(spec.n) +
                                           " samples exceeds series length " +
                                           std::to_string(x.size()));

    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j + spec.n <= x.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = j; i < j + spec.n; ++i) s += pow_abs(x.values[i], spec.p);
        if (s > best) {
            best = s;
            arg = j;
        }
    }

    WindowedNormResult r;
    r.value_pow_p = best / static_cast<double>(spec.n);
    r.value = proot(r.value_pow_p, spec.p);
    r.arg_start = arg;
    return r;
}

double grid_oracle_interval_pnorm(const StepFunction& f, double p, double T,
                                  double grid_step) {
    if (!std::isfinite(grid_step) || grid_step <= 0.0)
        fail(ErrorCode::InvalidGrid, "grid step must be positive");
    if (!std::isfinite(p) || p <= 0.0) fail(ErrorCode::InvalidExponent, "exponent must be positive");
    if (!std::isfinite(T) || T <= 0.0) fail(ErrorCode::InvalidLength, "interval length must be positive");

    const auto& b = f.breakpoints();
    std::vector<double> wpow(f.pieces());
    for (std::size_t k = 0; k < f.pieces(); ++k) wpow[k] = pow_abs(f.values()[k], p);

    const double lo = b.front() - T;
    const double hi = b.back();
    if ((hi - lo) / grid_step > 1e9)
        fail(ErrorCode::InvalidGrid, "grid step too small for the support span");
    double best = 0.0;
    for (double t = lo; t <= hi; t += grid_step) {
        double mass = 0.0;
        for (std::size_t k = 0; k < f.pieces(); ++k) {
            const double overlap = std::min(b[k + 1], t + T) - std::max(b[k], t);
            if (overlap > 0.0) mass += wpow[k] * overlap;
        }
        best = std::max(best, mass / T);
    }
    return best;
}

const std::vector<std::string>& campaign_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kChecks) v.push_back(e.name);
        return v;
    }();
    return names;
}

CampaignReport run_campaign(const std::string& which, std::size_t trials, std::uint64_t seed,
                            const SizeBounds& bounds) {
    const CheckEntry* entry = nullptr;
    for (const auto& e : kChecks)
        if (which == e.name) entry = &e;
    if (!entry) {
        std::string known;
        for (const auto& e : kChecks) known += std::string(known.empty() ? "" : ", ") + e.name;
        fail(ErrorCode::UnknownCheck, "'" + which + "' (known checks: " + known + ")");
    }
    if (trials < 1) fail(ErrorCode::ParseError, "trials must be >= 1");

    CampaignReport report;
    report.check = which;
    report.seed = seed;
    report.trials = trials;

    const auto start = std::chrono::steady_clock::now();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = sub_rng(seed, trial);
        TrialResult r = entry->fn(rng, bounds, trial, report.stats);
        for (auto& inc : r.failures) report.failures.push_back(std::move(inc));
        for (auto& inc : r.findings) report.findings.push_back(std::move(inc));
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string to_jsonl(const CampaignReport& report) {
    std::ostringstream os;
    auto line = [&](const char* type, const Incident& inc) {
        nlohmann::json j = inc.check;
        j["type"] = type;
        j["check"] = report.check;
        j["fingerprint"] = inc.fingerprint;
        os << j.dump() << "\n";
    };
    for (const auto& inc : report.failures) line("failure", inc);
    for (const auto& inc : report.findings) line("finding", inc);
    nlohmann::json summary = {
        {"type", "summary"},
        {"check", report.check},
        {"seed", report.seed},
        {"trials", report.trials},
        {"failures", report.failures.size()},
        {"findings", report.findings.size()},
        {"elapsed_seconds", report.elapsed_seconds},
        {"stats", report.stats},
    };
    os << summary.dump() << "\n";
    return os.str();
}

}  // namespace maxmean

// Oracles and randomized campaigns: brute-force agreement, grid-oracle
// domination, campaign determinism, and the failure/finding taxonomy.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "maxmean/pmean.hpp"
#include "maxmean/verify.hpp"

using namespace maxmean;

namespace {

struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::size_t range(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
};

StepFunction random_step(TestRng& rng, std::size_t max_pieces) {
    const std::size_t pieces = rng.range(1, max_pieces);
    const double start = rng.uniform(-5.0, 5.0);
    const double span = rng.uniform(0.5, 8.0);
    std::vector<double> bp(pieces + 1);
    bp.front() = start;
    bp.back() = start + span;
    for (std::size_t k = 1; k < pieces; ++k) bp[k] = rng.uniform(start, start + span);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> vs(bp.size() - 1);
    for (auto& v : vs) v = rng.uniform(-5.0, 5.0);
    return StepFunction(bp, vs);
}

}  // namespace

// ---------------------------------------------------------------------------
// brute_force_windowed_pnorm
// ---------------------------------------------------------------------------

TEST_CASE("brute force oracle on hand inputs") {
    const SampleSeries x{{1, 0, 0, 1, 1, 0}, 1.0};
    const auto r = brute_force_windowed_pnorm(x, {1.0, 2});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.arg_start == 3);

    const SampleSeries zero{{0, 0, 0, 0}, 1.0};
    CHECK(brute_force_windowed_pnorm(zero, {2.0, 2}).value == 0.0);

    const auto train = brute_force_windowed_pnorm(impulse_train(4, 9), {2.0, 4});
    CHECK(train.value_pow_p == doctest::Approx(0.25).epsilon(1e-15));
}

// ---------------------------------------------------------------------------
// grid_oracle_interval_pnorm
// ---------------------------------------------------------------------------

TEST_CASE("grid oracle on hand inputs") {
    const StepFunction zero({0.0, 1.0}, {0.0});
    CHECK(grid_oracle_interval_pnorm(zero, 1.0, 0.5, 0.01) == 0.0);

    const StepFunction bump = single_bump(0.5, 1.0);
    const double g = grid_oracle_interval_pnorm(bump, 1.0, 1.0, 1e-4);
    CHECK(g <= 1.0 + 1e-12);
    CHECK(g >= 1.0 - 2.0 * 1e-4);  // Lipschitz gap: max|c|^p * step / T = 2e-4

    const BumpTrain bt = bump_train(1.0, 2.5, 1.0);
    const double h = grid_oracle_interval_pnorm(bt.f, 1.0, 2.5, 1e-4);
    const double height_pow = 12.0;  // bump height at eps = 1/12, p = 1
    CHECK(h <= 1.2 + 1e-12);
    CHECK(h >= 1.2 - height_pow * 1e-4 / 2.5);

    CHECK_THROWS_AS(grid_oracle_interval_pnorm(bump, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("sweep dominates the grid oracle within the Lipschitz gap") {
    TestRng rng(99);
    for (int t = 0; t < 50; ++t) {
        const StepFunction f = random_step(rng, 25);
        const double p = rng.uniform01() < 0.5 ? 1.0 : 2.0;
        const double T = rng.uniform(0.1, 1.2) * f.support_length();
        const double step = f.support_length() / 400.0;
        const double sweep = interval_pnorm(f, p, T).value_pow_p;
        const double grid = grid_oracle_interval_pnorm(f, p, T, step);
        double max_pow = 0.0;
        for (double v : f.values()) max_pow = std::max(max_pow, pow_abs(v, p));
        REQUIRE(grid <= sweep + 1e-12 * std::max(1.0, sweep));
        REQUIRE(sweep - grid <= max_pow * step / T + 1e-12);
    }
}

// ---------------------------------------------------------------------------
// run_campaign
// ---------------------------------------------------------------------------

TEST_CASE("theorem-backed campaigns report zero failures") {
    for (const std::string name :
         {"equivalence_bounds", "partition_inequality", "divisor_ordering", "two_scale_bound",
          "norm_laws", "oracle_agreement", "divisor_ordering_cont", "partition_inequality_cont",
          "two_scale_bound_cont", "norm_laws_cont"}) {
        const CampaignReport rep = run_campaign(name, 300, 42);
        INFO("check: " << name);
        CHECK(rep.failures.empty());
        CHECK(rep.trials == 300);
    }
}

TEST_CASE("two-scale campaign tracks a factor never above 2") {
    const CampaignReport rep = run_campaign("two_scale_bound", 500, 7);
    CHECK(rep.failures.empty());
    REQUIRE(rep.stats.count("max_factor"));
    CHECK(rep.stats.at("max_factor") <= 2.0 + 1e-12);
    CHECK(rep.stats.at("max_factor") > 1.0);
}

TEST_CASE("naive monotonicity campaign reports findings, not failures") {
    const CampaignReport rep = run_campaign("naive_monotonicity", 200, 11);
    CHECK(rep.failures.empty());
    // every 4th trial injects an impulse train that provably violates
    CHECK(rep.findings.size() >= 50);
    for (const auto& inc : rep.findings) {
        CHECK_FALSE(inc.check.passed);
        CHECK(inc.check.name == "naive_monotonicity");
        CHECK(!inc.fingerprint.empty());
    }
}

TEST_CASE("campaigns are deterministic given the seed") {
    const CampaignReport a = run_campaign("naive_monotonicity", 120, 12345);
    const CampaignReport b = run_campaign("naive_monotonicity", 120, 12345);
    REQUIRE(a.findings.size() == b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i) {
        CHECK(a.findings[i].fingerprint == b.findings[i].fingerprint);
        CHECK(a.findings[i].check.lhs == b.findings[i].check.lhs);
        CHECK(a.findings[i].check.rhs == b.findings[i].check.rhs);
    }
    CHECK(a.stats == b.stats);

    const CampaignReport c = run_campaign("oracle_agreement", 150, 99);
    const CampaignReport d = run_campaign("oracle_agreement", 150, 99);
    CHECK(c.failures.size() == d.failures.size());
    CHECK(c.stats == d.stats);
}

TEST_CASE("unknown check name is rejected") {
    try {
        run_campaign("no_such_check", 10, 1);
        FAIL("expected UnknownCheck");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownCheck);
    }
    CHECK(campaign_names().size() == 11);
}

TEST_CASE("bound-check witnesses re-evaluate to the reported lhs") {
    TestRng rng(4242);
    for (int t = 0; t < 100; ++t) {
        SampleSeries x;
        x.values.resize(rng.range(8, 80));
        for (auto& v : x.values) v = rng.uniform(-10.0, 10.0);
        const std::size_t n = rng.range(1, (x.size() - 1) / 2);
        const std::size_t m = rng.range(n + 1, x.size() - n);
        const BoundCheck bc = check_two_scale_bound(x, 2.0, n, m);
        const std::size_t arg = bc.witness.at("arg_start_m").get<std::size_t>();
        double s = 0.0;
        for (std::size_t i = arg; i < arg + m; ++i) s += pow_abs(x.values[i], 2.0);
        const double lhs = s / static_cast<double>(m);
        REQUIRE(std::fabs(lhs - bc.lhs) <= 1e-12 * std::max(1.0, std::fabs(bc.lhs)));
    }
}

TEST_CASE("jsonl report is line-oriented with a trailing summary") {
    const CampaignReport rep = run_campaign("naive_monotonicity", 40, 3);
    const std::string text = to_jsonl(rep);
    std::istringstream is(text);
    std::string line, last;
    std::size_t lines = 0, findings = 0;
    while (std::getline(is, line)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        REQUIRE(j.contains("type"));
        if (j.at("type") == "finding") ++findings;
        last = line;
        ++lines;
    }
    CHECK(lines == rep.findings.size() + rep.failures.size() + 1);
    CHECK(findings == rep.findings.size());
    const nlohmann::json summary = nlohmann::json::parse(last);
    CHECK(summary.at("type") == "summary");
    CHECK(summary.at("check") == "naive_monotonicity");
    CHECK(summary.at("trials") == 40);
    CHECK(summary.at("seed") == 3);
}

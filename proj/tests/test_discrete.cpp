// Discrete maximal windowed p-means: examples, edge cases, and the
// ordering/bound inequalities checked against brute force on random inputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "maxmean/discrete.hpp"
#include "maxmean/pmean.hpp"
#include "maxmean/verify.hpp"

using namespace maxmean;

namespace {

// splitmix64; self-contained so the tests do not share RNG code with the
// library under test.
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

SampleSeries random_series(TestRng& rng, std::size_t max_len) {
    SampleSeries x;
    const std::size_t len = rng.range(1, max_len);
    x.values.resize(len);
    switch (rng.range(0, 2)) {
        case 0:
            for (auto& v : x.values) v = rng.uniform(-10.0, 10.0);
            break;
        case 1:
            for (auto& v : x.values) v = rng.uniform01() < 0.4 ? 1.0 : 0.0;
            break;
        default: {
            const std::size_t n = rng.range(1, 8);
            x = impulse_train(n, std::max(len, n));
            break;
        }
    }
    return x;
}

double random_p(TestRng& rng) {
    static const double ps[] = {1.0, 1.5, 2.0, 3.0};
    return ps[rng.range(0, 3)];
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ParseError;
}

}  // namespace

// ---------------------------------------------------------------------------
// windowed_pnorm
// ---------------------------------------------------------------------------

TEST_CASE("windowed_pnorm on the zero sequence") {
    const SampleSeries x{{0.0, 0.0, 0.0}, 1.0};
    const auto r = windowed_pnorm(x, {1.0, 2});
    CHECK(r.value == 0.0);
    CHECK(r.value_pow_p == 0.0);
    CHECK(r.arg_start == 0);
}

TEST_CASE("windowed_pnorm picks the best window with the smallest start") {
    const SampleSeries x{{1, 0, 0, 1, 1, 0}, 1.0};
    const auto r = windowed_pnorm(x, {1.0, 2});
    CHECK(r.value_pow_p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.arg_start == 3);
    const auto oracle = brute_force_windowed_pnorm(x, {1.0, 2});
    CHECK(r.value == oracle.value);
    CHECK(r.arg_start == oracle.arg_start);
}

TEST_CASE("windowed_pnorm on the impulse train at two scales") {
    const SampleSeries x = impulse_train(3, 7);
    CHECK(windowed_pnorm(x, {1.0, 3}).value_pow_p == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(windowed_pnorm(x, {1.0, 4}).value_pow_p == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("windowed_pnorm rejects bad inputs") {
    const SampleSeries x{{1.0, 2.0, 3.0}, 1.0};
    CHECK(code_of([&] { windowed_pnorm(x, {1.0, 4}); }) == ErrorCode::WindowTooLong);
    CHECK(code_of([&] { windowed_pnorm(x, {0.0, 2}); }) == ErrorCode::InvalidExponent);
    CHECK(code_of([&] { windowed_pnorm(x, {-1.0, 2}); }) == ErrorCode::InvalidExponent);
    CHECK(code_of([&] { windowed_pnorm(x, {1.0, 0}); }) == ErrorCode::InvalidWindow);
    const SampleSeries bad{{1.0, std::nan("")}, 1.0};
    CHECK(code_of([&] { windowed_pnorm(bad, {1.0, 1}); }) == ErrorCode::NonFiniteInput);
    const SampleSeries inf{{1.0, std::numeric_limits<double>::infinity()}, 1.0};
    CHECK(code_of([&] { windowed_pnorm(inf, {1.0, 1}); }) == ErrorCode::NonFiniteInput);
    CHECK(code_of([&] { windowed_pnorm(SampleSeries{{}, 1.0}, {1.0, 1}); }) ==
          ErrorCode::EmptySeries);
}

TEST_CASE("length-1 series supports only n=1 and returns |x0|") {
    const SampleSeries x{{-2.5}, 1.0};
    for (double p : {0.5, 1.0, 2.0, 3.0})
        CHECK(windowed_pnorm(x, {p, 1}).value == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(code_of([&] { windowed_pnorm(x, {1.0, 2}); }) == ErrorCode::WindowTooLong);
}

TEST_CASE("p below 1 is allowed in windowed_pnorm") {
    const SampleSeries x{{1, 0, 0, 1, 1, 0}, 1.0};
    const auto r = windowed_pnorm(x, {0.5, 2});
    const auto oracle = brute_force_windowed_pnorm(x, {0.5, 2});
    CHECK(r.value == doctest::Approx(oracle.value).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// sup_norm, impulse_train
// ---------------------------------------------------------------------------

TEST_CASE("sup_norm basics") {
    CHECK(sup_norm(SampleSeries{{0.0, 0.0}, 1.0}) == 0.0);
    CHECK(sup_norm(SampleSeries{{-3.0, 2.0}, 1.0}) == 3.0);
    CHECK(sup_norm(impulse_train(5, 11)) == 1.0);
}

TEST_CASE("impulse_train layout") {
    CHECK(impulse_train(1, 3).values == std::vector<double>{1, 1, 1});
    CHECK(impulse_train(3, 7).values == std::vector<double>{1, 0, 0, 1, 0, 0, 1});
    CHECK(impulse_train(2, 5).values == std::vector<double>{1, 0, 1, 0, 1});
    CHECK(impulse_train(3, 7).dt == 1.0);
    CHECK(code_of([] { impulse_train(0, 5); }) == ErrorCode::InvalidPeriod);
    CHECK(code_of([] { impulse_train(4, 3); }) == ErrorCode::LengthTooShort);
}

// ---------------------------------------------------------------------------
// check_equivalence_bounds
// ---------------------------------------------------------------------------

TEST_CASE("equivalence bounds on hand inputs") {
    CHECK(check_equivalence_bounds(SampleSeries{{0, 0, 0}, 1.0}, {1.0, 2}).passed);

    const auto ones = check_equivalence_bounds(SampleSeries{{1, 1, 1, 1}, 1.0}, {2.0, 2});
    CHECK(ones.passed);
    CHECK(ones.witness.at("lower").get<double>() ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ones.witness.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ones.witness.at("upper").get<double>() == 1.0);

    const auto tight = check_equivalence_bounds(impulse_train(4, 8), {1.0, 4});
    CHECK(tight.passed);
    CHECK(tight.witness.at("lower").get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(tight.witness.at("value").get<double>() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("equivalence bounds require p >= 1") {
    CHECK(code_of([] {
              check_equivalence_bounds(SampleSeries{{1.0, 2.0}, 1.0}, {0.5, 1});
          }) == ErrorCode::InvalidExponent);
}

// ---------------------------------------------------------------------------
// check_partition_inequality
// ---------------------------------------------------------------------------

TEST_CASE("partition inequality on hand inputs") {
    const SampleSeries x{{2, -1, 0.5, 3, -2, 1}, 1.0};
    const auto identity = check_partition_inequality(x, 2.0, {4});
    CHECK(identity.passed);
    CHECK(identity.lhs == identity.rhs);

    const auto train = check_partition_inequality(impulse_train(3, 9), 1.0, {3, 3});
    CHECK(train.passed);
    CHECK(train.lhs == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(train.rhs == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto spike = check_partition_inequality(SampleSeries{{1, 0, 0, 0}, 1.0}, 1.0, {1, 3});
    CHECK(spike.passed);
    CHECK(spike.lhs == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(spike.rhs == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(code_of([&] { check_partition_inequality(x, 1.0, {4, 3}); }) ==
          ErrorCode::PartitionTooLong);
    CHECK(code_of([&] { check_partition_inequality(x, 1.0, {}); }) == ErrorCode::InvalidPartition);
    CHECK(code_of([&] { check_partition_inequality(x, 1.0, {2, 0}); }) ==
          ErrorCode::InvalidPartition);
}

// ---------------------------------------------------------------------------
// check_multiple_ordering
// ---------------------------------------------------------------------------

TEST_CASE("divisor ordering on hand inputs") {
    const SampleSeries x{{2, -1, 0.5, 3, -2, 1}, 1.0};
    const auto same = check_multiple_ordering(x, 2.0, 3, 1);
    CHECK(same.passed);
    CHECK(same.lhs == same.rhs);

    const auto train = check_multiple_ordering(impulse_train(3, 12), 1.0, 3, 2);
    CHECK(train.passed);
    CHECK(train.lhs == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(train.rhs == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto spike = check_multiple_ordering(SampleSeries{{5, 0, 0, 0, 0, 0}, 1.0}, 1.0, 2, 3);
    CHECK(spike.passed);
    CHECK(spike.lhs == doctest::Approx(5.0 / 6).epsilon(1e-15));
    CHECK(spike.rhs == doctest::Approx(2.5).epsilon(1e-15));

    CHECK(code_of([&] { check_multiple_ordering(x, 1.0, 4, 2); }) == ErrorCode::WindowTooLong);
}

// ---------------------------------------------------------------------------
// check_two_scale_bound
// ---------------------------------------------------------------------------

TEST_CASE("two-scale bound on hand inputs") {
    const SampleSeries generic{{2, -1, 0.5, 3, -2, 1, 0, 4}, 1.0};
    const auto f = check_two_scale_bound(generic, 1.0, 2, 4);
    CHECK(f.passed);
    CHECK(f.witness.at("factor").get<double>() == doctest::Approx(1.5).epsilon(1e-15));

    // Extremal direction: the impulse train makes the bound tight.
    const auto tight = check_two_scale_bound(impulse_train(3, 10), 1.0, 3, 4);
    CHECK(tight.passed);
    CHECK(tight.lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tight.rhs == doctest::Approx(0.5).epsilon(1e-12));

    const auto trivial = check_two_scale_bound(SampleSeries{{1, 1, 0}, 1.0}, 1.0, 1, 2);
    CHECK(trivial.passed);

    CHECK(code_of([&] { check_two_scale_bound(generic, 1.0, 4, 4); }) == ErrorCode::BadOrder);
    CHECK(code_of([&] { check_two_scale_bound(generic, 1.0, 3, 7); }) ==
          ErrorCode::WindowTooLong);
}

// ---------------------------------------------------------------------------
// scale_ladder
// ---------------------------------------------------------------------------

TEST_CASE("scale ladder flags the impulse-train violation") {
    const ScaleReport rep = scale_ladder(impulse_train(3, 12), 1.0, {3, 4, 6});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].value_pow_p == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(rep.rows[1].value_pow_p == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rep.rows[2].value_pow_p == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK_FALSE(rep.rows[0].violates_naive_monotonicity);
    CHECK(rep.rows[1].violates_naive_monotonicity);
    CHECK_FALSE(rep.rows[2].violates_naive_monotonicity);
}

TEST_CASE("scale ladder on a constant series has no flags") {
    const SampleSeries x{std::vector<double>(16, 2.5), 1.0};
    const ScaleReport rep = scale_ladder(x, 2.0, {2, 3, 5, 8});
    for (const auto& row : rep.rows) {
        CHECK(row.value == doctest::Approx(2.5).epsilon(1e-12));
        CHECK_FALSE(row.violates_naive_monotonicity);
    }
}

TEST_CASE("scale ladder details") {
    const SampleSeries x{{1, 0, 0, 1}, 0.5};
    const ScaleReport one = scale_ladder(x, 1.0, {2});
    REQUIRE(one.rows.size() == 1);
    CHECK_FALSE(one.rows[0].violates_naive_monotonicity);
    CHECK(one.rows[0].duration == 1.0);

    // unsorted, duplicated ladder normalizes
    const ScaleReport rep = scale_ladder(x, 1.0, {3, 2, 3});
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].window == 2);
    CHECK(rep.rows[1].window == 3);

    CHECK(code_of([&] { scale_ladder(x, 1.0, {}); }) == ErrorCode::EmptyLadder);
    CHECK(code_of([&] { scale_ladder(x, 1.0, {5}); }) == ErrorCode::WindowTooLong);
}

// ---------------------------------------------------------------------------
// Randomized properties (brute force is the reference)
// ---------------------------------------------------------------------------

TEST_CASE("fast path agrees with brute force on random inputs") {
    TestRng rng(2024);
    for (int t = 0; t < 2000; ++t) {
        const SampleSeries x = random_series(rng, 200);
        const WindowSpec spec{random_p(rng), rng.range(1, x.size())};
        const auto fast = windowed_pnorm(x, spec);
        const auto slow = brute_force_windowed_pnorm(x, spec);
        REQUIRE(rel_diff(fast.value, slow.value) <= 1e-12);
        REQUIRE(rel_diff(fast.value_pow_p, slow.value_pow_p) <= 1e-12);
        REQUIRE(fast.arg_start == slow.arg_start);

        // arg_start witness: direct re-evaluation reproduces value_pow_p
        double s = 0.0;
        for (std::size_t i = fast.arg_start; i < fast.arg_start + spec.n; ++i)
            s += pow_abs(x.values[i], spec.p);
        REQUIRE(rel_diff(s / static_cast<double>(spec.n), fast.value_pow_p) <= 1e-12);

        // root consistency
        REQUIRE(rel_diff(fast.value, std::pow(fast.value_pow_p, 1.0 / spec.p)) <= 1e-12);
    }
}

TEST_CASE("homogeneity on random inputs") {
    TestRng rng(77);
    for (int t = 0; t < 400; ++t) {
        const SampleSeries x = random_series(rng, 120);
        const WindowSpec spec{random_p(rng), rng.range(1, x.size())};
        const double c = rng.uniform(-8.0, 8.0);
        SampleSeries scaled = x;
        for (auto& v : scaled.values) v *= c;
        const double lhs = windowed_pnorm(scaled, spec).value;
        const double rhs = std::fabs(c) * windowed_pnorm(x, spec).value;
        REQUIRE(rel_diff(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("triangle inequality for p >= 1 on random inputs") {
    TestRng rng(513);
    for (int t = 0; t < 400; ++t) {
        const std::size_t len = rng.range(1, 120);
        SampleSeries x, y, sum;
        x.values.resize(len);
        y.values.resize(len);
        sum.values.resize(len);
        for (std::size_t i = 0; i < len; ++i) {
            x.values[i] = rng.uniform(-10.0, 10.0);
            y.values[i] = rng.uniform(-10.0, 10.0);
            sum.values[i] = x.values[i] + y.values[i];
        }
        const WindowSpec spec{random_p(rng), rng.range(1, len)};
        const double n_sum = windowed_pnorm(sum, spec).value;
        const double n_parts = windowed_pnorm(x, spec).value + windowed_pnorm(y, spec).value;
        REQUIRE(leq_rel(n_sum, n_parts, 1e-9));
    }
}

TEST_CASE("definiteness: zero norm iff zero series") {
    TestRng rng(9);
    const SampleSeries zero{std::vector<double>(37, 0.0), 1.0};
    CHECK(windowed_pnorm(zero, {1.5, 5}).value == 0.0);
    for (int t = 0; t < 100; ++t) {
        SampleSeries x{std::vector<double>(rng.range(1, 60), 0.0), 1.0};
        x.values[rng.range(0, x.size() - 1)] = rng.uniform(0.1, 5.0) * (rng.next() % 2 ? 1 : -1);
        CHECK(windowed_pnorm(x, {random_p(rng), rng.range(1, x.size())}).value > 0.0);
    }
}

TEST_CASE("ordering and bound inequalities hold on random inputs") {
    TestRng rng(31337);
    for (int t = 0; t < 500; ++t) {
        SampleSeries x = random_series(rng, 150);
        while (x.size() < 3) x = random_series(rng, 150);
        const double p = random_p(rng);

        const std::size_t n_eq = rng.range(1, x.size());
        CHECK(check_equivalence_bounds(x, {p, n_eq}).passed);

        const std::size_t d = rng.range(1, std::min<std::size_t>(5, x.size()));
        const std::size_t total = rng.range(d, x.size());
        std::vector<std::size_t> parts(d, 1);
        for (std::size_t e = 0; e < total - d; ++e) parts[rng.range(0, d - 1)] += 1;
        CHECK(check_partition_inequality(x, p, parts).passed);

        const std::size_t n_ord = rng.range(1, x.size());
        CHECK(check_multiple_ordering(x, p, n_ord, rng.range(1, x.size() / n_ord)).passed);

        const std::size_t n_ts = rng.range(1, (x.size() - 1) / 2);
        const std::size_t m_ts = rng.range(n_ts + 1, x.size() - n_ts);
        const auto ts = check_two_scale_bound(x, p, n_ts, m_ts);
        CHECK(ts.passed);
        CHECK(ts.witness.at("factor").get<double>() <= 2.0 + 1e-12);
    }
}

TEST_CASE("impulse-train norms are exact at both scales") {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t d = 1; d <= 4; ++d) {
            for (std::size_t j = 1; j <= n - 1; ++j) {
                const std::size_t m = (d - 1) * n + j;
                const std::size_t L = m + 2 * n;
                const SampleSeries x = impulse_train(n, L);
                for (double p : {1.0, 2.0}) {
                    const double at_n = windowed_pnorm(x, {p, n}).value_pow_p;
                    const double at_m = windowed_pnorm(x, {p, m}).value_pow_p;
                    REQUIRE(std::fabs(at_n - 1.0 / static_cast<double>(n)) <= 1e-12);
                    REQUIRE(std::fabs(at_m - static_cast<double>(d) / static_cast<double>(m)) <=
                            1e-12);
                    REQUIRE(1.0 / static_cast<double>(n) <
                            static_cast<double>(d) / static_cast<double>(m));
                }
            }
        }
    }
}

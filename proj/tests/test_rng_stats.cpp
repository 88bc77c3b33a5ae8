#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mlosim/rng.hpp"
#include "mlosim/stats.hpp"
#include "mlosim/time.hpp"

using namespace mlosim;

TEST_CASE("backoff draws are uniform on [0, cw]") {
    RngStream rng(1, 2, StreamPurpose::Backoff);
    const int n = 1000000;
    double sum = 0;
    std::array<std::uint64_t, 16> hits{};
    for (int i = 0; i < n; ++i) {
        std::uint32_t v = draw_backoff(rng, 15);
        REQUIRE(v <= 15);
        sum += v;
        if (i < 10000) hits[v]++;
    }
    CHECK(sum / n == doctest::Approx(7.5).epsilon(0.007));
    for (std::uint64_t h : hits) CHECK(h > 0);  // all 16 values early on
    CHECK(draw_backoff(rng, 1) <= 1);
}

TEST_CASE("interarrival gaps are exponential with the configured mean") {
    const double rate = load_to_rate(0.10, 218e6, 12000);
    CHECK(rate == doctest::Approx(1816.6667).epsilon(1e-6));

    RngStream rng(9, 1, StreamPurpose::Traffic);
    const int n = 1000000;
    const Ticks mean_gap = 550459;  // 1/rate in ns
    double sum = 0;
    std::uint64_t over_one = 0, over_two = 0;
    for (int i = 0; i < n; ++i) {
        Ticks g = exponential_interarrival(rng, rate);
        REQUIRE(g >= 1);
        sum += static_cast<double>(g);
        if (g > mean_gap) over_one++;
        if (g > 2 * mean_gap) over_two++;
    }
    CHECK(sum / n / 1000.0 == doctest::Approx(550.459).epsilon(0.01));
    // memoryless: P(X > 2m) / P(X > m) == P(X > m)
    double p_tail = static_cast<double>(over_one) / n;
    double ratio = static_cast<double>(over_two) / static_cast<double>(over_one);
    CHECK(ratio == doctest::Approx(p_tail).epsilon(0.02));

    CHECK_THROWS_AS(exponential_interarrival(rng, 0.0), std::invalid_argument);
}

TEST_CASE("load normalization domain") {
    CHECK(load_to_rate(1.0, 218e6, 12000) == doctest::Approx(18166.6667).epsilon(1e-6));
    CHECK_THROWS_AS(load_to_rate(0.0, 218e6, 12000), std::invalid_argument);
    CHECK_THROWS_AS(load_to_rate(1.6, 218e6, 12000), std::invalid_argument);
}

TEST_CASE("streams are keyed by entity and purpose") {
    RngStream a1(42, fnv1a64("A"), StreamPurpose::Traffic);
    RngStream a2(42, fnv1a64("A"), StreamPurpose::Traffic);
    RngStream b(42, fnv1a64("B"), StreamPurpose::Traffic);
    RngStream ap(42, fnv1a64("A"), StreamPurpose::Backoff);

    bool same_key_replays = true, entity_splits = false, purpose_splits = false;
    for (int i = 0; i < 8; ++i) {
        std::uint64_t ref = a1.next_u64();
        same_key_replays = same_key_replays && ref == a2.next_u64();
        entity_splits = entity_splits || ref != b.next_u64();
        purpose_splits = purpose_splits || ref != ap.next_u64();
    }
    CHECK(same_key_replays);
    CHECK(entity_splits);
    CHECK(purpose_splits);
}

TEST_CASE("per-run seeds are distinct across points and replications") {
    CHECK(derive_run_seed(1, 0, 0) != derive_run_seed(1, 0, 1));
    CHECK(derive_run_seed(1, 0, 0) != derive_run_seed(1, 1, 0));
    CHECK(derive_run_seed(1, 1, 0) != derive_run_seed(1, 0, 1));
    CHECK(derive_run_seed(1, 0, 0) != derive_run_seed(2, 0, 0));
}

TEST_CASE("unit draws stay inside (0, 1]") {
    RngStream rng(5, 5, StreamPurpose::Traffic);
    for (int i = 0; i < 100000; ++i) {
        double u = rng.next_unit_open_zero();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("percentile is nearest-rank") {
    std::vector<double> v{1, 2, 3, 4};
    CHECK(percentile(v, 0.25) == 1);
    CHECK(percentile(v, 0.26) == 2);
    CHECK(percentile(v, 0.50) == 2);
    CHECK(percentile(v, 0.99) == 4);
    CHECK(percentile(v, 1.00) == 4);

    std::vector<double> one{5};
    CHECK(percentile(one, 0.01) == 5);
    CHECK(percentile(one, 0.99) == 5);

    std::vector<double> empty;
    CHECK_THROWS_AS(percentile(empty, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(percentile(one, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(percentile(one, 1.01), std::invalid_argument);
}

TEST_CASE("percentiles of a large uniform sample sit near their ranks") {
    RngStream rng(11, 3, StreamPurpose::Traffic);
    std::vector<double> v(100000);
    for (double& x : v) x = rng.next_unit_open_zero();
    std::sort(v.begin(), v.end());
    CHECK(percentile(v, 0.50) == doctest::Approx(0.50).epsilon(0.02));
    CHECK(percentile(v, 0.99) == doctest::Approx(0.99).epsilon(0.01));
    CHECK(percentile(v, 0.01) == doctest::Approx(0.01).epsilon(0.25));
}

TEST_CASE("delay summary reduces a sample in milliseconds") {
    std::vector<Ticks> delays{3 * kTicksPerMs, 1 * kTicksPerMs, 2 * kTicksPerMs};
    auto s = summarize_delays(delays);
    REQUIRE(s);
    CHECK(s->count == 3);
    CHECK(s->mean_ms == doctest::Approx(2.0));
    CHECK(s->min_ms == doctest::Approx(1.0));
    CHECK(s->max_ms == doctest::Approx(3.0));
    CHECK(s->p50_ms == doctest::Approx(2.0));
    CHECK(s->p1_ms == doctest::Approx(1.0));
    CHECK(s->p99_ms == doctest::Approx(3.0));
    CHECK(s->min_ms <= s->mean_ms);
    CHECK(s->mean_ms <= s->max_ms);

    std::vector<Ticks> empty;
    CHECK(!summarize_delays(empty));
}

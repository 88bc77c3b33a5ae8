#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mlosim/medium.hpp"
#include "mlosim/simulation.hpp"

using namespace mlosim;

namespace {

struct CountingListener : ChannelListener {
    int busy = 0;
    int idle = 0;
    std::int32_t last_channel = 0;
    void on_busy_start(std::int32_t channel) override {
        busy++;
        last_channel = channel;
    }
    void on_idle_start(std::int32_t channel) override {
        idle++;
        last_channel = channel;
    }
};

}  // namespace

TEST_CASE("channels start idle and reject unknown ids") {
    Medium m(3);
    CHECK(m.channel_count() == 3);
    for (std::int32_t ch = 1; ch <= 3; ++ch) {
        CHECK(!m.sense_busy(ch));
        CHECK(m.busy_ticks(ch) == 0);
    }
    CHECK_THROWS_AS(m.sense_busy(0), std::out_of_range);
    CHECK_THROWS_AS(m.sense_busy(4), std::out_of_range);
    CHECK_THROWS_AS(Medium(0), std::invalid_argument);
}

TEST_CASE("sole seizer wins the tick and occupies the channel") {
    Medium m(3);
    SeizeClaim c{0, 0, 64};
    CHECK(m.add_seizer(1, c));  // first claim opens the pending set

    auto claims = m.take_seizers(1);
    REQUIRE(claims.size() == 1);
    CHECK(m.take_seizers(1).empty());  // drained

    m.begin_exchange(1, claims[0], 100, 272000);
    CHECK(m.sense_busy(1));
    CHECK(!m.sense_busy(2));  // channels never interact

    ChannelOccupancy occ = m.release(1, 100 + 272000);
    CHECK(occ.kind == OccupancyKind::Exchange);
    REQUIRE(occ.claims.size() == 1);
    CHECK(occ.claims[0].bss == 0);
    CHECK(occ.end == 100 + 272000);
    CHECK(!m.sense_busy(1));  // end-exclusive: idle at exactly end
    CHECK(m.busy_ticks(1) == 272000);

    REQUIRE(m.records().size() == 1);
    CHECK(m.records()[0].kind == OccupancyKind::Exchange);
    CHECK(m.records()[0].channel == 1);
    CHECK(m.records()[0].start == 100);
    CHECK(m.records()[0].duration == 272000);
}

TEST_CASE("same-tick claims merge into one collision burst") {
    Medium m(3);
    CHECK(m.add_seizer(2, SeizeClaim{0, 0, 64}));
    CHECK(!m.add_seizer(2, SeizeClaim{1, 0, 12}));  // set already open

    auto claims = m.take_seizers(2);
    REQUIRE(claims.size() == 2);
    m.begin_collision(2, claims, 500, 62000);
    CHECK(m.sense_busy(2));

    ChannelOccupancy occ = m.release(2, 500 + 62000);
    CHECK(occ.kind == OccupancyKind::CollisionBurst);
    CHECK(occ.claims.size() == 2);

    REQUIRE(m.records().size() == 1);
    CHECK(m.records()[0].kind == OccupancyKind::CollisionBurst);
}

TEST_CASE("listeners hear exactly one edge per transition, per channel") {
    Medium m(2);
    CountingListener a, b, other;
    m.subscribe(1, &a);
    m.subscribe(1, &a);  // idempotent
    m.subscribe(1, &b);
    m.subscribe(2, &other);

    SeizeClaim c{0, 0, 1};
    m.add_seizer(1, c);
    m.begin_exchange(1, m.take_seizers(1)[0], 0, 1000);
    CHECK(a.busy == 1);
    CHECK(b.busy == 1);
    CHECK(other.busy == 0);
    CHECK(a.idle == 0);

    m.release(1, 1000);
    CHECK(a.idle == 0);  // release is silent; the caller settles first
    m.notify_idle(1);
    CHECK(a.idle == 1);
    CHECK(b.idle == 1);
    CHECK(a.last_channel == 1);
    CHECK(other.idle == 0);
}

TEST_CASE("busy time accumulates over disjoint occupancies") {
    Medium m(1);
    Ticks total = 0;
    Ticks now = 0;
    for (int i = 1; i <= 10; ++i) {
        Ticks dur = static_cast<Ticks>(i) * 1000;
        SeizeClaim c{0, 0, 1};
        m.add_seizer(1, c);
        m.begin_exchange(1, m.take_seizers(1)[0], now, dur);
        m.release(1, now + dur);
        m.notify_idle(1);
        total += dur;
        now += dur + 34000;
    }
    CHECK(m.busy_ticks(1) == total);
    CHECK(m.records().size() == 10);
    verify_channel_records(m.records());
}

TEST_CASE("protocol violations are loud") {
    Medium m(1);
    SeizeClaim c{0, 0, 1};
    m.add_seizer(1, c);
    m.begin_exchange(1, m.take_seizers(1)[0], 0, 1000);

    CHECK_THROWS_AS(m.add_seizer(1, c), std::logic_error);       // claim on a busy channel
    CHECK_THROWS_AS(m.release(1, 999), std::logic_error);        // early release
    CHECK_THROWS_AS(m.begin_exchange(1, c, 10, 5), std::logic_error);  // already busy
    CHECK_THROWS_AS(m.notify_idle(1), std::logic_error);         // still busy

    m.release(1, 1000);
    CHECK_THROWS_AS(m.release(1, 1000), std::logic_error);  // nothing to release
}

TEST_CASE("overlapping records on one channel are detected") {
    std::vector<OccupancyRecord> records;
    records.push_back({1, 0, 0, 0, 1000, OccupancyKind::Exchange});
    records.push_back({2, 1, 0, 500, 1000, OccupancyKind::Exchange});  // other channel: fine
    verify_channel_records(records);

    records.push_back({1, 1, 0, 999, 10, OccupancyKind::Exchange});  // overlaps the first
    CHECK_THROWS_AS(verify_channel_records(records), std::logic_error);
}

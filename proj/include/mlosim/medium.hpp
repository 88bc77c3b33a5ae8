#ifndef MLOSIM_MEDIUM_HPP
#define MLOSIM_MEDIUM_HPP

#include <cstdint>
#include <vector>

#include "mlosim/time.hpp"

namespace mlosim {

enum class OccupancyKind : std::uint8_t { Exchange, CollisionBurst };

/// One backoff-expiry claim on a channel. Claims landing on the same
/// channel at the same tick collide; a sole claim is granted.
struct SeizeClaim {
    std::int32_t bss = -1;
    std::int32_t iface = -1;
    std::uint32_t n_mpdu = 0;
};

struct OccupancyRecord {
    std::int32_t channel = 0;  // 1-based
    std::int32_t bss = -1;     // first seizer for a collision burst
    std::int32_t iface = -1;
    Ticks start = 0;
    Ticks duration = 0;
    OccupancyKind kind = OccupancyKind::Exchange;
};

/// Current holder(s) of a channel; claims has one entry for an exchange,
/// two or more for a merged collision burst.
struct ChannelOccupancy {
    OccupancyKind kind = OccupancyKind::Exchange;
    std::vector<SeizeClaim> claims;
    Ticks start = 0;
    Ticks end = 0;  // end-exclusive: the channel is idle at exactly `end`
};

class ChannelListener {
  public:
    virtual ~ChannelListener() = default;
    virtual void on_busy_start(std::int32_t channel) = 0;
    virtual void on_idle_start(std::int32_t channel) = 0;
};

/// The orthogonal radio channels: occupancy state, carrier-sense queries,
/// same-tick seizure collection and busy/idle fanout. Every subscribed
/// listener hears exactly one on_busy_start per begin_* and one
/// on_idle_start per notify_idle, in subscription order. Channels never
/// interact; ids are 1-based.
class Medium {
  public:
    explicit Medium(std::int32_t channel_count);

    std::int32_t channel_count() const { return static_cast<std::int32_t>(channels_.size()); }

    /// Registers for busy/idle transitions on one channel. Idempotent.
    void subscribe(std::int32_t channel, ChannelListener* listener);

    bool sense_busy(std::int32_t channel) const;

    /// Collects a same-tick seizure claim. Returns true when this claim
    /// opened the pending set, i.e. the caller must schedule the single
    /// zero-delay resolve for this channel.
    bool add_seizer(std::int32_t channel, const SeizeClaim& claim);

    std::vector<SeizeClaim> take_seizers(std::int32_t channel);

    /// Sole seizer won the tick: channel busy for [now, now+duration),
    /// one occupancy record appended, listeners get on_busy_start.
    void begin_exchange(std::int32_t channel, const SeizeClaim& winner, Ticks now, Ticks duration);

    /// Two or more same-tick seizers: all fail; the merged RTS burst
    /// occupies the channel, listeners get one on_busy_start.
    void begin_collision(std::int32_t channel, std::vector<SeizeClaim> losers, Ticks now,
                         Ticks duration);

    /// Clears the occupancy ending exactly now and returns it. Emits no
    /// notification: the caller settles the transmitter's bookkeeping
    /// first, then calls notify_idle.
    ChannelOccupancy release(std::int32_t channel, Ticks now);

    void notify_idle(std::int32_t channel);

    const std::vector<OccupancyRecord>& records() const { return records_; }
    Ticks busy_ticks(std::int32_t channel) const;

  private:
    struct Channel {
        bool busy = false;
        ChannelOccupancy occupancy;
        std::vector<SeizeClaim> pending;
        std::vector<ChannelListener*> listeners;
        Ticks busy_total = 0;
    };

    Channel& at(std::int32_t channel);
    const Channel& at(std::int32_t channel) const;
    void begin(std::int32_t channel, OccupancyKind kind, std::vector<SeizeClaim> claims, Ticks now,
               Ticks duration);

    std::vector<Channel> channels_;
    std::vector<OccupancyRecord> records_;
};

}  // namespace mlosim

#endif

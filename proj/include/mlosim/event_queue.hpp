#ifndef MLOSIM_EVENT_QUEUE_HPP
#define MLOSIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "mlosim/time.hpp"

namespace mlosim {

enum class EventKind : std::uint8_t {
    PacketArrival,
    DifsEnd,
    BackoffExpiry,
    SeizeResolve,
    TxEnd,
    SimEnd,
};

/// One scheduled occurrence. (time, seq) is a strict total order over all
/// live events: ties in time fire in schedule order, so simultaneous RTS
/// starts stay visible to the medium instead of being hidden by the queue.
struct Event {
    Ticks time = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::SimEnd;
    std::int32_t bss = -1;
    std::int32_t iface = -1;
    std::int32_t channel = -1;
};

struct EventHandle {
    std::uint64_t seq = 0;  // 0 = never scheduled
    bool valid() const { return seq != 0; }
};

enum class CancelResult { Cancelled, AlreadyDead };

/// Future-event list with a monotone clock and cancellable entries.
/// Cancelled events never fire; cancelling twice (or after the fire) is a
/// no-op reporting AlreadyDead.
class EventQueue {
  public:
    EventHandle schedule(Ticks delay, EventKind kind, std::int32_t bss = -1,
                         std::int32_t iface = -1, std::int32_t channel = -1);

    CancelResult cancel(EventHandle handle);

    /// Pops the minimum (time, seq) live event and advances the clock to
    /// its fire time. Empty optional when nothing is left.
    std::optional<Event> next();

    Ticks now() const { return now_; }
    std::size_t live_count() const { return live_.size(); }

  private:
    struct HeapEntry {
        Ticks time;
        std::uint64_t seq;
        bool operator>(const HeapEntry& other) const {
            if (time != other.time) return time > other.time;
            return seq > other.seq;
        }
    };

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
    std::unordered_map<std::uint64_t, Event> live_;
    Ticks now_ = 0;
    std::uint64_t next_seq_ = 1;
};

}  // namespace mlosim

#endif

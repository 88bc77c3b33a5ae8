#include "mlosim/event_queue.hpp"

#include <stdexcept>

namespace mlosim {

EventHandle EventQueue::schedule(Ticks delay, EventKind kind, std::int32_t bss,
                                 std::int32_t iface, std::int32_t channel) {
    const Ticks fire_time = now_ + delay;
    if (fire_time < now_) {
        throw std::overflow_error("simulation tick arithmetic overflowed");
    }
    Event ev;
    ev.time = fire_time;
    ev.seq = next_seq_++;
    ev.kind = kind;
    ev.bss = bss;
    ev.iface = iface;
    ev.channel = channel;
    heap_.push(HeapEntry{fire_time, ev.seq});
    live_.emplace(ev.seq, ev);
    return EventHandle{ev.seq};
}

CancelResult EventQueue::cancel(EventHandle handle) {
    if (!handle.valid()) return CancelResult::AlreadyDead;
    return live_.erase(handle.seq) > 0 ? CancelResult::Cancelled : CancelResult::AlreadyDead;
}

std::optional<Event> EventQueue::next() {
    while (!heap_.empty()) {
        const HeapEntry top = heap_.top();
        heap_.pop();
        auto it = live_.find(top.seq);
        if (it == live_.end()) continue;  // cancelled; tombstone in the heap
        Event ev = it->second;
        live_.erase(it);
        now_ = ev.time;  // monotone: heap minimum never precedes the clock
        return ev;
    }
    return std::nullopt;
}

}  // namespace mlosim

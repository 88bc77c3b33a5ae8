#include "mlosim/mac.hpp"

#include <algorithm>
#include <sstream>

namespace mlosim {

std::string to_string(IfaceState state) {
    switch (state) {
        case IfaceState::Idle: return "Idle";
        case IfaceState::DifsWait: return "DifsWait";
        case IfaceState::Counting: return "Counting";
        case IfaceState::Frozen: return "Frozen";
        case IfaceState::Transmitting: return "Transmitting";
        case IfaceState::LockedOut: return "LockedOut";
    }
    throw std::logic_error("bad interface state");
}

Bss::Bss(SimContext& ctx, std::int32_t index, const BssConfig& cfg, std::uint64_t master_seed,
         double arrival_rate_pps)
    : ctx_(ctx),
      index_(index),
      name_(cfg.name),
      policy_(cfg.policy),
      traffic_(cfg.traffic),
      rate_pps_(arrival_rate_pps),
      traffic_rng_(master_seed, fnv1a64(cfg.name), StreamPurpose::Traffic),
      backoff_rng_(master_seed, fnv1a64(cfg.name), StreamPurpose::Backoff) {
    ifaces_.resize(cfg.channels.size());
    tuners_.resize(cfg.channels.size());
    for (std::size_t i = 0; i < cfg.channels.size(); ++i) {
        ifaces_[i].channel = cfg.channels[i];
        ifaces_[i].cw = ctx_.params.cw_min;
        tuners_[i].bss = this;
        tuners_[i].iface = static_cast<std::int32_t>(i);
        ctx_.medium.subscribe(cfg.channels[i], &tuners_[i]);
    }
}

void Bss::fail(std::int32_t iface, const std::string& what) const {
    std::ostringstream os;
    os << "bss " << name_ << " iface " << iface << " (channel "
       << (iface >= 0 ? ifaces_[iface].channel : -1) << ", state "
       << (iface >= 0 ? to_string(ifaces_[iface].state) : "-") << ") at t=" << ctx_.queue.now()
       << "ns: " << what;
    throw std::logic_error(os.str());
}

void Bss::expect(std::int32_t iface, bool condition, const char* what) const {
    if (!condition) fail(iface, what);
}

void Bss::start() {
    if (traffic_ == TrafficMode::FullBuffer) {
        refill_full_buffer();
        kick_contention();
    } else {
        Ticks gap = exponential_interarrival(traffic_rng_, rate_pps_);
        ctx_.queue.schedule(gap, EventKind::PacketArrival, index_);
    }
}

std::size_t Bss::occupancy() const {
    std::size_t n = buffer_.size();
    for (const Interface& f : ifaces_) n += f.in_flight.size();
    return n;
}

void Bss::admit(Ticks arrival) {
    ctx_.stats.count_arrival(index_);
    // Frames stay in the transmit buffer until acknowledged, so a batch in
    // flight still occupies its slots and a failed one returns without
    // overflowing.
    if (occupancy() >= ctx_.params.buffer_capacity) {
        ctx_.stats.count_drop(index_, ctx_.queue.now());
        return;
    }
    Packet p;
    p.id = ctx_.next_packet_id++;
    p.bss = index_;
    p.bits = ctx_.params.frame_bits;
    p.arrival = arrival;
    buffer_.push_back(p);
}

void Bss::refill_full_buffer() {
    while (occupancy() < ctx_.params.buffer_capacity) admit(ctx_.queue.now());
}

void Bss::handle_packet_arrival() {
    bool was_empty = buffer_.empty();
    admit(ctx_.queue.now());
    if (was_empty && !buffer_.empty()) kick_contention();
    Ticks gap = exponential_interarrival(traffic_rng_, rate_pps_);
    ctx_.queue.schedule(gap, EventKind::PacketArrival, index_);
}

void Bss::kick_contention() {
    expect(-1, !buffer_.empty(), "contention kick with empty buffer");
    if (policy_ == AccessPolicy::MLSR) {
        // One in-flight exchange suppresses the whole BSS; the completion
        // path restarts the race on every link.
        for (const Interface& f : ifaces_)
            if (f.state != IfaceState::Idle) return;
        for (std::int32_t i = 0; i < interface_count(); ++i) start_access(i);
        return;
    }
    for (std::int32_t i = 0; i < interface_count(); ++i)
        if (ifaces_[i].state == IfaceState::Idle) start_access(i);
}

void Bss::start_access(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    expect(iface, f.state == IfaceState::Idle, "access start on non-idle interface");
    f.retained.reset();
    if (ctx_.medium.sense_busy(f.channel)) {
        f.state = IfaceState::Frozen;
        return;
    }
    begin_difs(iface);
}

void Bss::begin_difs(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    f.state = IfaceState::DifsWait;
    f.timer = ctx_.queue.schedule(ctx_.params.difs(), EventKind::DifsEnd, index_, iface, f.channel);
}

void Bss::handle_difs_end(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    expect(iface, f.state == IfaceState::DifsWait, "DIFS end outside DifsWait");
    expect(iface, !ctx_.medium.sense_busy(f.channel), "DIFS elapsed on a busy channel");
    f.timer = EventHandle{};
    if (buffer_.empty()) {  // drained by a sibling while we waited
        f.state = IfaceState::Idle;
        f.retained.reset();
        return;
    }
    f.counter = f.retained ? *f.retained : draw_backoff(backoff_rng_, f.cw);
    f.retained.reset();
    if (f.counter == 0) {
        seize_now(iface);
        return;
    }
    f.state = IfaceState::Counting;
    f.count_start = ctx_.queue.now();
    f.timer = ctx_.queue.schedule(Ticks{f.counter} * ctx_.params.slot(), EventKind::BackoffExpiry,
                                  index_, iface, f.channel);
}

void Bss::handle_backoff_expiry(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    expect(iface, f.state == IfaceState::Counting, "backoff expiry outside Counting");
    expect(iface, !ctx_.medium.sense_busy(f.channel), "backoff expiry on a busy channel");
    f.timer = EventHandle{};
    f.counter = 0;
    seize_now(iface);
}

void Bss::seize_now(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    if (buffer_.empty()) {  // race with in-flight siblings draining the buffer
        f.state = IfaceState::Idle;
        return;
    }
    if (policy_ == AccessPolicy::MLSR) lock_siblings(iface);

    std::size_t n = std::min<std::size_t>(buffer_.size(), ctx_.params.max_ampdu);
    f.in_flight.assign(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(n));
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(n));

    f.state = IfaceState::Transmitting;
    SeizeClaim claim{index_, iface, static_cast<std::uint32_t>(n)};
    if (ctx_.medium.add_seizer(f.channel, claim))
        ctx_.queue.schedule(0, EventKind::SeizeResolve, -1, -1, f.channel);
}

void Bss::lock_siblings(std::int32_t winner) {
    for (std::int32_t i = 0; i < interface_count(); ++i) {
        if (i == winner) continue;
        Interface& f = ifaces_[i];
        expect(i,
               f.state == IfaceState::DifsWait || f.state == IfaceState::Counting ||
                   f.state == IfaceState::Frozen,
               "sibling not racing at lockout");
        if (f.timer.valid()) {
            ctx_.queue.cancel(f.timer);
            f.timer = EventHandle{};
        }
        f.retained.reset();
        f.state = IfaceState::LockedOut;
    }
}

void Bss::return_batch_to_buffer(std::vector<Packet>& batch) {
    // Buffer ids are ascending; splice the contiguous batch back where its
    // ids belong so FIFO order survives overlapping multi-link retries.
    auto pos = std::lower_bound(
        buffer_.begin(), buffer_.end(), batch.front().id,
        [](const Packet& queued, std::uint64_t id) { return queued.id < id; });
    buffer_.insert(pos, batch.begin(), batch.end());
    batch.clear();
}

void Bss::handle_exchange_end(std::int32_t iface, bool delivered) {
    Interface& f = ifaces_[iface];
    expect(iface, f.state == IfaceState::Transmitting, "exchange end outside Transmitting");
    expect(iface, !f.in_flight.empty(), "exchange end with no batch in flight");

    if (delivered) {
        for (const Packet& p : f.in_flight)
            ctx_.stats.record_delivery(p, ctx_.queue.now(), iface);
        f.in_flight.clear();
        f.cw = ctx_.params.cw_min;
        f.state = IfaceState::Idle;
        if (traffic_ == TrafficMode::FullBuffer) refill_full_buffer();
        if (policy_ == AccessPolicy::MLSR) {
            for (Interface& sib : ifaces_)
                if (sib.state == IfaceState::LockedOut) sib.state = IfaceState::Idle;
        }
        if (!buffer_.empty()) kick_contention();
        return;
    }

    return_batch_to_buffer(f.in_flight);
    if (ctx_.params.exponential_backoff) f.cw = std::min<std::uint32_t>(f.cw * 2 + 1, 1023);
    f.state = IfaceState::Idle;
    if (policy_ == AccessPolicy::MLSR) {
        for (Interface& sib : ifaces_)
            if (sib.state == IfaceState::LockedOut) sib.state = IfaceState::Idle;
        kick_contention();  // rerun the race on every link
        return;
    }
    start_access(iface);
}

void Bss::on_channel_busy(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    switch (f.state) {
        case IfaceState::Counting: {
            // Keep the whole slots that fully elapsed; the cut slot is lost.
            Ticks elapsed = ctx_.queue.now() - f.count_start;
            auto whole = static_cast<std::uint32_t>(elapsed / ctx_.params.slot());
            expect(iface, whole < f.counter, "countdown outlived its expiry");
            ctx_.queue.cancel(f.timer);
            f.timer = EventHandle{};
            f.retained = f.counter - whole;
            f.state = IfaceState::Frozen;
            break;
        }
        case IfaceState::DifsWait:
            // DIFS aborts; any retained countdown survives for the resume.
            ctx_.queue.cancel(f.timer);
            f.timer = EventHandle{};
            f.state = IfaceState::Frozen;
            break;
        case IfaceState::Idle:
        case IfaceState::Frozen:
        case IfaceState::Transmitting:
        case IfaceState::LockedOut:
            break;
    }
}

void Bss::on_channel_idle(std::int32_t iface) {
    Interface& f = ifaces_[iface];
    switch (f.state) {
        case IfaceState::Frozen:
            begin_difs(iface);
            break;
        case IfaceState::Idle:
            if (!buffer_.empty()) start_access(iface);
            break;
        case IfaceState::DifsWait:
        case IfaceState::Counting:
        case IfaceState::Transmitting:
        case IfaceState::LockedOut:
            break;
    }
}

std::size_t Bss::transmitting_count() const {
    std::size_t n = 0;
    for (const Interface& f : ifaces_)
        if (f.state == IfaceState::Transmitting) ++n;
    return n;
}

}  // namespace mlosim

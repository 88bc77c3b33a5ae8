#ifndef MLOSIM_MAC_HPP
#define MLOSIM_MAC_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "mlosim/config.hpp"
#include "mlosim/event_queue.hpp"
#include "mlosim/medium.hpp"
#include "mlosim/params.hpp"
#include "mlosim/rng.hpp"
#include "mlosim/stats.hpp"

namespace mlosim {

/// Refinement of the DCF access cycle. DifsWait and Counting together
/// make up classic "backoff"; Frozen covers both a suspended countdown
/// and waiting for a busy channel to clear before (re)starting DIFS.
/// LockedOut is MLSR-only: sibling suppressed while one link transmits.
enum class IfaceState : std::uint8_t {
    Idle,
    DifsWait,
    Counting,
    Frozen,
    Transmitting,
    LockedOut,
};

std::string to_string(IfaceState state);

/// Shared mutable plumbing handed to every BSS of one run.
struct SimContext {
    EventQueue& queue;
    Medium& medium;
    const PhyMacParams& params;
    StatsCollector& stats;
    std::uint64_t next_packet_id = 1;
};

/// One AP with 1..3 radio interfaces sharing a single FIFO buffer.
/// Owns the per-interface DCF state machines and applies the access
/// policy; the run loop dispatches events and medium notifications here.
class Bss {
  public:
    Bss(SimContext& ctx, std::int32_t index, const BssConfig& cfg, std::uint64_t master_seed,
        double arrival_rate_pps);

    Bss(const Bss&) = delete;
    Bss& operator=(const Bss&) = delete;

    /// FullBuffer: prefill and start contending. Poisson: schedule the
    /// first arrival.
    void start();

    void handle_packet_arrival();
    void handle_difs_end(std::int32_t iface);
    void handle_backoff_expiry(std::int32_t iface);

    /// Transmitter-side completion, called after Medium::release and
    /// before Medium::notify_idle. delivered=false is a collided RTS:
    /// the batch returns to the buffer in FIFO position and the
    /// interface recontends.
    void handle_exchange_end(std::int32_t iface, bool delivered);

    const std::string& name() const { return name_; }
    std::int32_t index() const { return index_; }
    AccessPolicy policy() const { return policy_; }
    TrafficMode traffic() const { return traffic_; }
    double arrival_rate_pps() const { return rate_pps_; }
    std::int32_t interface_count() const { return static_cast<std::int32_t>(ifaces_.size()); }
    std::int32_t channel_of(std::int32_t iface) const { return ifaces_[iface].channel; }
    IfaceState state(std::int32_t iface) const { return ifaces_[iface].state; }
    std::optional<std::uint32_t> retained_backoff(std::int32_t iface) const {
        return ifaces_[iface].retained;
    }
    std::uint32_t live_counter(std::int32_t iface) const { return ifaces_[iface].counter; }
    std::uint32_t current_cw(std::int32_t iface) const { return ifaces_[iface].cw; }
    std::size_t buffer_size() const { return buffer_.size(); }
    std::size_t in_flight_size(std::int32_t iface) const { return ifaces_[iface].in_flight.size(); }
    std::uint64_t buffer_front_id() const { return buffer_.front().id; }
    std::size_t transmitting_count() const;

  private:
    struct Interface {
        std::int32_t channel = 0;
        IfaceState state = IfaceState::Idle;
        std::optional<std::uint32_t> retained;  // slots left from a frozen countdown
        std::uint32_t counter = 0;              // length of the live countdown, slots
        Ticks count_start = 0;
        EventHandle timer;  // pending DifsEnd or BackoffExpiry
        std::vector<Packet> in_flight;
        std::uint32_t cw = 0;
    };

    // Medium fanout is per channel; this adapter pins it to an interface.
    struct Tuner final : ChannelListener {
        Bss* bss = nullptr;
        std::int32_t iface = -1;
        void on_busy_start(std::int32_t) override { bss->on_channel_busy(iface); }
        void on_idle_start(std::int32_t) override { bss->on_channel_idle(iface); }
    };

    void on_channel_busy(std::int32_t iface);
    void on_channel_idle(std::int32_t iface);

    void kick_contention();
    void start_access(std::int32_t iface);
    void begin_difs(std::int32_t iface);
    void seize_now(std::int32_t iface);
    void lock_siblings(std::int32_t winner);
    std::size_t occupancy() const;
    void admit(Ticks arrival);
    void refill_full_buffer();
    void return_batch_to_buffer(std::vector<Packet>& batch);
    [[noreturn]] void fail(std::int32_t iface, const std::string& what) const;
    void expect(std::int32_t iface, bool condition, const char* what) const;

    SimContext& ctx_;
    std::int32_t index_;
    std::string name_;
    AccessPolicy policy_;
    TrafficMode traffic_;
    double rate_pps_ = 0;
    std::vector<Interface> ifaces_;
    std::vector<Tuner> tuners_;
    std::deque<Packet> buffer_;
    RngStream traffic_rng_;
    RngStream backoff_rng_;
};

}  // namespace mlosim

#endif

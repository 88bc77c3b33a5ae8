#ifndef MLOSIM_SIMULATION_HPP
#define MLOSIM_SIMULATION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlosim/config.hpp"
#include "mlosim/event_queue.hpp"
#include "mlosim/mac.hpp"
#include "mlosim/medium.hpp"
#include "mlosim/stats.hpp"

namespace mlosim {

struct BssResult {
    std::string name;
    AccessPolicy policy = AccessPolicy::SL;
    std::int32_t links = 0;
    std::optional<double> load_fraction;  // absent for full-buffer traffic
    std::optional<double> offered_mbps;
    double throughput_mbps = 0;
    std::optional<DelaySummary> delay;  // absent when nothing was delivered
    std::uint64_t drops = 0;            // measurement window
    std::uint64_t deliveries = 0;       // measurement window
    // whole-run conservation counters
    std::uint64_t arrivals_raw = 0;
    std::uint64_t deliveries_raw = 0;
    std::uint64_t drops_raw = 0;
    std::uint64_t in_buffer_end = 0;
    std::uint64_t in_flight_end = 0;
};

struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    double duration_s = 0;
    double warmup_s = 0;
    std::string config_hash;
    std::vector<BssResult> bss;
    std::vector<double> channel_util;  // one entry per channel, window-clipped
    std::uint64_t total_deliveries = 0;
    bool small_sample = false;  // delivery trace below the 150000-entry bar
    std::uint64_t collision_bursts = 0;
    Ticks min_exchange = 0;  // envelope over all data exchanges, 0 if none
    Ticks max_exchange = 0;
};

/// Throws std::logic_error naming the first pair of overlapping
/// occupancy records on one channel (collision bursts are single merged
/// records, so any overlap is a bug).
void verify_channel_records(const std::vector<OccupancyRecord>& records);

/// One seeded, single-threaded event-loop execution of a scenario.
/// Identical (config, seed) pairs produce identical reports.
class SimulationRun {
  public:
    SimulationRun(const ScenarioConfig& cfg, std::uint64_t seed, bool keep_trace = false);

    /// Processes one event; false once SimEnd fired.
    bool step();

    /// Runs to completion.
    void run();

    /// Finalizes statistics. Call after run(); mid-run calls are allowed
    /// for tests but skip the end-of-run consistency checks.
    RunReport report();

    EventQueue& queue() { return queue_; }
    Medium& medium() { return medium_; }
    StatsCollector& stats() { return stats_; }
    Bss& bss(std::size_t i) { return *bss_[i]; }
    std::size_t bss_count() const { return bss_.size(); }
    Ticks now() const { return queue_.now(); }
    bool finished() const { return finished_; }
    const ScenarioConfig& config() const { return cfg_; }

  private:
    void dispatch(const Event& ev);
    void resolve_seizure(std::int32_t channel);
    void handle_tx_end(std::int32_t channel);
    void check_policy_bounds() const;

    ScenarioConfig cfg_;
    std::uint64_t seed_;
    Ticks warmup_ = 0;
    Ticks horizon_ = 0;
    EventQueue queue_;
    Medium medium_;
    StatsCollector stats_;
    SimContext ctx_;
    std::vector<std::unique_ptr<Bss>> bss_;
    bool finished_ = false;
};

}  // namespace mlosim

#endif

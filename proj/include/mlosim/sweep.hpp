#ifndef MLOSIM_SWEEP_HPP
#define MLOSIM_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mlosim/config.hpp"
#include "mlosim/simulation.hpp"

namespace mlosim {

/// One load point: either a single fraction applied to every BSS or one
/// fraction per BSS in name order.
struct SweepPoint {
    std::vector<double> loads;
};

struct SweepSpec {
    std::vector<SweepPoint> points;
    std::uint32_t replications = 1;
};

/// Replication-aggregated value.
struct Aggregate {
    double mean = 0, min = 0, max = 0;
    bool present = false;
};

struct SweepBssCell {
    std::string name;
    AccessPolicy policy = AccessPolicy::SL;
    std::int32_t links = 0;
    double load_fraction = 0;
    double offered_mbps = 0;
    Aggregate throughput_mbps;
    Aggregate delay_mean_ms, delay_p1_ms, delay_p99_ms;
    double drops_mean = 0;
};

struct SweepRow {
    SweepPoint point;
    std::vector<SweepBssCell> bss;
    std::vector<double> channel_util_mean;
    bool small_sample = false;  // any replication under the trace-volume bar
};

struct SweepResult {
    std::uint64_t master_seed = 0;
    double duration_s = 0;
    std::string scenario;
    std::vector<SweepRow> rows;
};

/// Parses the CLI load list: comma-separated percages, each either one
/// value ("10,20,30") or a per-BSS slash triple ("90/70/10,50/70/50").
SweepSpec parse_loads(const std::string& text, std::uint32_t replications);

/// Builds the per-point config: every BSS switched to Poisson traffic at
/// the point's load. Throws ConfigError when the point's arity does not
/// match the BSS count.
ScenarioConfig apply_point(const ScenarioConfig& base, const SweepPoint& point);

/// Runs points x replications, each with a seed derived from
/// (master seed, point index, replication index), and aggregates
/// mean/min/max across replications. Deterministic row order.
SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec);

}  // namespace mlosim

#endif

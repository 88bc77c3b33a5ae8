#include "mlosim/simulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mlosim/airtime.hpp"

namespace mlosim {

void verify_channel_records(const std::vector<OccupancyRecord>& records) {
    std::map<std::int32_t, Ticks> last_end;
    for (const OccupancyRecord& r : records) {  // append order is time order
        auto it = last_end.find(r.channel);
        if (it != last_end.end() && r.start < it->second) {
            std::ostringstream os;
            os << "overlapping occupancy on channel " << r.channel << ": record starting at "
               << r.start << "ns begins before " << it->second << "ns";
            throw std::logic_error(os.str());
        }
        last_end[r.channel] = r.start + r.duration;
    }
}

SimulationRun::SimulationRun(const ScenarioConfig& cfg, std::uint64_t seed, bool keep_trace)
    : cfg_(cfg),
      seed_(seed),
      warmup_(seconds_to_ticks(cfg.warmup_s)),
      horizon_(seconds_to_ticks(cfg.duration_s)),
      medium_(3),
      stats_(cfg.bss.size(), warmup_, horizon_, keep_trace),
      ctx_{queue_, medium_, cfg_.phy, stats_} {
    validate_config(cfg_);
    queue_.schedule(horizon_, EventKind::SimEnd);  // first seq: pops before same-tick events
    double reference_bps = cfg_.reference_mbps * 1e6;
    for (std::size_t i = 0; i < cfg_.bss.size(); ++i) {
        const BssConfig& bc = cfg_.bss[i];
        double rate = bc.traffic == TrafficMode::Poisson
                          ? load_to_rate(*bc.load, reference_bps, cfg_.phy.frame_bits)
                          : 0.0;
        bss_.push_back(
            std::make_unique<Bss>(ctx_, static_cast<std::int32_t>(i), bc, seed_, rate));
    }
    for (auto& b : bss_) b->start();
}

bool SimulationRun::step() {
    if (finished_) return false;
    std::optional<Event> ev = queue_.next();
    if (!ev || ev->kind == EventKind::SimEnd) {
        finished_ = true;
        return false;
    }
    dispatch(*ev);
    check_policy_bounds();
    return true;
}

void SimulationRun::run() {
    while (step()) {
    }
}

void SimulationRun::dispatch(const Event& ev) {
    switch (ev.kind) {
        case EventKind::PacketArrival:
            bss_[static_cast<std::size_t>(ev.bss)]->handle_packet_arrival();
            break;
        case EventKind::DifsEnd:
            bss_[static_cast<std::size_t>(ev.bss)]->handle_difs_end(ev.iface);
            break;
        case EventKind::BackoffExpiry:
            bss_[static_cast<std::size_t>(ev.bss)]->handle_backoff_expiry(ev.iface);
            break;
        case EventKind::SeizeResolve:
            resolve_seizure(ev.channel);
            break;
        case EventKind::TxEnd:
            handle_tx_end(ev.channel);
            break;
        case EventKind::SimEnd:
            break;
    }
}

void SimulationRun::resolve_seizure(std::int32_t channel) {
    std::vector<SeizeClaim> claims = medium_.take_seizers(channel);
    if (claims.empty())
        throw std::logic_error("seizure resolve with no pending claims on channel " +
                               std::to_string(channel));
    if (claims.size() == 1) {
        Ticks dur = exchange_duration(claims.front().n_mpdu, cfg_.phy);
        medium_.begin_exchange(channel, claims.front(), queue_.now(), dur);
        queue_.schedule(dur, EventKind::TxEnd, -1, -1, channel);
    } else {
        // All colliders lose; the merged RTS burst holds the channel.
        Ticks dur = rts_duration(cfg_.phy) + cfg_.phy.difs();
        medium_.begin_collision(channel, std::move(claims), queue_.now(), dur);
        queue_.schedule(dur, EventKind::TxEnd, -1, -1, channel);
    }
}

void SimulationRun::handle_tx_end(std::int32_t channel) {
    ChannelOccupancy occ = medium_.release(channel, queue_.now());
    bool delivered = occ.kind == OccupancyKind::Exchange;
    // Transmitters settle first (stamp deliveries or refile the batch,
    // restart their own access), then everyone hears the idle edge.
    for (const SeizeClaim& c : occ.claims)
        bss_[static_cast<std::size_t>(c.bss)]->handle_exchange_end(c.iface, delivered);
    medium_.notify_idle(channel);
}

void SimulationRun::check_policy_bounds() const {
    for (const auto& b : bss_) {
        std::size_t active = b->transmitting_count();
        std::size_t cap = b->policy() == AccessPolicy::MLSR
                              ? 1
                              : static_cast<std::size_t>(b->interface_count());
        if (active > cap)
            throw std::logic_error("bss " + b->name() + " has " + std::to_string(active) +
                                   " concurrent transmissions at t=" +
                                   std::to_string(queue_.now()) + "ns, policy allows " +
                                   std::to_string(cap));
    }
}

RunReport SimulationRun::report() {
    RunReport r;
    r.scenario = to_string(cfg_.preset);
    r.seed = seed_;
    r.duration_s = cfg_.duration_s;
    r.warmup_s = cfg_.warmup_s;
    r.config_hash = config_hash(cfg_);

    const Ticks window = horizon_ - warmup_;
    for (std::size_t i = 0; i < bss_.size(); ++i) {
        BssAccumulator& acc = stats_.mutable_bss()[i];
        const Bss& b = *bss_[i];
        BssResult res;
        res.name = b.name();
        res.policy = b.policy();
        res.links = b.interface_count();
        res.load_fraction = cfg_.bss[i].load;
        if (b.traffic() == TrafficMode::Poisson)
            res.offered_mbps = b.arrival_rate_pps() * static_cast<double>(cfg_.phy.frame_bits) / 1e6;
        res.throughput_mbps =
            static_cast<double>(acc.delivered_bits_window) * 1000.0 / static_cast<double>(window);
        res.delay = summarize_delays(acc.delays_window);
        res.drops = acc.drops_window;
        res.deliveries = acc.deliveries_window;
        res.arrivals_raw = acc.arrivals;
        res.deliveries_raw = acc.deliveries;
        res.drops_raw = acc.drops;
        res.in_buffer_end = b.buffer_size();
        for (std::int32_t k = 0; k < b.interface_count(); ++k)
            res.in_flight_end += b.in_flight_size(k);
        r.bss.push_back(std::move(res));
        r.total_deliveries += acc.deliveries_window;
    }
    r.small_sample = r.total_deliveries < 150000;

    r.channel_util.assign(static_cast<std::size_t>(medium_.channel_count()), 0.0);
    bool any_exchange = false;
    for (const OccupancyRecord& rec : medium_.records()) {
        Ticks lo = std::max(rec.start, warmup_);
        Ticks hi = std::min(rec.start + rec.duration, horizon_);
        if (hi > lo)
            r.channel_util[static_cast<std::size_t>(rec.channel - 1)] +=
                static_cast<double>(hi - lo) / static_cast<double>(window);
        if (rec.kind == OccupancyKind::CollisionBurst) {
            ++r.collision_bursts;
        } else {
            if (!any_exchange || rec.duration < r.min_exchange) r.min_exchange = rec.duration;
            if (!any_exchange || rec.duration > r.max_exchange) r.max_exchange = rec.duration;
            any_exchange = true;
        }
    }

    if (finished_) {
        verify_channel_records(medium_.records());
        for (const BssResult& res : r.bss) {
            std::uint64_t accounted =
                res.deliveries_raw + res.drops_raw + res.in_buffer_end + res.in_flight_end;
            if (res.arrivals_raw != accounted)
                throw std::logic_error("packet conservation broken for bss " + res.name + ": " +
                                       std::to_string(res.arrivals_raw) + " arrivals vs " +
                                       std::to_string(accounted) + " accounted");
        }
    }
    return r;
}

}  // namespace mlosim

#include "mlosim/medium.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mlosim {
namespace {

[[noreturn]] void protocol_violation(std::int32_t channel, Ticks now, const char* what) {
    std::ostringstream os;
    os << "protocol violation on channel " << channel << " at t=" << now << "ns: " << what;
    throw std::logic_error(os.str());
}

}  // namespace

Medium::Medium(std::int32_t channel_count) {
    if (channel_count < 1) throw std::invalid_argument("medium needs at least one channel");
    channels_.resize(static_cast<std::size_t>(channel_count));
}

Medium::Channel& Medium::at(std::int32_t channel) {
    if (channel < 1 || channel > channel_count())
        throw std::out_of_range("unknown channel id " + std::to_string(channel));
    return channels_[static_cast<std::size_t>(channel - 1)];
}

const Medium::Channel& Medium::at(std::int32_t channel) const {
    return const_cast<Medium*>(this)->at(channel);
}

void Medium::subscribe(std::int32_t channel, ChannelListener* listener) {
    auto& ls = at(channel).listeners;
    if (std::find(ls.begin(), ls.end(), listener) == ls.end()) ls.push_back(listener);
}

bool Medium::sense_busy(std::int32_t channel) const { return at(channel).busy; }

bool Medium::add_seizer(std::int32_t channel, const SeizeClaim& claim) {
    Channel& ch = at(channel);
    if (ch.busy) protocol_violation(channel, ch.occupancy.start, "seize while busy");
    ch.pending.push_back(claim);
    return ch.pending.size() == 1;
}

std::vector<SeizeClaim> Medium::take_seizers(std::int32_t channel) {
    Channel& ch = at(channel);
    std::vector<SeizeClaim> out;
    out.swap(ch.pending);
    return out;
}

void Medium::begin(std::int32_t channel, OccupancyKind kind, std::vector<SeizeClaim> claims,
                   Ticks now, Ticks duration) {
    Channel& ch = at(channel);
    if (ch.busy) protocol_violation(channel, now, "transmission start on busy channel");
    if (duration == 0) protocol_violation(channel, now, "zero-duration occupancy");
    ch.busy = true;
    ch.occupancy = ChannelOccupancy{kind, std::move(claims), now, now + duration};
    ch.busy_total += duration;
    records_.push_back(OccupancyRecord{channel, ch.occupancy.claims.front().bss,
                                       ch.occupancy.claims.front().iface, now, duration, kind});
    for (ChannelListener* l : ch.listeners) l->on_busy_start(channel);
}

void Medium::begin_exchange(std::int32_t channel, const SeizeClaim& winner, Ticks now,
                            Ticks duration) {
    begin(channel, OccupancyKind::Exchange, {winner}, now, duration);
}

void Medium::begin_collision(std::int32_t channel, std::vector<SeizeClaim> losers, Ticks now,
                             Ticks duration) {
    if (losers.size() < 2) protocol_violation(channel, now, "collision burst needs two seizers");
    begin(channel, OccupancyKind::CollisionBurst, std::move(losers), now, duration);
}

ChannelOccupancy Medium::release(std::int32_t channel, Ticks now) {
    Channel& ch = at(channel);
    if (!ch.busy) protocol_violation(channel, now, "release of idle channel");
    if (ch.occupancy.end != now) protocol_violation(channel, now, "release before occupancy end");
    ch.busy = false;
    return std::move(ch.occupancy);
}

void Medium::notify_idle(std::int32_t channel) {
    Channel& ch = at(channel);
    if (ch.busy) protocol_violation(channel, ch.occupancy.start, "idle notification while busy");
    for (ChannelListener* l : ch.listeners) l->on_idle_start(channel);
}

Ticks Medium::busy_ticks(std::int32_t channel) const { return at(channel).busy_total; }

}  // namespace mlosim

// Acceptance gate: ten end-to-end checks of the simulator against its
// calibration targets, one verdict line each. Exit code is the number of
// failed criteria. Runs are memoized, so the whole gate costs a handful
// of 100 s simulations.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlosim/airtime.hpp"
#include "mlosim/config.hpp"
#include "mlosim/report_io.hpp"
#include "mlosim/simulation.hpp"
#include "mlosim/sweep.hpp"

using namespace mlosim;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr double kDuration = 100.0;

// Pinned tolerances.
constexpr double kReferenceMbps = 218.0;     // published single-link figure
constexpr double kReferenceTol = 0.03;       // C1: within 3% of the reference
constexpr double kOracleTol = 0.01;          // C1: within 1% of the closed form
constexpr double kScalingTol = 0.03;         // C2: 2x / 3x within 3%
constexpr double kParityTol = 0.02;          // C3: within 2% of single-link
constexpr double kTailContrast = 5.0;        // C4: p99 apart by at least 5x
constexpr double kIsolationTol = 0.15;       // C5: solo-equivalent within 15%
constexpr double kFairnessTol = 0.05;        // C7: race split within 5%
constexpr double kConservationTol = 0.15;    // C7: gain matches neighbors' loss
constexpr Ticks kExchangeFloor = 200 * kTicksPerUs;   // C8 envelope
constexpr Ticks kExchangeCeiling = 3600 * kTicksPerUs;
constexpr std::uint64_t kVolumeBar = 150000;  // C10 delivery count

struct Verdict {
    int order = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Verdict> verdicts;
std::vector<RunReport> all_reports;

void record(int order, const std::string& name, bool pass, const std::string& detail) {
    verdicts.push_back({order, name, pass, detail});
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// One cached run per (scenario shape, policy, links, load key).
std::map<std::string, RunReport> cache;

RunReport& run(const std::string& key, ScenarioConfig cfg) {
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    cfg.duration_s = kDuration;
    SimulationRun sim(cfg, kSeed);
    sim.run();
    RunReport report = sim.report();
    all_reports.push_back(report);
    return cache.emplace(key, std::move(report)).first->second;
}

RunReport& scenario1(AccessPolicy policy, int links,
                     std::optional<double> load = std::nullopt) {
    std::string key = "s1/" + to_string(policy) + "/" + std::to_string(links) + "/" +
                      (load ? std::to_string(*load) : "full");
    return run(key, make_scenario1(policy, links,
                                   load ? TrafficMode::Poisson : TrafficMode::FullBuffer, load));
}

RunReport& scenario2(AccessPolicy policy, std::optional<double> load = std::nullopt) {
    std::string key = "s2/" + to_string(policy) + "/" + (load ? std::to_string(*load) : "full");
    return run(key, make_scenario2(policy, 2,
                                   load ? TrafficMode::Poisson : TrafficMode::FullBuffer, load));
}

RunReport& scenario3(AccessPolicy policy, std::optional<double> a = std::nullopt,
                     std::optional<double> b = std::nullopt,
                     std::optional<double> c = std::nullopt) {
    std::string key = "s3/" + to_string(policy) + "/" +
                      (a ? std::to_string(*a) + "," + std::to_string(*b) + "," + std::to_string(*c)
                         : "full");
    return run(key, make_scenario3(policy, a ? TrafficMode::Poisson : TrafficMode::FullBuffer, a,
                                   b, c));
}

double tput(const RunReport& r, std::size_t bss = 0) { return r.bss[bss].throughput_mbps; }

double p99(const RunReport& r, std::size_t bss = 0) {
    return r.bss[bss].delay ? r.bss[bss].delay->p99_ms : 0.0;
}

double p1(const RunReport& r, std::size_t bss = 0) {
    return r.bss[bss].delay ? r.bss[bss].delay->p1_ms : 0.0;
}

double mean_delay(const RunReport& r, std::size_t bss = 0) {
    return r.bss[bss].delay ? r.bss[bss].delay->mean_ms : 0.0;
}

bool within(double value, double target, double tolerance) {
    return std::abs(value - target) <= tolerance * target;
}

// C1: uncontended single link saturates at the reference throughput.
void c1_single_link_saturation() {
    double measured = tput(scenario1(AccessPolicy::SL, 1));
    double oracle = saturation_throughput_bps(PhyMacParams{}) / 1e6;
    bool pass = within(measured, kReferenceMbps, kReferenceTol) &&
                within(measured, oracle, kOracleTol);
    record(1, "C1 single-link saturation", pass,
           fmt("measured %.2f Mbps, reference %.0f +-3%%, closed form %.2f +-1%%", measured,
               kReferenceMbps, oracle));
}

// C2: concurrent multi-link sums link capacities.
void c2_multi_link_scaling() {
    double base = tput(scenario1(AccessPolicy::SL, 1));
    double two = tput(scenario1(AccessPolicy::MLMR, 2));
    double three = tput(scenario1(AccessPolicy::MLMR, 3));
    bool pass = within(two, 2 * base, kScalingTol) && within(three, 3 * base, kScalingTol);
    record(2, "C2 concurrent scaling", pass,
           fmt("2 links %.1f vs %.1f, 3 links %.1f vs %.1f (+-3%%)", two, 2 * base, three,
               3 * base));
}

// C3: the single-radio race cannot beat one link on throughput.
void c3_race_equals_single_link() {
    double base = tput(scenario1(AccessPolicy::SL, 1));
    double two = tput(scenario1(AccessPolicy::MLSR, 2));
    double three = tput(scenario1(AccessPolicy::MLSR, 3));
    bool pass = within(two, base, kParityTol) && within(three, base, kParityTol);
    record(3, "C3 race parity", pass,
           fmt("2 links %.1f, 3 links %.1f vs single %.1f (+-2%%)", two, three, base));
}

// C4: at 90%% load the concurrent policy cuts the delay tail at least
// five-fold, and the third link adds less than the second did.
void c4_tail_contrast() {
    double sl = p99(scenario1(AccessPolicy::SL, 1, 0.9));
    double mlmr2 = p99(scenario1(AccessPolicy::MLMR, 2, 0.9));
    double mlmr3 = p99(scenario1(AccessPolicy::MLMR, 3, 0.9));
    bool contrast = mlmr2 > 0 && sl / mlmr2 >= kTailContrast;
    bool diminishing = (sl - mlmr2) > (mlmr2 - mlmr3) && mlmr3 <= mlmr2;
    record(4, "C4 tail contrast at 90% load", contrast && diminishing,
           fmt("p99 single %.2f ms, 2 links %.2f ms (%.2fx, need >=%.0fx), 3 links %.2f ms", sl,
               mlmr2, mlmr2 > 0 ? sl / mlmr2 : 0.0, kTailContrast, mlmr3));
}

// C5: with one node per link, racing over both channels behaves like an
// uncontended single link at every load.
void c5_race_isolation() {
    std::string detail;
    bool pass = true;
    for (double load : {0.1, 0.3, 0.5, 0.7}) {
        const RunReport& pair = scenario2(AccessPolicy::MLSR, load);
        const RunReport& solo = scenario1(AccessPolicy::SL, 1, load);
        for (std::size_t node = 0; node < 2; ++node) {
            bool mean_ok = within(mean_delay(pair, node), mean_delay(solo), kIsolationTol);
            bool tail_ok = within(p99(pair, node), p99(solo), kIsolationTol);
            pass = pass && mean_ok && tail_ok;
        }
        detail += fmt("%s%.0f%%: %.3f/%.3f ms vs %.3f/%.3f", detail.empty() ? "" : "; ",
                      load * 100, mean_delay(pair), p99(pair), mean_delay(solo), p99(solo));
    }
    record(5, "C5 race isolation on disjoint links", pass, detail + " (mean/p99, +-15%)");
}

// C6: under contention the concurrent policy spreads delays wider than
// the race: better best-case, worse tail.
void c6_contended_delay_spread() {
    bool pass = true;
    std::string detail;
    for (double load : {0.3, 0.5, 0.7}) {
        const RunReport& race = scenario2(AccessPolicy::MLSR, load);
        const RunReport& conc = scenario2(AccessPolicy::MLMR, load);
        for (std::size_t node = 0; node < 2; ++node) {
            pass = pass && p99(conc, node) > p99(race, node);
            pass = pass && p1(conc, node) < p1(race, node);
        }
        detail += fmt("%s%.0f%%: p99 %.2f>%.2f p1 %.3f<%.3f", detail.empty() ? "" : "; ",
                      load * 100, p99(conc), p99(race), p1(conc), p1(race));
    }
    record(6, "C6 concurrent spread under contention", pass, detail);
}

// C7: asymmetric neighborhood. Racing splits capacity evenly three ways;
// concurrency moves exactly the neighbors' loss to the middle node; and
// an uneven load mix resolves to a lower middle-node delay than an even
// heavier one.
void c7_asymmetric_neighborhood() {
    const RunReport& race = scenario3(AccessPolicy::MLSR);
    double a = tput(race, 0), b = tput(race, 1), c = tput(race, 2);
    double hi = std::max({a, b, c}), lo = std::min({a, b, c});
    bool fair = (hi - lo) / hi <= kFairnessTol;

    const RunReport& conc = scenario3(AccessPolicy::MLMR);
    double gain_b = tput(conc, 1) - b;  // what B wins by going concurrent
    double loss_ac = (a - tput(conc, 0)) + (c - tput(conc, 2));
    bool conserved = loss_ac > 0 && within(gain_b, loss_ac, kConservationTol);

    const RunReport& uneven = scenario3(AccessPolicy::MLSR, 0.9, 0.7, 0.1);
    const RunReport& even = scenario3(AccessPolicy::MLSR, 0.5, 0.7, 0.5);
    bool ordered = mean_delay(uneven, 1) < mean_delay(even, 1);

    record(7, "C7 asymmetric neighborhood", fair && conserved && ordered,
           fmt("race split %.1f/%.1f/%.1f (spread %.1f%%, need <=5%%); concurrent B +%.1f vs "
               "A+C -%.1f Mbps; B delay %.2f < %.2f ms",
               a, b, c, 100 * (hi - lo) / hi, gain_b, loss_ac, mean_delay(uneven, 1),
               mean_delay(even, 1)));
}

// C8: every data exchange observed anywhere fits the physical envelope.
void c8_exchange_envelope() {
    bool pass = true;
    Ticks lo = ~Ticks{0}, hi = 0;
    for (const RunReport& r : all_reports) {
        if (r.max_exchange == 0) continue;  // no data exchanges in that run
        lo = std::min(lo, r.min_exchange);
        hi = std::max(hi, r.max_exchange);
        pass = pass && r.min_exchange >= kExchangeFloor && r.max_exchange <= kExchangeCeiling;
    }
    record(8, "C8 exchange envelope", pass,
           fmt("observed %.3f..%.3f ms across %zu runs (bounds %.1f..%.1f ms)", ticks_to_ms(lo),
               ticks_to_ms(hi), all_reports.size(), ticks_to_ms(kExchangeFloor),
               ticks_to_ms(kExchangeCeiling)));
}

// C9: structural properties: conservation on every run (report() checks
// and throws), determinism of a full run, and channel-record sanity.
void c9_properties() {
    ScenarioConfig cfg = make_scenario2(AccessPolicy::MLMR, 2, TrafficMode::Poisson, 0.6);
    cfg.duration_s = 10;

    SimulationRun first(cfg, 3);
    first.run();
    std::string csv_a = report_to_csv(first.report());
    verify_channel_records(first.medium().records());

    SimulationRun second(cfg, 3);
    second.run();
    std::string csv_b = report_to_csv(second.report());

    bool deterministic = csv_a == csv_b;
    bool conserved = true;
    for (const RunReport& r : all_reports) {
        for (const BssResult& b : r.bss) {
            conserved = conserved && b.arrivals_raw == b.deliveries_raw + b.drops_raw +
                                                           b.in_buffer_end + b.in_flight_end;
        }
    }
    record(9, "C9 run properties", deterministic && conserved,
           fmt("replay %s, packet conservation %s over %zu runs",
               deterministic ? "identical" : "DIVERGED", conserved ? "exact" : "BROKEN",
               all_reports.size()));
}

// C10: the standard measurement volume is actually reached.
void c10_measurement_volume() {
    const RunReport& r = scenario1(AccessPolicy::SL, 1, 0.7);
    bool pass = r.total_deliveries >= kVolumeBar && !r.small_sample;
    record(10, "C10 measurement volume", pass,
           fmt("%llu deliveries at 70%% load (need >=%llu)",
               static_cast<unsigned long long>(r.total_deliveries),
               static_cast<unsigned long long>(kVolumeBar)));
}

}  // namespace

int main() {
    c1_single_link_saturation();
    c2_multi_link_scaling();
    c3_race_equals_single_link();
    c4_tail_contrast();
    c5_race_isolation();
    c6_contended_delay_spread();
    c7_asymmetric_neighborhood();
    c9_properties();
    c10_measurement_volume();
    c8_exchange_envelope();  // last: the envelope spans every run above

    std::sort(verdicts.begin(), verdicts.end(),
              [](const Verdict& a, const Verdict& b) { return a.order < b.order; });
    int failed = 0;
    for (const Verdict& v : verdicts) {
        std::printf("%-4s %-42s %s\n", v.pass ? "PASS" : "FAIL", v.name.c_str(),
                    v.detail.c_str());
        if (!v.pass) failed++;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(verdicts.size()) - failed,
                verdicts.size());
    return failed;
}

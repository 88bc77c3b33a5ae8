#include "mlosim/sweep.hpp"

#include <charconv>
#include <sstream>

#include "mlosim/rng.hpp"

namespace mlosim {
namespace {

double parse_percent(const std::string& tok) {
    double v = 0;
    std::size_t consumed = 0;
    try {
        v = std::stod(tok, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("bad load value '" + tok + "'");
    }
    if (consumed != tok.size()) throw ConfigError("bad load value '" + tok + "'");
    if (!(v > 0 && v <= 150)) throw ConfigError("load percent out of (0, 150]: '" + tok + "'");
    return v / 100.0;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss{text};
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

Aggregate aggregate(const std::vector<double>& xs) {
    Aggregate a;
    if (xs.empty()) return a;
    a.present = true;
    a.min = a.max = xs.front();
    double sum = 0;
    for (double x : xs) {
        sum += x;
        a.min = std::min(a.min, x);
        a.max = std::max(a.max, x);
    }
    a.mean = sum / static_cast<double>(xs.size());
    return a;
}

}  // namespace

SweepSpec parse_loads(const std::string& text, std::uint32_t replications) {
    SweepSpec spec;
    spec.replications = replications;
    if (replications < 1) throw ConfigError("replication count must be at least 1");
    for (const std::string& point_tok : split(text, ',')) {
        if (point_tok.empty()) throw ConfigError("empty load point in '" + text + "'");
        SweepPoint point;
        for (const std::string& v : split(point_tok, '/')) point.loads.push_back(parse_percent(v));
        spec.points.push_back(std::move(point));
    }
    if (spec.points.empty()) throw ConfigError("no load points given");
    return spec;
}

ScenarioConfig apply_point(const ScenarioConfig& base, const SweepPoint& point) {
    ScenarioConfig cfg = base;
    if (point.loads.size() != 1 && point.loads.size() != cfg.bss.size())
        throw ConfigError("load point has " + std::to_string(point.loads.size()) +
                          " values for " + std::to_string(cfg.bss.size()) + " bss");
    for (std::size_t i = 0; i < cfg.bss.size(); ++i) {
        cfg.bss[i].traffic = TrafficMode::Poisson;
        cfg.bss[i].load = point.loads.size() == 1 ? point.loads[0] : point.loads[i];
    }
    validate_config(cfg);
    return cfg;
}

SweepResult run_sweep(const ScenarioConfig& base, const SweepSpec& spec) {
    SweepResult result;
    result.master_seed = base.seed;
    result.duration_s = base.duration_s;
    result.scenario = to_string(base.preset);

    for (std::size_t pi = 0; pi < spec.points.size(); ++pi) {
        ScenarioConfig cfg = apply_point(base, spec.points[pi]);
        std::vector<RunReport> reps;
        for (std::uint32_t rep = 0; rep < spec.replications; ++rep) {
            SimulationRun run(cfg, derive_run_seed(cfg.seed, pi, rep));
            run.run();
            reps.push_back(run.report());
        }

        SweepRow row;
        row.point = spec.points[pi];
        row.channel_util_mean.assign(reps.front().channel_util.size(), 0.0);
        for (const RunReport& r : reps) {
            row.small_sample = row.small_sample || r.small_sample;
            for (std::size_t c = 0; c < r.channel_util.size(); ++c)
                row.channel_util_mean[c] += r.channel_util[c] / static_cast<double>(reps.size());
        }
        for (std::size_t b = 0; b < cfg.bss.size(); ++b) {
            SweepBssCell cell;
            cell.name = reps.front().bss[b].name;
            cell.policy = reps.front().bss[b].policy;
            cell.links = reps.front().bss[b].links;
            cell.load_fraction = *cfg.bss[b].load;
            cell.offered_mbps = reps.front().bss[b].offered_mbps.value_or(0);
            std::vector<double> tput, dmean, dp1, dp99;
            double drops = 0;
            for (const RunReport& r : reps) {
                tput.push_back(r.bss[b].throughput_mbps);
                drops += static_cast<double>(r.bss[b].drops);
                if (r.bss[b].delay) {
                    dmean.push_back(r.bss[b].delay->mean_ms);
                    dp1.push_back(r.bss[b].delay->p1_ms);
                    dp99.push_back(r.bss[b].delay->p99_ms);
                }
            }
            cell.throughput_mbps = aggregate(tput);
            cell.delay_mean_ms = aggregate(dmean);
            cell.delay_p1_ms = aggregate(dp1);
            cell.delay_p99_ms = aggregate(dp99);
            cell.drops_mean = drops / static_cast<double>(reps.size());
            row.bss.push_back(std::move(cell));
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace mlosim

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "mlosim/airtime.hpp"
#include "mlosim/config.hpp"
#include "mlosim/report_io.hpp"
#include "mlosim/simulation.hpp"
#include "mlosim/sweep.hpp"

namespace py = pybind11;
using namespace mlosim;

namespace {

py::object opt(std::optional<double> v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::object delay_dict(const std::optional<DelaySummary>& d) {
    if (!d) return py::none();
    py::dict out;
    out["count"] = d->count;
    out["mean_ms"] = d->mean_ms;
    out["min_ms"] = d->min_ms;
    out["max_ms"] = d->max_ms;
    out["p1_ms"] = d->p1_ms;
    out["p50_ms"] = d->p50_ms;
    out["p99_ms"] = d->p99_ms;
    return out;
}

py::object agg_dict(const Aggregate& a) {
    if (!a.present) return py::none();
    py::dict out;
    out["mean"] = a.mean;
    out["min"] = a.min;
    out["max"] = a.max;
    return out;
}

py::dict report_dict(const RunReport& r) {
    py::dict out;
    out["scenario"] = r.scenario;
    out["seed"] = r.seed;
    out["duration_s"] = r.duration_s;
    out["warmup_s"] = r.warmup_s;
    out["config_hash"] = r.config_hash;
    py::list bss;
    for (const BssResult& b : r.bss) {
        py::dict cell;
        cell["name"] = b.name;
        cell["policy"] = to_string(b.policy);
        cell["links"] = b.links;
        cell["load_fraction"] = opt(b.load_fraction);
        cell["offered_mbps"] = opt(b.offered_mbps);
        cell["throughput_mbps"] = b.throughput_mbps;
        cell["delay"] = delay_dict(b.delay);
        cell["drops"] = b.drops;
        cell["deliveries"] = b.deliveries;
        cell["arrivals_raw"] = b.arrivals_raw;
        cell["deliveries_raw"] = b.deliveries_raw;
        cell["drops_raw"] = b.drops_raw;
        bss.append(cell);
    }
    out["bss"] = bss;
    out["channel_util"] = r.channel_util;
    out["total_deliveries"] = r.total_deliveries;
    out["small_sample"] = r.small_sample;
    out["collision_bursts"] = r.collision_bursts;
    out["csv"] = report_to_csv(r);
    out["summary"] = report_to_summary(r);
    return out;
}

py::dict run_scenario(const std::string& config_text, std::optional<std::uint64_t> seed,
                      std::optional<double> duration_s, bool keep_trace) {
    ScenarioConfig cfg = parse_config(config_text);
    if (duration_s) {
        cfg.duration_s = *duration_s;
        validate_config(cfg);
    }
    SimulationRun sim(cfg, seed ? *seed : cfg.seed, keep_trace);
    sim.run();
    py::dict out = report_dict(sim.report());
    if (keep_trace) {
        std::vector<std::string> names;
        for (const BssConfig& b : cfg.bss) names.push_back(b.name);
        py::list trace;
        for (const DeliveryRecord& d : sim.stats().trace()) {
            py::dict row;
            row["packet_id"] = d.packet_id;
            row["bss"] = names[static_cast<std::size_t>(d.bss)];
            row["iface"] = d.iface;
            row["bits"] = d.bits;
            row["arrival_us"] = ticks_to_us(d.arrival);
            row["delivery_us"] = ticks_to_us(d.delivery);
            trace.append(row);
        }
        out["trace"] = trace;
    }
    return out;
}

py::dict sweep_scenario(const std::string& config_text, const std::string& loads,
                        std::uint32_t replications, std::optional<std::uint64_t> seed,
                        std::optional<double> duration_s) {
    ScenarioConfig cfg = parse_config(config_text);
    if (seed) cfg.seed = *seed;
    if (duration_s) cfg.duration_s = *duration_s;
    validate_config(cfg);
    SweepResult result = run_sweep(cfg, parse_loads(loads, replications));
    py::dict out;
    out["master_seed"] = result.master_seed;
    out["duration_s"] = result.duration_s;
    out["scenario"] = result.scenario;
    py::list rows;
    for (const SweepRow& row : result.rows) {
        py::dict r;
        r["loads"] = row.point.loads;
        r["channel_util_mean"] = row.channel_util_mean;
        r["small_sample"] = row.small_sample;
        py::list bss;
        for (const SweepBssCell& c : row.bss) {
            py::dict cell;
            cell["name"] = c.name;
            cell["policy"] = to_string(c.policy);
            cell["links"] = c.links;
            cell["load_fraction"] = c.load_fraction;
            cell["offered_mbps"] = c.offered_mbps;
            cell["throughput_mbps"] = agg_dict(c.throughput_mbps);
            cell["delay_mean_ms"] = agg_dict(c.delay_mean_ms);
            cell["delay_p1_ms"] = agg_dict(c.delay_p1_ms);
            cell["delay_p99_ms"] = agg_dict(c.delay_p99_ms);
            cell["drops_mean"] = c.drops_mean;
            bss.append(cell);
        }
        r["bss"] = bss;
        rows.append(r);
    }
    out["rows"] = rows;
    out["csv"] = sweep_to_csv(result);
    out["summary"] = sweep_to_summary(result);
    return out;
}

}  // namespace

PYBIND11_MODULE(mlosim, m) {
    m.doc() = "Multi-link Wi-Fi channel-access simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("canonical_config",
          [](const std::string& text) { return emit_config(parse_config(text)); },
          py::arg("config_text"),
          "Parse a scenario config and return its canonical text form.");

    m.def("config_hash",
          [](const std::string& text) { return config_hash(parse_config(text)); },
          py::arg("config_text"), "Stable hash of the parsed scenario config.");

    m.def("run", &run_scenario, py::arg("config_text"), py::arg("seed") = py::none(),
          py::arg("duration_s") = py::none(), py::arg("keep_trace") = false,
          "Run one seeded simulation and return the report as a dict "
          "(plus its csv/summary renderings and, optionally, the delivery trace).");

    m.def("sweep", &sweep_scenario, py::arg("config_text"), py::arg("loads"),
          py::arg("replications") = 1, py::arg("seed") = py::none(),
          py::arg("duration_s") = py::none(),
          "Run a load sweep (\"10,20,30\" or per-BSS \"90/70/10\") and return "
          "replication-aggregated rows as a dict.");

    m.def("exchange_duration_us",
          [](std::uint32_t n_mpdu) {
              return ticks_to_us(exchange_duration(n_mpdu, PhyMacParams{}));
          },
          py::arg("n_mpdu"),
          "Channel occupancy of one RTS/CTS + A-MPDU + block-ACK exchange, in us.");

    m.def("saturation_throughput_mbps",
          []() { return saturation_throughput_bps(PhyMacParams{}) / 1e6; },
          "Closed-form contention-free saturation throughput for the default PHY.");
}

#include "mlosim/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mlosim {
namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

struct CsvRow {
    std::string scenario, policy, bss;
    std::int32_t links = 0;
    std::string load_fraction, offered_mbps;  // may be empty
    double throughput_mbps = 0;
    std::string delay_mean_ms, delay_p1_ms, delay_p99_ms;  // may be empty
    std::uint64_t drops = 0;
    std::vector<double> util;
    std::uint64_t seed = 0;
    double duration_s = 0;
};

void append_row(std::ostringstream& os, const CsvRow& r) {
    os << r.scenario << ',' << r.policy << ',' << r.bss << ',' << r.links << ','
       << r.load_fraction << ',' << r.offered_mbps << ',' << fixed(r.throughput_mbps, 4) << ','
       << r.delay_mean_ms << ',' << r.delay_p1_ms << ',' << r.delay_p99_ms << ',' << r.drops;
    for (std::size_t c = 0; c < 3; ++c)
        os << ',' << fixed(c < r.util.size() ? r.util[c] : 0.0, 6);
    os << ',' << r.seed << ',' << fixed(r.duration_s, 3) << '\n';
}

}  // namespace

std::string csv_header() {
    return "scenario,policy,bss,links,load_fraction,offered_mbps,throughput_mbps,"
           "delay_mean_ms,delay_p1_ms,delay_p99_ms,drops,ch1_util,ch2_util,ch3_util,"
           "seed,duration_s\n";
}

std::string report_to_csv(const RunReport& report) {
    std::ostringstream os;
    os << csv_header();
    for (const BssResult& b : report.bss) {
        CsvRow row;
        row.scenario = report.scenario;
        row.policy = to_string(b.policy);
        row.bss = b.name;
        row.links = b.links;
        if (b.load_fraction) row.load_fraction = fixed(*b.load_fraction, 4);
        if (b.offered_mbps) row.offered_mbps = fixed(*b.offered_mbps, 4);
        row.throughput_mbps = b.throughput_mbps;
        if (b.delay) {
            row.delay_mean_ms = fixed(b.delay->mean_ms, 4);
            row.delay_p1_ms = fixed(b.delay->p1_ms, 4);
            row.delay_p99_ms = fixed(b.delay->p99_ms, 4);
        }
        row.drops = b.drops;
        row.util = report.channel_util;
        row.seed = report.seed;
        row.duration_s = report.duration_s;
        append_row(os, row);
    }
    return os.str();
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << csv_header();
    for (const SweepRow& row : result.rows) {
        for (const SweepBssCell& cell : row.bss) {
            CsvRow r;
            r.scenario = result.scenario;
            r.policy = to_string(cell.policy);
            r.bss = cell.name;
            r.links = cell.links;
            r.load_fraction = fixed(cell.load_fraction, 4);
            r.offered_mbps = fixed(cell.offered_mbps, 4);
            r.throughput_mbps = cell.throughput_mbps.mean;
            if (cell.delay_mean_ms.present) {
                r.delay_mean_ms = fixed(cell.delay_mean_ms.mean, 4);
                r.delay_p1_ms = fixed(cell.delay_p1_ms.mean, 4);
                r.delay_p99_ms = fixed(cell.delay_p99_ms.mean, 4);
            }
            r.drops = static_cast<std::uint64_t>(cell.drops_mean + 0.5);
            r.util = row.channel_util_mean;
            r.seed = result.master_seed;
            r.duration_s = result.duration_s;
            append_row(os, r);
        }
    }
    return os.str();
}

std::string report_to_summary(const RunReport& report) {
    std::ostringstream os;
    os << "scenario " << report.scenario << "  seed " << report.seed << "  duration "
       << fixed(report.duration_s, 1) << " s (warmup " << fixed(report.warmup_s, 1)
       << " s excluded)\n";
    os << "config " << report.config_hash << "\n\n";
    os << "bss  policy  links      load  offered     tput      mean        p1       p99     drops\n";
    os << "                               (Mbps)   (Mbps)      (ms)      (ms)      (ms)\n";
    for (const BssResult& b : report.bss) {
        char line[256];
        std::snprintf(line, sizeof line, "%-4s %-6s  %5d  %8s %8s %8.1f %9s %9s %9s %9llu\n",
                      b.name.c_str(), to_string(b.policy).c_str(), b.links,
                      b.load_fraction ? fixed(*b.load_fraction * 100, 0).append("%").c_str() : "full",
                      b.offered_mbps ? fixed(*b.offered_mbps, 1).c_str() : "-",
                      b.throughput_mbps,
                      b.delay ? fixed(b.delay->mean_ms, 2).c_str() : "-",
                      b.delay ? fixed(b.delay->p1_ms, 2).c_str() : "-",
                      b.delay ? fixed(b.delay->p99_ms, 2).c_str() : "-",
                      static_cast<unsigned long long>(b.drops));
        os << line;
    }
    os << "\nchannel utilization:";
    for (std::size_t c = 0; c < report.channel_util.size(); ++c)
        os << "  ch" << (c + 1) << " " << fixed(report.channel_util[c], 3);
    os << "\ndeliveries " << report.total_deliveries << "  collision bursts "
       << report.collision_bursts;
    if (report.max_exchange > 0)
        os << "  exchange " << fixed(ticks_to_ms(report.min_exchange), 3) << ".."
           << fixed(ticks_to_ms(report.max_exchange), 3) << " ms";
    os << "\n";
    if (report.small_sample)
        os << "warning: only " << report.total_deliveries
           << " deliveries in the measurement window; statistics may be noisy\n";
    return os.str();
}

std::string sweep_to_summary(const SweepResult& result) {
    std::ostringstream os;
    os << "scenario " << result.scenario << "  master seed " << result.master_seed
       << "  duration " << fixed(result.duration_s, 1) << " s per run\n\n";
    os << "load      bss  policy     tput (Mbps)            mean delay (ms)        p99 delay (ms)\n";
    os << "                          mean [min, max]        mean [min, max]        mean [min, max]\n";
    auto cell3 = [](const Aggregate& a, int dec) {
        if (!a.present) return std::string("-");
        return fixed(a.mean, dec) + " [" + fixed(a.min, dec) + ", " + fixed(a.max, dec) + "]";
    };
    for (const SweepRow& row : result.rows) {
        std::string loads;
        for (std::size_t i = 0; i < row.point.loads.size(); ++i)
            loads += (i ? "/" : "") + fixed(row.point.loads[i] * 100, 0);
        for (const SweepBssCell& cell : row.bss) {
            char line[256];
            std::snprintf(line, sizeof line, "%-9s %-4s %-6s  %-22s %-22s %-22s\n", loads.c_str(),
                          cell.name.c_str(), to_string(cell.policy).c_str(),
                          cell3(cell.throughput_mbps, 1).c_str(),
                          cell3(cell.delay_mean_ms, 2).c_str(),
                          cell3(cell.delay_p99_ms, 2).c_str());
            os << line;
        }
    }
    return os.str();
}

std::string trace_to_csv(const std::vector<DeliveryRecord>& trace,
                         const std::vector<std::string>& bss_names) {
    std::ostringstream os;
    os << "packet_id,bss,iface,bits,arrival_ns,delivery_ns,delay_ms\n";
    for (const DeliveryRecord& r : trace) {
        os << r.packet_id << ',' << bss_names[static_cast<std::size_t>(r.bss)] << ',' << r.iface
           << ',' << r.bits << ',' << r.arrival << ',' << r.delivery << ','
           << fixed(ticks_to_ms(r.delivery - r.arrival), 6) << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mlosim

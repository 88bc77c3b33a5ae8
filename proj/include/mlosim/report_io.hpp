#ifndef MLOSIM_REPORT_IO_HPP
#define MLOSIM_REPORT_IO_HPP

#include <string>
#include <vector>

#include "mlosim/simulation.hpp"
#include "mlosim/sweep.hpp"

namespace mlosim {

/// The stable machine-readable column set; every *_to_csv below starts
/// with exactly this line.
std::string csv_header();

/// One row per BSS. Optional fields (load under full-buffer traffic,
/// delays with zero deliveries) are left empty.
std::string report_to_csv(const RunReport& report);

/// One row per (load point, BSS); values are replication means, the seed
/// column carries the master seed the per-run seeds derive from.
std::string sweep_to_csv(const SweepResult& result);

std::string report_to_summary(const RunReport& report);
std::string sweep_to_summary(const SweepResult& result);

/// Raw per-packet delivery dump: one row per DeliveryRecord.
std::string trace_to_csv(const std::vector<DeliveryRecord>& trace,
                         const std::vector<std::string>& bss_names);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mlosim

#endif

#ifndef MLOSIM_CONFIG_HPP
#define MLOSIM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlosim/params.hpp"

namespace mlosim {

enum class AccessPolicy { SL, MLSR, MLMR };
enum class TrafficMode { FullBuffer, Poisson };
enum class Preset { ScenarioI, ScenarioII, ScenarioIII, Custom };

std::string to_string(AccessPolicy policy);
std::string to_string(TrafficMode mode);
std::string to_string(Preset preset);

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BssConfig {
    std::string name;
    AccessPolicy policy = AccessPolicy::SL;
    std::vector<int> channels;  // 1..3, unique, ascending; one interface each
    TrafficMode traffic = TrafficMode::FullBuffer;
    std::optional<double> load;  // fraction of the reference throughput; Poisson only

    int links() const { return static_cast<int>(channels.size()); }
    bool operator==(const BssConfig&) const = default;
};

struct ScenarioConfig {
    Preset preset = Preset::Custom;
    double duration_s = 100.0;
    double warmup_s = 1.0;
    std::uint64_t seed = 1;
    std::uint32_t replications = 1;
    double reference_mbps = 218.0;  // load normalization base
    std::vector<BssConfig> bss;     // kept sorted by name
    PhyMacParams phy;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parses the flat `section.key = value` format ('#' starts a comment).
/// Unknown keys, type mismatches and invariant violations throw
/// ConfigError naming the offending key and line. The result is fully
/// validated, with PHY/MAC defaults for omitted keys.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config_file(const std::string& path);

/// Canonical full dump; parse(emit(c)) == c bit-exactly.
std::string emit_config(const ScenarioConfig& config);

/// Structural checks: preset topology, channel ids, policy/link coupling,
/// traffic parameters. parse_config runs this before returning.
void validate_config(const ScenarioConfig& config);

/// FNV-1a of the canonical dump, as fixed-width hex.
std::string config_hash(const ScenarioConfig& config);

/// The three deployment presets. `mlo_policy` configures the multi-link
/// BSS(s); `links` the number of interfaces per MLO BSS.
ScenarioConfig make_scenario1(AccessPolicy policy, int links, TrafficMode traffic,
                              std::optional<double> load = std::nullopt);
ScenarioConfig make_scenario2(AccessPolicy mlo_policy, int links, TrafficMode traffic,
                              std::optional<double> load = std::nullopt);
ScenarioConfig make_scenario3(AccessPolicy mlo_policy, TrafficMode traffic,
                              std::optional<double> load_a = std::nullopt,
                              std::optional<double> load_b = std::nullopt,
                              std::optional<double> load_c = std::nullopt);

}  // namespace mlosim

#endif

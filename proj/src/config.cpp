#include "mlosim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mlosim/rng.hpp"

namespace mlosim {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
    std::ostringstream os;
    os << "config error";
    if (line > 0) os << " at line " << line;
    if (!key.empty()) os << " (key '" << key << "')";
    os << ": " << what;
    throw ConfigError(os.str());
}

struct RawEntry {
    std::string value;
    int line;
};

// One pass: comments stripped, keys uniqued, order of bss names preserved
// via first-seen index.
std::map<std::string, RawEntry> tokenize(std::string_view text) {
    std::map<std::string, RawEntry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "", "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) fail(line_no, "", "empty key");
        if (value.empty()) fail(line_no, key, "empty value");
        if (entries.count(key)) fail(line_no, key, "duplicate key (first at line " + std::to_string(entries[key].line) + ")");
        entries[key] = RawEntry{value, line_no};
    }
    return entries;
}

std::uint64_t parse_u64(const RawEntry& e, const std::string& key) {
    std::uint64_t v = 0;
    auto sv = trim(std::string_view(e.value));
    auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || p != sv.data() + sv.size())
        fail(e.line, key, "expected unsigned integer, got '" + e.value + "'");
    return v;
}

std::uint32_t parse_u32(const RawEntry& e, const std::string& key) {
    std::uint64_t v = parse_u64(e, key);
    if (v > UINT32_MAX) fail(e.line, key, "value out of range");
    return static_cast<std::uint32_t>(v);
}

double parse_double(const RawEntry& e, const std::string& key) {
    try {
        std::size_t consumed = 0;
        double v = std::stod(e.value, &consumed);
        if (trim(std::string_view(e.value).substr(consumed)).empty()) return v;
    } catch (const std::exception&) {
    }
    fail(e.line, key, "expected number, got '" + e.value + "'");
}

bool parse_bool(const RawEntry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, key, "expected true or false, got '" + e.value + "'");
}

AccessPolicy parse_policy(const RawEntry& e, const std::string& key) {
    if (e.value == "sl") return AccessPolicy::SL;
    if (e.value == "mlsr") return AccessPolicy::MLSR;
    if (e.value == "mlmr") return AccessPolicy::MLMR;
    fail(e.line, key, "expected sl, mlsr or mlmr, got '" + e.value + "'");
}

TrafficMode parse_traffic(const RawEntry& e, const std::string& key) {
    if (e.value == "full_buffer") return TrafficMode::FullBuffer;
    if (e.value == "poisson") return TrafficMode::Poisson;
    fail(e.line, key, "expected full_buffer or poisson, got '" + e.value + "'");
}

Preset parse_preset(const RawEntry& e, const std::string& key) {
    if (e.value == "scenario1") return Preset::ScenarioI;
    if (e.value == "scenario2") return Preset::ScenarioII;
    if (e.value == "scenario3") return Preset::ScenarioIII;
    if (e.value == "custom") return Preset::Custom;
    fail(e.line, key, "expected scenario1, scenario2, scenario3 or custom, got '" + e.value + "'");
}

std::vector<int> parse_channels(const RawEntry& e, const std::string& key) {
    std::vector<int> out;
    std::stringstream ss{e.value};
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto t = trim(tok);
        int ch = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), ch);
        if (ec != std::errc{} || p != t.data() + t.size())
            fail(e.line, key, "expected comma-separated channel ids, got '" + e.value + "'");
        out.push_back(ch);
    }
    if (out.empty()) fail(e.line, key, "expected at least one channel");
    return out;
}

// coding_rate is written as an exact rational, e.g. "5/6".
void parse_coding_rate(const RawEntry& e, const std::string& key, PhyMacParams& p) {
    std::size_t slash = e.value.find('/');
    if (slash == std::string::npos) fail(e.line, key, "expected num/den rational, got '" + e.value + "'");
    RawEntry num{e.value.substr(0, slash), e.line};
    RawEntry den{e.value.substr(slash + 1), e.line};
    p.coding_num = parse_u32(num, key);
    p.coding_den = parse_u32(den, key);
}

void apply_phy_key(const std::string& suffix, const RawEntry& e, const std::string& key, PhyMacParams& p) {
    if (suffix == "channel_width_mhz") p.channel_width_mhz = parse_u32(e, key);
    else if (suffix == "bits_per_qam_symbol") p.bits_per_qam_symbol = parse_u32(e, key);
    else if (suffix == "coding_rate") parse_coding_rate(e, key, p);
    else if (suffix == "spatial_streams") p.spatial_streams = parse_u32(e, key);
    else if (suffix == "data_subcarriers") p.data_subcarriers = parse_u32(e, key);
    else if (suffix == "legacy_preamble_us") p.legacy_preamble_us = parse_u64(e, key);
    else if (suffix == "he_su_preamble_us") p.he_su_preamble_us = parse_u64(e, key);
    else if (suffix == "ofdm_symbol_us") p.ofdm_symbol_us = parse_u64(e, key);
    else if (suffix == "legacy_symbol_us") p.legacy_symbol_us = parse_u64(e, key);
    else if (suffix == "legacy_control_rate") p.legacy_control_rate = parse_u64(e, key);
    else fail(e.line, key, "unknown key");
}

void apply_mac_key(const std::string& suffix, const RawEntry& e, const std::string& key, PhyMacParams& p) {
    if (suffix == "sifs_us") p.sifs_us = parse_u64(e, key);
    else if (suffix == "difs_us") p.difs_us = parse_u64(e, key);
    else if (suffix == "slot_us") p.slot_us = parse_u64(e, key);
    else if (suffix == "service_bits") p.service_bits = parse_u64(e, key);
    else if (suffix == "mac_header_bits") p.mac_header_bits = parse_u64(e, key);
    else if (suffix == "tail_bits") p.tail_bits = parse_u64(e, key);
    else if (suffix == "delimiter_bits") p.delimiter_bits = parse_u64(e, key);
    else if (suffix == "ack_bits") p.ack_bits = parse_u64(e, key);
    else if (suffix == "back_bits") p.back_bits = parse_u64(e, key);
    else if (suffix == "rts_bits") p.rts_bits = parse_u64(e, key);
    else if (suffix == "cts_bits") p.cts_bits = parse_u64(e, key);
    else if (suffix == "frame_bits") p.frame_bits = parse_u64(e, key);
    else if (suffix == "max_ampdu") p.max_ampdu = parse_u32(e, key);
    else if (suffix == "cw_min") p.cw_min = parse_u32(e, key);
    else if (suffix == "buffer_capacity") p.buffer_capacity = parse_u32(e, key);
    else if (suffix == "exponential_backoff") p.exponential_backoff = parse_bool(e, key);
    else fail(e.line, key, "unknown key");
}

}  // namespace

std::string to_string(AccessPolicy policy) {
    switch (policy) {
        case AccessPolicy::SL: return "sl";
        case AccessPolicy::MLSR: return "mlsr";
        case AccessPolicy::MLMR: return "mlmr";
    }
    throw std::logic_error("bad policy");
}

std::string to_string(TrafficMode mode) {
    return mode == TrafficMode::FullBuffer ? "full_buffer" : "poisson";
}

std::string to_string(Preset preset) {
    switch (preset) {
        case Preset::ScenarioI: return "scenario1";
        case Preset::ScenarioII: return "scenario2";
        case Preset::ScenarioIII: return "scenario3";
        case Preset::Custom: return "custom";
    }
    throw std::logic_error("bad preset");
}

ScenarioConfig parse_config(std::string_view text) {
    auto entries = tokenize(text);
    ScenarioConfig cfg;
    std::map<std::string, BssConfig> bss_by_name;
    std::map<std::string, int> bss_line;

    for (const auto& [key, entry] : entries) {
        if (key == "run.preset") cfg.preset = parse_preset(entry, key);
        else if (key == "run.duration_s") cfg.duration_s = parse_double(entry, key);
        else if (key == "run.warmup_s") cfg.warmup_s = parse_double(entry, key);
        else if (key == "run.seed") cfg.seed = parse_u64(entry, key);
        else if (key == "run.replications") cfg.replications = parse_u32(entry, key);
        else if (key == "run.reference_mbps") cfg.reference_mbps = parse_double(entry, key);
        else if (key.starts_with("phy.")) apply_phy_key(key.substr(4), entry, key, cfg.phy);
        else if (key.starts_with("mac.")) apply_mac_key(key.substr(4), entry, key, cfg.phy);
        else if (key.starts_with("bss.")) {
            std::size_t dot = key.find('.', 4);
            if (dot == std::string::npos || dot == 4) fail(entry.line, key, "expected bss.<name>.<field>");
            std::string name = key.substr(4, dot - 4);
            std::string field = key.substr(dot + 1);
            BssConfig& b = bss_by_name[name];
            b.name = name;
            if (!bss_line.count(name)) bss_line[name] = entry.line;
            if (field == "policy") b.policy = parse_policy(entry, key);
            else if (field == "channels") b.channels = parse_channels(entry, key);
            else if (field == "traffic") b.traffic = parse_traffic(entry, key);
            else if (field == "load") b.load = parse_double(entry, key);
            else fail(entry.line, key, "unknown key");
        } else {
            fail(entry.line, key, "unknown key");
        }
    }

    for (auto& [name, b] : bss_by_name) {
        if (b.channels.empty())
            fail(bss_line[name], "bss." + name + ".channels", "missing channel list");
        cfg.bss.push_back(std::move(b));
    }
    // std::map iteration already gives name order; keep it explicit.
    std::sort(cfg.bss.begin(), cfg.bss.end(),
              [](const BssConfig& a, const BssConfig& b) { return a.name < b.name; });

    validate_config(cfg);
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ScenarioConfig& cfg) {
    auto bail = [](const std::string& what) { throw ConfigError("config error: " + what); };

    if (!(cfg.duration_s > 0)) bail("run.duration_s must be positive");
    if (cfg.warmup_s < 0) bail("run.warmup_s must be non-negative");
    if (cfg.warmup_s >= cfg.duration_s) bail("run.warmup_s must be below run.duration_s");
    if (cfg.replications < 1) bail("run.replications must be at least 1");
    if (!(cfg.reference_mbps > 0)) bail("run.reference_mbps must be positive");
    try {
        cfg.phy.validate();
    } catch (const std::invalid_argument& e) {
        bail(e.what());
    }

    if (cfg.bss.empty()) bail("at least one bss.<name>.* block is required");
    std::set<std::string> names;
    for (const BssConfig& b : cfg.bss) {
        std::string who = "bss." + b.name;
        if (!names.insert(b.name).second) bail(who + " defined twice");
        if (b.channels.size() < 1 || b.channels.size() > 3)
            bail(who + ".channels must list 1 to 3 channels");
        std::set<int> uniq(b.channels.begin(), b.channels.end());
        if (uniq.size() != b.channels.size()) bail(who + ".channels has duplicates");
        if (!std::is_sorted(b.channels.begin(), b.channels.end()))
            bail(who + ".channels must be ascending");
        for (int ch : b.channels)
            if (ch < 1 || ch > 3) bail(who + ".channels: channel " + std::to_string(ch) + " does not exist");
        if (b.policy == AccessPolicy::SL && b.channels.size() != 1)
            bail(who + ": sl policy requires exactly one channel");
        if (b.policy != AccessPolicy::SL && b.channels.size() < 2)
            bail(who + ": " + to_string(b.policy) + " requires at least two channels");
        if (b.traffic == TrafficMode::Poisson) {
            if (!b.load) bail(who + ".load is required for poisson traffic");
            if (!(*b.load > 0 && *b.load <= 1.5)) bail(who + ".load must be in (0, 1.5]");
        } else if (b.load) {
            bail(who + ".load is only valid for poisson traffic");
        }
    }

    auto find = [&](const std::string& n) -> const BssConfig* {
        for (const BssConfig& b : cfg.bss)
            if (b.name == n) return &b;
        return nullptr;
    };

    switch (cfg.preset) {
        case Preset::ScenarioI: {
            if (cfg.bss.size() != 1) bail("scenario1 requires exactly one bss");
            const BssConfig& b = cfg.bss.front();
            std::vector<int> want(b.channels.size());
            for (std::size_t i = 0; i < want.size(); ++i) want[i] = static_cast<int>(i) + 1;
            if (b.channels != want) bail("scenario1 channels must be {1}, {1,2} or {1,2,3}");
            break;
        }
        case Preset::ScenarioII: {
            if (cfg.bss.size() != 2) bail("scenario2 requires exactly two bss");
            if (cfg.bss[0].channels != cfg.bss[1].channels)
                bail("scenario2 requires identical channel sets on both bss");
            for (const BssConfig& b : cfg.bss)
                if (b.policy == AccessPolicy::SL) bail("scenario2 bss must be multi-link");
            break;
        }
        case Preset::ScenarioIII: {
            const BssConfig* a = find("A");
            const BssConfig* b = find("B");
            const BssConfig* c = find("C");
            if (cfg.bss.size() != 3 || !a || !b || !c) bail("scenario3 requires bss A, B and C");
            if (a->policy != AccessPolicy::SL || a->channels != std::vector<int>{1})
                bail("scenario3 bss A must be sl on channel 1");
            if (c->policy != AccessPolicy::SL || c->channels != std::vector<int>{2})
                bail("scenario3 bss C must be sl on channel 2");
            if (b->policy == AccessPolicy::SL || b->channels != std::vector<int>{1, 2})
                bail("scenario3 bss B must be multi-link on channels 1,2");
            break;
        }
        case Preset::Custom:
            break;
    }
}

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "run.preset = " << to_string(cfg.preset) << "\n";
    os << "run.duration_s = " << cfg.duration_s << "\n";
    os << "run.warmup_s = " << cfg.warmup_s << "\n";
    os << "run.seed = " << cfg.seed << "\n";
    os << "run.replications = " << cfg.replications << "\n";
    os << "run.reference_mbps = " << cfg.reference_mbps << "\n";
    os << "\n";
    for (const BssConfig& b : cfg.bss) {
        os << "bss." << b.name << ".policy = " << to_string(b.policy) << "\n";
        os << "bss." << b.name << ".channels = ";
        for (std::size_t i = 0; i < b.channels.size(); ++i)
            os << (i ? "," : "") << b.channels[i];
        os << "\n";
        os << "bss." << b.name << ".traffic = " << to_string(b.traffic) << "\n";
        if (b.load) os << "bss." << b.name << ".load = " << *b.load << "\n";
        os << "\n";
    }
    const PhyMacParams& p = cfg.phy;
    os << "phy.channel_width_mhz = " << p.channel_width_mhz << "\n";
    os << "phy.bits_per_qam_symbol = " << p.bits_per_qam_symbol << "\n";
    os << "phy.coding_rate = " << p.coding_num << "/" << p.coding_den << "\n";
    os << "phy.spatial_streams = " << p.spatial_streams << "\n";
    os << "phy.data_subcarriers = " << p.data_subcarriers << "\n";
    os << "phy.legacy_preamble_us = " << p.legacy_preamble_us << "\n";
    os << "phy.he_su_preamble_us = " << p.he_su_preamble_us << "\n";
    os << "phy.ofdm_symbol_us = " << p.ofdm_symbol_us << "\n";
    os << "phy.legacy_symbol_us = " << p.legacy_symbol_us << "\n";
    os << "phy.legacy_control_rate = " << p.legacy_control_rate << "\n";
    os << "mac.sifs_us = " << p.sifs_us << "\n";
    os << "mac.difs_us = " << p.difs_us << "\n";
    os << "mac.slot_us = " << p.slot_us << "\n";
    os << "mac.service_bits = " << p.service_bits << "\n";
    os << "mac.mac_header_bits = " << p.mac_header_bits << "\n";
    os << "mac.tail_bits = " << p.tail_bits << "\n";
    os << "mac.delimiter_bits = " << p.delimiter_bits << "\n";
    os << "mac.ack_bits = " << p.ack_bits << "\n";
    os << "mac.back_bits = " << p.back_bits << "\n";
    os << "mac.rts_bits = " << p.rts_bits << "\n";
    os << "mac.cts_bits = " << p.cts_bits << "\n";
    os << "mac.frame_bits = " << p.frame_bits << "\n";
    os << "mac.max_ampdu = " << p.max_ampdu << "\n";
    os << "mac.cw_min = " << p.cw_min << "\n";
    os << "mac.buffer_capacity = " << p.buffer_capacity << "\n";
    os << "mac.exponential_backoff = " << (p.exponential_backoff ? "true" : "false") << "\n";
    return os.str();
}

std::string config_hash(const ScenarioConfig& cfg) {
    std::uint64_t h = fnv1a64(emit_config(cfg));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

ScenarioConfig make_scenario1(AccessPolicy policy, int links, TrafficMode traffic,
                              std::optional<double> load) {
    ScenarioConfig cfg;
    cfg.preset = Preset::ScenarioI;
    BssConfig a;
    a.name = "A";
    a.policy = policy;
    for (int i = 1; i <= links; ++i) a.channels.push_back(i);
    a.traffic = traffic;
    a.load = load;
    cfg.bss.push_back(std::move(a));
    validate_config(cfg);
    return cfg;
}

ScenarioConfig make_scenario2(AccessPolicy mlo_policy, int links, TrafficMode traffic,
                              std::optional<double> load) {
    ScenarioConfig cfg;
    cfg.preset = Preset::ScenarioII;
    for (const char* name : {"A", "B"}) {
        BssConfig b;
        b.name = name;
        b.policy = mlo_policy;
        for (int i = 1; i <= links; ++i) b.channels.push_back(i);
        b.traffic = traffic;
        b.load = load;
        cfg.bss.push_back(std::move(b));
    }
    validate_config(cfg);
    return cfg;
}

ScenarioConfig make_scenario3(AccessPolicy mlo_policy, TrafficMode traffic,
                              std::optional<double> load_a, std::optional<double> load_b,
                              std::optional<double> load_c) {
    ScenarioConfig cfg;
    cfg.preset = Preset::ScenarioIII;
    BssConfig a;
    a.name = "A";
    a.policy = AccessPolicy::SL;
    a.channels = {1};
    a.traffic = traffic;
    a.load = load_a;
    BssConfig b;
    b.name = "B";
    b.policy = mlo_policy;
    b.channels = {1, 2};
    b.traffic = traffic;
    b.load = load_b;
    BssConfig c;
    c.name = "C";
    c.policy = AccessPolicy::SL;
    c.channels = {2};
    c.traffic = traffic;
    c.load = load_c;
    cfg.bss.push_back(std::move(a));
    cfg.bss.push_back(std::move(b));
    cfg.bss.push_back(std::move(c));
    validate_config(cfg);
    return cfg;
}

}  // namespace mlosim

#include "omabench/campaign_config.hpp"

#include "omabench/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace omabench {

using nlohmann::ordered_json;

std::vector<double> CampaignConfig::default_noise_levels() { return {0.05, 0.10, 0.20, 0.50, 0.75, 1.00, 2.00}; }

StabilizationTolerances CampaignConfig::default_stabilization() {
    StabilizationTolerances tol;
    tol.band_lo_hz = 1.0;
    tol.band_hi_hz = 1500.0;
    return tol;
}

BeamModel CampaignConfig::beam_model(SupportCondition support) const {
    BeamModel model = beam;
    model.support = support;
    return model;
}

void CampaignConfig::validate() const {
    if (schema_version != kConfigSchemaVersion) {
        throw InvalidParameter("schema_version " + std::to_string(schema_version) + " is not supported (expected " +
                               std::to_string(kConfigSchemaVersion) + ")");
    }
    if (beams.empty()) throw InvalidParameter("beams: at least one beam is required");
    if (methods.empty()) throw InvalidParameter("methods: at least one method is required");
    if (runs < 1) throw InvalidParameter("runs must be >= 1");
    if (noise_levels.empty()) throw InvalidParameter("noise_levels: at least one level is required");
    for (double nl : noise_levels) {
        if (!(nl >= 0.0) || !std::isfinite(nl)) throw InvalidParameter("noise_levels must be finite and >= 0");
    }
    if (reference_modes < 1) throw InvalidParameter("reference_modes must be >= 1");
    if (!(damping_ratio > 0.0 && damping_ratio < 1.0)) throw InvalidParameter("damping_ratio must lie in (0, 1)");
    if (!(excitation.duration_s > 0.0) || !(excitation.time_step_s > 0.0)) {
        throw InvalidParameter("excitation duration and time step must be positive");
    }
    if (!(excitation.band_lo_hz >= 0.0 && excitation.band_lo_hz < excitation.band_hi_hz &&
          excitation.band_hi_hz <= 0.5 * excitation.sample_rate())) {
        throw InvalidParameter("excitation band must satisfy 0 <= lo < hi <= Nyquist");
    }
    if (!(excitation.rms_n >= 0.0)) throw InvalidParameter("excitation rms must be >= 0");
    if (hankel.block_rows < 1 || hankel.block_rows > 20) throw InvalidParameter("ssi.block_rows must lie in [1, 20]");
    if (hankel.orders.size() < 2) throw InvalidParameter("ssi.orders needs at least two orders");
    for (int order : hankel.orders) {
        if (order < 2 || order % 2 != 0) throw InvalidParameter("ssi.orders must be even and >= 2");
    }
    for (int q : hankel.decimation) {
        if (q < 1) throw InvalidParameter("ssi.decimation factors must be >= 1");
    }
    if (!(pairing.frequency_window > 0.0)) throw InvalidParameter("pairing.frequency_window must be positive");
    if (!(pairing.mac_threshold >= 0.0 && pairing.mac_threshold <= 1.0)) {
        throw InvalidParameter("pairing.mac_threshold must lie in [0, 1]");
    }
    if (jobs < 0) throw InvalidParameter("jobs must be >= 0");
    beam.validate();
}

namespace {

std::string_view window_name(WindowKind w) { return w == WindowKind::Hann ? "hann" : "rectangular"; }

WindowKind parse_window(const std::string& text) {
    if (text == "rectangular") return WindowKind::Rectangular;
    if (text == "hann") return WindowKind::Hann;
    throw InvalidParameter("unknown window '" + text + "'");
}

// Reads the keys of one JSON object, rejecting anything it does not know.
class Block {
public:
    Block(const ordered_json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw InvalidInput(where() + "must be a JSON object");
    }

    template <typename T>
    void read(const char* key, T& target) {
        seen_.insert(key);
        const auto it = node_.find(key);
        if (it == node_.end()) return;
        try {
            target = it->template get<T>();
        } catch (const nlohmann::json::exception&) {
            throw InvalidInput(where() + "'" + key + "' has the wrong type");
        }
    }

    template <typename T>
    void read(const char* key, std::optional<T>& target) {
        if (node_.contains(key)) read(key, target.emplace());
        seen_.insert(key);
    }

    const ordered_json* child(const char* key) {
        seen_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    std::string child_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& item : node_.items()) {
            if (!seen_.contains(item.key())) throw InvalidInput(where() + "unknown key '" + item.key() + "'");
        }
    }

private:
    std::string where() const { return path_.empty() ? "config: " : "config." + path_ + ": "; }

    const ordered_json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

}  // namespace

CampaignConfig parse_config(std::string_view json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
    }
    CampaignConfig cfg;
    Block top(root, "");
    top.read("schema_version", cfg.schema_version);

    // A present but empty list is kept so that validation rejects it.
    std::optional<std::vector<std::string>> beams;
    top.read("beams", beams);
    if (beams) {
        cfg.beams.clear();
        for (const auto& b : *beams) cfg.beams.push_back(parse_support(b));
    }
    std::optional<std::vector<std::string>> methods;
    top.read("methods", methods);
    if (methods) {
        cfg.methods.clear();
        for (const auto& m : *methods) cfg.methods.push_back(parse_method(m));
    }
    top.read("noise_levels", cfg.noise_levels);
    top.read("runs", cfg.runs);
    top.read("master_seed", cfg.master_seed);
    top.read("output_dir", cfg.output_dir);
    top.read("jobs", cfg.jobs);

    if (const auto* node = top.child("beam")) {
        Block b(*node, "beam");
        b.read("elastic_modulus", cfg.beam.material.elastic_modulus);
        b.read("mass_density", cfg.beam.material.mass_density);
        b.read("poisson_ratio", cfg.beam.material.poisson_ratio);
        b.read("width", cfg.beam.section.width);
        b.read("height", cfg.beam.section.height);
        b.read("length", cfg.beam.span_length);
        b.read("elements", cfg.beam.n_elements);
        b.read("damping_ratio", cfg.damping_ratio);
        b.read("reference_modes", cfg.reference_modes);
        b.finish();
    }
    if (const auto* node = top.child("excitation")) {
        Block e(*node, "excitation");
        e.read("duration_s", cfg.excitation.duration_s);
        e.read("time_step_s", cfg.excitation.time_step_s);
        e.read("band_lo_hz", cfg.excitation.band_lo_hz);
        e.read("band_hi_hz", cfg.excitation.band_hi_hz);
        e.read("rms_n", cfg.excitation.rms_n);
        e.finish();
    }
    if (const auto* node = top.child("spectral")) {
        Block s(*node, "spectral");
        std::string window(window_name(cfg.frequency_domain.spectral.window));
        s.read("window", window);
        cfg.frequency_domain.spectral.window = parse_window(window);
        s.read("segments", cfg.frequency_domain.spectral.segments);
        s.read("overlap", cfg.frequency_domain.spectral.overlap);
        s.finish();
    }
    if (const auto* node = top.child("peaks")) {
        Block p(*node, "peaks");
        p.read("min_prominence_db", cfg.frequency_domain.peaks.min_prominence_db);
        p.read("min_separation_hz", cfg.frequency_domain.peaks.min_separation_hz);
        p.read("band_lo_hz", cfg.frequency_domain.peaks.band_lo_hz);
        p.read("band_hi_hz", cfg.frequency_domain.peaks.band_hi_hz);
        p.finish();
    }
    if (const auto* node = top.child("ssi")) {
        Block s(*node, "ssi");
        s.read("block_rows", cfg.hankel.block_rows);
        s.read("orders", cfg.hankel.orders);
        s.read("detrend", cfg.hankel.detrend);
        s.read("decimation", cfg.hankel.decimation);
        s.read("frequency_tolerance", cfg.stabilization.frequency);
        s.read("damping_tolerance", cfg.stabilization.damping);
        s.read("mac_tolerance", cfg.stabilization.mac);
        s.read("min_stable_poles", cfg.stabilization.min_stable_poles);
        s.read("max_damping", cfg.stabilization.max_damping);
        s.read("band_lo_hz", cfg.stabilization.band_lo_hz);
        s.read("band_hi_hz", cfg.stabilization.band_hi_hz);
        s.finish();
    }
    if (const auto* node = top.child("pairing")) {
        Block p(*node, "pairing");
        p.read("frequency_window", cfg.pairing.frequency_window);
        p.read("mac_threshold", cfg.pairing.mac_threshold);
        p.finish();
    }
    top.finish();
    cfg.validate();
    return cfg;
}

CampaignConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const CampaignConfig& cfg) {
    ordered_json root;
    root["schema_version"] = cfg.schema_version;
    std::vector<std::string> beams;
    for (auto b : cfg.beams) beams.emplace_back(to_string(b));
    root["beams"] = beams;
    std::vector<std::string> methods;
    for (auto m : cfg.methods) methods.emplace_back(to_string(m));
    root["methods"] = methods;
    root["noise_levels"] = cfg.noise_levels;
    root["runs"] = cfg.runs;
    root["master_seed"] = cfg.master_seed;
    root["output_dir"] = cfg.output_dir;
    root["jobs"] = cfg.jobs;
    root["beam"] = {
        {"elastic_modulus", cfg.beam.material.elastic_modulus},
        {"mass_density", cfg.beam.material.mass_density},
        {"poisson_ratio", cfg.beam.material.poisson_ratio},
        {"width", cfg.beam.section.width},
        {"height", cfg.beam.section.height},
        {"length", cfg.beam.span_length},
        {"elements", cfg.beam.n_elements},
        {"damping_ratio", cfg.damping_ratio},
        {"reference_modes", cfg.reference_modes},
    };
    root["excitation"] = {
        {"duration_s", cfg.excitation.duration_s},   {"time_step_s", cfg.excitation.time_step_s},
        {"band_lo_hz", cfg.excitation.band_lo_hz},   {"band_hi_hz", cfg.excitation.band_hi_hz},
        {"rms_n", cfg.excitation.rms_n},
    };
    root["spectral"] = {
        {"window", window_name(cfg.frequency_domain.spectral.window)},
        {"segments", cfg.frequency_domain.spectral.segments},
        {"overlap", cfg.frequency_domain.spectral.overlap},
    };
    root["peaks"] = {
        {"min_prominence_db", cfg.frequency_domain.peaks.min_prominence_db},
        {"min_separation_hz", cfg.frequency_domain.peaks.min_separation_hz},
        {"band_lo_hz", cfg.frequency_domain.peaks.band_lo_hz},
        {"band_hi_hz", cfg.frequency_domain.peaks.band_hi_hz},
    };
    root["ssi"] = {
        {"block_rows", cfg.hankel.block_rows},
        {"orders", cfg.hankel.orders},
        {"detrend", cfg.hankel.detrend},
        {"decimation", cfg.hankel.decimation},
        {"frequency_tolerance", cfg.stabilization.frequency},
        {"damping_tolerance", cfg.stabilization.damping},
        {"mac_tolerance", cfg.stabilization.mac},
        {"min_stable_poles", cfg.stabilization.min_stable_poles},
        {"max_damping", cfg.stabilization.max_damping},
        {"band_lo_hz", cfg.stabilization.band_lo_hz},
        {"band_hi_hz", cfg.stabilization.band_hi_hz},
    };
    root["pairing"] = {
        {"frequency_window", cfg.pairing.frequency_window},
        {"mac_threshold", cfg.pairing.mac_threshold},
    };
    return root.dump(2) + "\n";
}

void save_config(const std::filesystem::path& path, const CampaignConfig& config) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write config '" + path.string() + "'");
    out << config_to_json(config);
}

}  // namespace omabench

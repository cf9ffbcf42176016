#pragma once

#include "omabench/beam_fem.hpp"
#include "omabench/identified_modes.hpp"
#include "omabench/modal_metrics.hpp"
#include "omabench/oma_freq.hpp"
#include "omabench/oma_ssi.hpp"
#include "omabench/seed.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace omabench {

inline constexpr int kConfigSchemaVersion = 1;

/// Band-limited random force applied at every channel node.
struct ExcitationOptions {
    double duration_s = 5.0;
    double time_step_s = 1.0e-4;
    double band_lo_hz = 1.0;
    double band_hi_hz = 1500.0;
    double rms_n = 0.2;

    double sample_rate() const { return 1.0 / time_step_s; }
};

struct CampaignConfig {
    int schema_version = kConfigSchemaVersion;
    std::vector<SupportCondition> beams{SupportCondition::CF, SupportCondition::SS, SupportCondition::CS,
                                        SupportCondition::CC};
    BeamModel beam;                 // support field is overridden per beam
    double damping_ratio = 0.025;
    int reference_modes = 5;
    ExcitationOptions excitation;
    std::vector<double> noise_levels = default_noise_levels();
    int runs = 20;
    std::vector<Method> methods{Method::PP, Method::FDD, Method::SSI};
    std::uint64_t master_seed = kDefaultSeed;
    FrequencyDomainOptions frequency_domain;
    HankelOptions hankel;
    StabilizationTolerances stabilization = default_stabilization();
    PairingOptions pairing;
    std::string output_dir = "oma_bench_out";
    int jobs = 0;                   // 0: decided by the caller

    /// 5%, 10%, 20%, 50%, 75%, 100% and 200% noise.
    static std::vector<double> default_noise_levels();
    /// Stability rules with the search band matched to the force band.
    static StabilizationTolerances default_stabilization();

    BeamModel beam_model(SupportCondition support) const;
    /// Throws InvalidParameter naming the offending field.
    void validate() const;
};

/// Parse JSON text. Missing keys keep their defaults, unknown keys are rejected.
CampaignConfig parse_config(std::string_view json_text);
CampaignConfig load_config(const std::filesystem::path& path);

/// Fully resolved JSON (every field written), stable key order.
std::string config_to_json(const CampaignConfig& config);
void save_config(const std::filesystem::path& path, const CampaignConfig& config);

}  // namespace omabench

#pragma once

#include "omabench/beam_fem.hpp"
#include "omabench/campaign_config.hpp"
#include "omabench/dsp.hpp"
#include "omabench/identified_modes.hpp"
#include "omabench/modal_metrics.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace omabench {

/// FE model, its reference modes and the noise-free response of one beam.
struct BeamCase {
    SupportCondition support = SupportCondition::CF;
    GlobalSystem system;
    ModalSolution reference;   // first `reference_modes` modes
    ModalSolution all_modes;   // every mode, drives the simulation
    MultiChannelRecord clean;

    std::string id() const { return std::string(to_string(support)); }
};

/// Force seed of one channel: (master, Force, beam, {channel}).
std::uint64_t force_seed(std::uint64_t master, SupportCondition beam, Eigen::Index channel);

/// Noise seed of one run: (master, Noise, beam, {bits of NL, run}).
std::uint64_t noise_seed(std::uint64_t master, SupportCondition beam, double noise_level, int run);

/// Noise-free accelerations of a beam under the configured band-limited forces.
BeamCase build_beam_case(const CampaignConfig& config, SupportCondition support);

struct MethodResult {
    Method method = Method::PP;
    ModePairing pairing;
    std::vector<double> frequencies_hz;           // every identified mode, ascending
    std::vector<Eigen::VectorXd> paired_shapes;   // per reference mode; empty vector when unpaired
    std::vector<std::string> diagnostics;
    std::optional<std::string> error;             // identifier failure, run continues
};

struct RunResult {
    SupportCondition beam = SupportCondition::CF;
    double noise_level = 0.0;
    int run = 0;
    std::vector<double> snr_db;                   // realized, per channel
    std::vector<MethodResult> methods;            // config order

    const MethodResult* find(Method method) const;
    /// Smallest MAC over reference modes for one method (0 when absent).
    double min_mac(Method method) const;
};

struct MacStatistics {
    double min = 0.0;
    double mean = 0.0;
    double std = 0.0;   // sample standard deviation, 0 for one run
    double max = 0.0;
    int identified = 0; // runs with an accepted pair
    int runs = 0;
};

/// Runs of a campaign plus the derived statistics, in (beam, level, run) order.
struct BenchmarkReport {
    CampaignConfig config;
    std::vector<BeamCase> beams;     // reference data, config order (clean records may be dropped)
    std::vector<RunResult> runs;
    int failures = 0;                // identifier errors across all runs

    const BeamCase& beam(SupportCondition support) const;
    std::vector<const RunResult*> runs_for(SupportCondition beam, double noise_level) const;
    MacStatistics mac_statistics(SupportCondition beam, double noise_level, Method method, int mode) const;
    /// Run with the smallest minimum PP MAC over modes (first method when PP is absent); ties to the lower index.
    const RunResult* worst_case(SupportCondition beam, double noise_level) const;
};

/// Holds the per-beam caches. Thread-safe: caches are built once and read-only afterwards.
class BenchHarness {
public:
    explicit BenchHarness(CampaignConfig config);

    const CampaignConfig& config() const { return config_; }
    const BeamCase& beam(SupportCondition support) const;

    /// Noisy record of one run (the clean record when NL = 0).
    MultiChannelRecord noisy_record(SupportCondition beam, double noise_level, int run,
                                    std::vector<double>* snr_db = nullptr) const;

    /// Simulate, corrupt, identify and score one run.
    RunResult run_single(SupportCondition beam, double noise_level, int run) const;

    /// Every (beam, level, run) of the config on up to `jobs` threads (<= 0: hardware concurrency).
    BenchmarkReport run_campaign(int jobs = 0,
                                 const std::function<void(std::size_t done, std::size_t total)>& progress = {}) const;

private:
    CampaignConfig config_;
    mutable std::mutex mutex_;
    mutable std::map<SupportCondition, std::shared_ptr<const BeamCase>> cache_;
};

/// One identifier on one record, scored against `reference`.
MethodResult identify_and_pair(const MultiChannelRecord& record, Method method, const ModalSolution& reference,
                               int n_reference, const CampaignConfig& config);

/// Resolve a job count: explicit value, then OMA_BENCH_JOBS, then hardware concurrency.
int resolve_jobs(int requested);

}  // namespace omabench

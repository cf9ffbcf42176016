#pragma once

#include "omabench/dsp.hpp"
#include "omabench/seed.hpp"

#include <cstdint>
#include <vector>

namespace omabench {

struct NoiseSpec {
    double noise_level = 0.0;  // noise RMS / signal RMS, per channel
    std::uint64_t seed = kDefaultSeed;
};

struct SnrReport {
    std::vector<double> signal_power;
    std::vector<double> noise_power;
    std::vector<double> snr;
    std::vector<double> snr_db;
    double nominal_snr_db = 0.0;  // +inf for a zero noise level

    /// Mean of the per-channel realized dB values.
    double mean_snr_db() const;
};

/// SNR in decibels implied by a noise level: -20 log10(NL).
double nl_to_snr_db(double noise_level);

/// Signal-to-noise power ratio 1 / NL^2.
double nl_to_snr(double noise_level);

/// N_j = rms(S_j) * NL * W_j with an independent standard-normal stream per channel.
MultiChannelRecord make_noise(const MultiChannelRecord& record, const NoiseSpec& spec);

struct CorruptedRecord {
    MultiChannelRecord noisy;
    SnrReport report;
};

/// S + N together with the realized per-channel SNR.
CorruptedRecord corrupt(const MultiChannelRecord& record, const NoiseSpec& spec);

}  // namespace omabench

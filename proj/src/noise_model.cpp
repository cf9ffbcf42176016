#include "omabench/noise_model.hpp"

#include "omabench/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace omabench {

double SnrReport::mean_snr_db() const {
    if (snr_db.empty()) return nominal_snr_db;
    return std::accumulate(snr_db.begin(), snr_db.end(), 0.0) / static_cast<double>(snr_db.size());
}

double nl_to_snr_db(double noise_level) {
    if (!(noise_level > 0.0)) throw DomainError("noise level must be positive");
    return -20.0 * std::log10(noise_level);
}

double nl_to_snr(double noise_level) {
    if (!(noise_level > 0.0)) throw DomainError("noise level must be positive");
    return 1.0 / (noise_level * noise_level);
}

MultiChannelRecord make_noise(const MultiChannelRecord& record, const NoiseSpec& spec) {
    if (!(spec.noise_level >= 0.0)) throw InvalidParameter("noise level must be >= 0");
    RowMatrix noise = RowMatrix::Zero(record.channels(), record.samples());
    if (spec.noise_level > 0.0) {
        for (Eigen::Index j = 0; j < record.channels(); ++j) {
            const double rms = power_and_rms(record.channel(j)).rms;
            const auto stream_seed =
                derive_seed(spec.seed, SeedPurpose::Noise, "channel", {static_cast<std::uint64_t>(j)});
            noise.row(j) = (rms * spec.noise_level) *
                           gaussian_white(record.samples(), stream_seed).transpose();
        }
    }
    return MultiChannelRecord(record.sample_rate(), std::move(noise), record.labels());
}

CorruptedRecord corrupt(const MultiChannelRecord& record, const NoiseSpec& spec) {
    if (spec.noise_level == 0.0) {
        SnrReport report;
        report.nominal_snr_db = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < record.channels(); ++j) {
            report.signal_power.push_back(power_and_rms(record.channel(j)).power);
            report.noise_power.push_back(0.0);
            report.snr.push_back(std::numeric_limits<double>::infinity());
            report.snr_db.push_back(std::numeric_limits<double>::infinity());
        }
        return {record, std::move(report)};
    }

    const MultiChannelRecord noise = make_noise(record, spec);
    SnrReport report;
    report.nominal_snr_db = nl_to_snr_db(spec.noise_level);
    for (Eigen::Index j = 0; j < record.channels(); ++j) {
        const double ps = power_and_rms(record.channel(j)).power;
        const double pn = power_and_rms(noise.channel(j)).power;
        report.signal_power.push_back(ps);
        report.noise_power.push_back(pn);
        const double snr = pn > 0.0 ? ps / pn : std::numeric_limits<double>::infinity();
        report.snr.push_back(snr);
        report.snr_db.push_back(10.0 * std::log10(snr));
    }
    MultiChannelRecord noisy(record.sample_rate(), record.data() + noise.data(), record.labels());
    return {std::move(noisy), std::move(report)};
}

}  // namespace omabench

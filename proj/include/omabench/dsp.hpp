#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace omabench {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * Uniformly sampled multi-channel time history.
 *
 * Each row of `data` is one channel, each column one sample. Labels are the
 * node ids of the channels (used as CSV column names).
 */
class MultiChannelRecord {
public:
    MultiChannelRecord() = default;
    MultiChannelRecord(double sample_rate, RowMatrix data, std::vector<std::string> labels = {});

    double sample_rate() const { return sample_rate_; }
    double dt() const { return 1.0 / sample_rate_; }
    Eigen::Index channels() const { return data_.rows(); }
    Eigen::Index samples() const { return data_.cols(); }
    const RowMatrix& data() const { return data_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::span<const double> channel(Eigen::Index j) const {
        return {data_.row(j).data(), static_cast<std::size_t>(data_.cols())};
    }

    MultiChannelRecord scaled(double factor) const;

private:
    double sample_rate_ = 1.0;
    RowMatrix data_;
    std::vector<std::string> labels_;
};

enum class WindowKind { Rectangular, Hann };

struct SpectralEstimatorOptions {
    WindowKind window = WindowKind::Rectangular;
    int segments = 1;
    double overlap = 0.0;

    /// Segment length for a record of `n_samples`; throws InvalidParameter on bad options.
    Eigen::Index segment_length(Eigen::Index n_samples) const;
};

/// One-sided auto spectra of every channel on a shared uniform grid.
struct PowerSpectra {
    Eigen::VectorXd frequencies;  // Hz, 0..Nyquist
    double resolution = 0.0;      // Hz
    RowMatrix values;             // channels x lines, units^2/Hz
};

/**
 * One-sided cross-spectral density matrix per frequency line.
 *
 * Stored as one channels x channels Hermitian block per line, laid out
 * contiguously. G_jk(f) = E[X_j(f) X_k(f)^*].
 */
class SpectralMatrix {
public:
    SpectralMatrix() = default;
    SpectralMatrix(Eigen::VectorXd frequencies, double resolution, Eigen::Index channels);

    Eigen::Index channels() const { return channels_; }
    Eigen::Index lines() const { return frequencies_.size(); }
    const Eigen::VectorXd& frequencies() const { return frequencies_; }
    double resolution() const { return resolution_; }

    Eigen::Map<Eigen::MatrixXcd> line(Eigen::Index k) {
        return {storage_.data() + k * channels_ * channels_, channels_, channels_};
    }
    Eigen::Map<const Eigen::MatrixXcd> line(Eigen::Index k) const {
        return {storage_.data() + k * channels_ * channels_, channels_, channels_};
    }

private:
    Eigen::VectorXd frequencies_;
    double resolution_ = 0.0;
    Eigen::Index channels_ = 0;
    std::vector<std::complex<double>> storage_;
};

struct PowerRms {
    double power;
    double rms;
};

/// Mean square and root mean square of a sample sequence.
PowerRms power_and_rms(std::span<const double> samples);

/// i.i.d. standard normal samples, a pure function of (n, seed).
Eigen::VectorXd gaussian_white(Eigen::Index n, std::uint64_t seed);

/**
 * Band-limited random force synthesized in the frequency domain.
 *
 * Every line in [f_lo, f_hi] gets unit magnitude and a uniform random phase,
 * lines outside the band are zero. After the inverse transform the sequence is
 * scaled so its RMS equals `rms_target` exactly. The sample count is
 * round(duration * rate) + 1.
 */
Eigen::VectorXd band_limited_force(double duration, double rate, double f_lo, double f_hi,
                                   double rms_target, std::uint64_t seed);

PowerSpectra psd(const MultiChannelRecord& record, const SpectralEstimatorOptions& options = {});

SpectralMatrix csd_matrix(const MultiChannelRecord& record,
                          const SpectralEstimatorOptions& options = {});

/// Cross spectra G_jr(f) of every channel j against one reference channel r.
struct ReferenceSpectra {
    Eigen::VectorXd frequencies;
    double resolution = 0.0;
    Eigen::MatrixXcd values;  // channels x lines
};

ReferenceSpectra cross_spectra_to_reference(const MultiChannelRecord& record, Eigen::Index reference,
                                            const SpectralEstimatorOptions& options = {});

/// Magnitude-squared coherence |G_jk|^2 / (G_jj G_kk) at every line.
Eigen::VectorXd coherence(const SpectralMatrix& g, Eigen::Index j, Eigen::Index k);

}  // namespace omabench

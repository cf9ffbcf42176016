#include "omabench/dsp.hpp"

#include "fft.hpp"
#include "omabench/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace omabench {

MultiChannelRecord::MultiChannelRecord(double sample_rate, RowMatrix data,
                                       std::vector<std::string> labels)
    : sample_rate_(sample_rate), data_(std::move(data)), labels_(std::move(labels)) {
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
        throw InvalidParameter("sample_rate must be positive");
    }
    if (data_.rows() < 1 || data_.cols() < 2) {
        throw InvalidInput("record needs at least one channel and two samples");
    }
    if (labels_.empty()) {
        for (Eigen::Index j = 0; j < data_.rows(); ++j) {
            labels_.push_back("ch" + std::to_string(j + 1));
        }
    }
    if (static_cast<Eigen::Index>(labels_.size()) != data_.rows()) {
        throw InvalidInput("label count does not match channel count");
    }
}

MultiChannelRecord MultiChannelRecord::scaled(double factor) const {
    return MultiChannelRecord(sample_rate_, data_ * factor, labels_);
}

Eigen::Index SpectralEstimatorOptions::segment_length(Eigen::Index n_samples) const {
    if (segments < 1) throw InvalidParameter("segments must be >= 1");
    if (!(overlap >= 0.0 && overlap < 1.0)) throw InvalidParameter("overlap must lie in [0, 1)");
    const double span = 1.0 + (segments - 1) * (1.0 - overlap);
    const auto length = static_cast<Eigen::Index>(std::floor(static_cast<double>(n_samples) / span));
    if (length < 16) throw InvalidParameter("segment length below 16 samples");
    return length;
}

SpectralMatrix::SpectralMatrix(Eigen::VectorXd frequencies, double resolution, Eigen::Index channels)
    : frequencies_(std::move(frequencies)),
      resolution_(resolution),
      channels_(channels),
      storage_(static_cast<std::size_t>(frequencies_.size() * channels * channels)) {}

PowerRms power_and_rms(std::span<const double> samples) {
    if (samples.empty()) throw InvalidInput("power of an empty sequence");
    double sum = 0.0;
    for (double x : samples) sum += x * x;
    const double power = sum / static_cast<double>(samples.size());
    return {power, std::sqrt(power)};
}

Eigen::VectorXd gaussian_white(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = normal(engine);
    return out;
}

Eigen::VectorXd band_limited_force(double duration, double rate, double f_lo, double f_hi,
                                   double rms_target, std::uint64_t seed) {
    if (!(duration > 0.0) || !(rate > 0.0)) {
        throw InvalidParameter("duration and rate must be positive");
    }
    if (!(f_lo >= 0.0 && f_lo < f_hi && f_hi <= 0.5 * rate)) {
        throw InvalidParameter("force band must satisfy 0 <= f_lo < f_hi <= rate / 2");
    }
    if (!(rms_target >= 0.0)) throw InvalidParameter("rms_target must be non-negative");

    const auto n = static_cast<Eigen::Index>(std::llround(duration * rate)) + 1;
    const Eigen::Index bins = n / 2 + 1;
    const double df = rate / static_cast<double>(n);

    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXcd spectrum = Eigen::VectorXcd::Zero(bins);
    for (Eigen::Index k = 0; k < bins; ++k) {
        const double theta = phase(engine);
        const double f = k * df;
        if (f < f_lo || f > f_hi) continue;
        const bool real_line = (k == 0) || (n % 2 == 0 && k == bins - 1);
        spectrum(k) = real_line ? std::complex<double>(theta < std::numbers::pi ? 1.0 : -1.0, 0.0)
                                : std::polar(1.0, theta);
    }
    Eigen::VectorXd samples = detail::real_inverse(spectrum, n);
    const double rms = power_and_rms({samples.data(), static_cast<std::size_t>(n)}).rms;
    if (rms > 0.0) samples *= rms_target / rms;
    return samples;
}

namespace {

struct SegmentPlan {
    Eigen::Index length;
    Eigen::Index step;
    int count;
    Eigen::VectorXd window;
    double scale;  // 1 / (fs * sum w^2)
    Eigen::VectorXd frequencies;
    double resolution;
};

SegmentPlan plan_segments(const MultiChannelRecord& record, const SpectralEstimatorOptions& options) {
    SegmentPlan plan;
    plan.length = options.segment_length(record.samples());
    plan.count = options.segments;
    plan.step = options.segments > 1
                    ? std::max<Eigen::Index>(
                          1, static_cast<Eigen::Index>(std::floor(plan.length * (1.0 - options.overlap))))
                    : plan.length;
    plan.window.resize(plan.length);
    for (Eigen::Index i = 0; i < plan.length; ++i) {
        plan.window(i) = options.window == WindowKind::Hann
                             ? 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / plan.length)
                             : 1.0;
    }
    plan.scale = 1.0 / (record.sample_rate() * plan.window.squaredNorm());
    const Eigen::Index lines = plan.length / 2 + 1;
    plan.resolution = record.sample_rate() / static_cast<double>(plan.length);
    plan.frequencies = Eigen::VectorXd::LinSpaced(lines, 0.0, (lines - 1) * plan.resolution);
    return plan;
}

// One-sided weight: interior lines carry the folded negative-frequency power.
double one_sided(Eigen::Index k, Eigen::Index length) {
    if (k == 0) return 1.0;
    if (length % 2 == 0 && k == length / 2) return 1.0;
    return 2.0;
}

Eigen::VectorXcd segment_transform(const MultiChannelRecord& record, Eigen::Index channel,
                                   const SegmentPlan& plan, int segment) {
    const Eigen::Index start = segment * plan.step;
    Eigen::VectorXd buffer = record.data().row(channel).segment(start, plan.length).transpose();
    buffer.array() *= plan.window.array();
    return detail::real_forward({buffer.data(), static_cast<std::size_t>(plan.length)});
}

}  // namespace

PowerSpectra psd(const MultiChannelRecord& record, const SpectralEstimatorOptions& options) {
    const SegmentPlan plan = plan_segments(record, options);
    const Eigen::Index lines = plan.frequencies.size();
    PowerSpectra out;
    out.frequencies = plan.frequencies;
    out.resolution = plan.resolution;
    out.values = RowMatrix::Zero(record.channels(), lines);
    for (Eigen::Index j = 0; j < record.channels(); ++j) {
        for (int s = 0; s < plan.count; ++s) {
            const Eigen::VectorXcd x = segment_transform(record, j, plan, s);
            for (Eigen::Index k = 0; k < lines; ++k) {
                out.values(j, k) += one_sided(k, plan.length) * std::norm(x(k));
            }
        }
    }
    out.values *= plan.scale / plan.count;
    return out;
}

SpectralMatrix csd_matrix(const MultiChannelRecord& record, const SpectralEstimatorOptions& options) {
    const SegmentPlan plan = plan_segments(record, options);
    const Eigen::Index lines = plan.frequencies.size();
    const Eigen::Index l = record.channels();
    SpectralMatrix g(plan.frequencies, plan.resolution, l);

    Eigen::MatrixXcd transforms(l, lines);
    for (int s = 0; s < plan.count; ++s) {
        for (Eigen::Index j = 0; j < l; ++j) {
            transforms.row(j) = segment_transform(record, j, plan, s).transpose();
        }
        for (Eigen::Index k = 0; k < lines; ++k) {
            const Eigen::VectorXcd x = transforms.col(k);
            g.line(k).noalias() += (one_sided(k, plan.length) * plan.scale / plan.count) * (x * x.adjoint());
        }
    }
    for (Eigen::Index k = 0; k < lines; ++k) {
        auto line = g.line(k);
        for (Eigen::Index j = 0; j < l; ++j) line(j, j) = line(j, j).real();
    }
    return g;
}

ReferenceSpectra cross_spectra_to_reference(const MultiChannelRecord& record, Eigen::Index reference,
                                            const SpectralEstimatorOptions& options) {
    if (reference < 0 || reference >= record.channels()) {
        throw InvalidParameter("reference channel out of range");
    }
    const SegmentPlan plan = plan_segments(record, options);
    const Eigen::Index lines = plan.frequencies.size();
    ReferenceSpectra out;
    out.frequencies = plan.frequencies;
    out.resolution = plan.resolution;
    out.values = Eigen::MatrixXcd::Zero(record.channels(), lines);
    for (int s = 0; s < plan.count; ++s) {
        const Eigen::VectorXcd xr = segment_transform(record, reference, plan, s);
        for (Eigen::Index j = 0; j < record.channels(); ++j) {
            const Eigen::VectorXcd xj =
                j == reference ? xr : segment_transform(record, j, plan, s);
            for (Eigen::Index k = 0; k < lines; ++k) {
                out.values(j, k) += one_sided(k, plan.length) * xj(k) * std::conj(xr(k));
            }
        }
    }
    out.values *= plan.scale / plan.count;
    for (Eigen::Index k = 0; k < lines; ++k) {
        out.values(reference, k) = out.values(reference, k).real();
    }
    return out;
}

Eigen::VectorXd coherence(const SpectralMatrix& g, Eigen::Index j, Eigen::Index k) {
    Eigen::VectorXd out(g.lines());
    for (Eigen::Index n = 0; n < g.lines(); ++n) {
        const auto line = g.line(n);
        const double denom = line(j, j).real() * line(k, k).real();
        out(n) = denom > 0.0 ? std::norm(line(j, k)) / denom : 0.0;
    }
    return out;
}

}  // namespace omabench

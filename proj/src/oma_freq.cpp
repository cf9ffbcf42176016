#include "omabench/oma_freq.hpp"

#include "omabench/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace omabench {

Anpsd anpsd(const PowerSpectra& spectra) {
    if (spectra.values.rows() < 1) throw InvalidInput("ANPSD needs at least one channel");
    const Eigen::Index lines = spectra.values.cols();
    Anpsd out;
    out.frequencies = spectra.frequencies;
    out.resolution = spectra.resolution;
    out.values = Eigen::VectorXd::Zero(lines);
    int used = 0;
    for (Eigen::Index j = 0; j < spectra.values.rows(); ++j) {
        const double total = spectra.values.row(j).sum() * spectra.resolution;
        if (!(total > 0.0)) {
            out.excluded.push_back(j);
            continue;
        }
        out.values += spectra.values.row(j).transpose() / total;
        ++used;
    }
    if (used > 0) out.values /= used;
    return out;
}

std::vector<Peak> pick_peaks(const Eigen::VectorXd& frequencies, const Eigen::VectorXd& values,
                             const PeakOptions& options) {
    if (frequencies.size() != values.size()) throw InvalidInput("frequency/value length mismatch");
    if (!(options.min_separation_hz > 0.0)) throw InvalidParameter("peak separation must be positive");
    std::vector<Peak> peaks;
    const Eigen::Index n = values.size();
    if (n < 3) return peaks;

    Eigen::Index lo = 0;
    while (lo < n && frequencies(lo) < options.band_lo_hz) ++lo;
    Eigen::Index hi = n - 1;
    while (hi >= 0 && frequencies(hi) > options.band_hi_hz) --hi;
    if (lo > hi) return peaks;

    std::vector<double> band(values.data() + lo, values.data() + hi + 1);
    const auto mid = band.begin() + static_cast<std::ptrdiff_t>(band.size() / 2);
    std::nth_element(band.begin(), mid, band.end());
    const double median = *mid;
    const double threshold = median * std::pow(10.0, options.min_prominence_db / 10.0);

    const double df = frequencies(1) - frequencies(0);
    std::vector<Peak> candidates;
    for (Eigen::Index i = std::max<Eigen::Index>(lo, 1); i <= std::min(hi, n - 2); ++i) {
        const double a = values(i - 1);
        const double b = values(i);
        const double c = values(i + 1);
        if (!(b > a && b >= c) || !(b > threshold)) continue;
        double delta = 0.0;
        const double denom = a - 2.0 * b + c;
        if (denom < 0.0) delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
        candidates.push_back({frequencies(i) + delta * df, i, b});
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const Peak& x, const Peak& y) { return x.height > y.height || (x.height == y.height && x.line < y.line); });
    for (const auto& cand : candidates) {
        const bool clear = std::none_of(peaks.begin(), peaks.end(), [&](const Peak& p) {
            return std::abs(p.frequency_hz - cand.frequency_hz) < options.min_separation_hz;
        });
        if (clear) peaks.push_back(cand);
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& x, const Peak& y) { return x.frequency_hz < y.frequency_hz; });
    return peaks;
}

namespace {

Eigen::Index loudest_channel(const PowerSpectra& spectra, const PeakOptions& band) {
    Eigen::Index best = 0;
    double best_power = -1.0;
    for (Eigen::Index j = 0; j < spectra.values.rows(); ++j) {
        double power = 0.0;
        for (Eigen::Index k = 0; k < spectra.frequencies.size(); ++k) {
            const double f = spectra.frequencies(k);
            if (f >= band.band_lo_hz && f <= band.band_hi_hz) power += spectra.values(j, k);
        }
        if (power > best_power) {
            best_power = power;
            best = j;
        }
    }
    return best;
}

}  // namespace

Eigen::Index default_reference_channel(const MultiChannelRecord& record,
                                       const FrequencyDomainOptions& options) {
    return loudest_channel(psd(record, options.spectral), options.peaks);
}

IdentifiedModeSet pp_identify(const MultiChannelRecord& record, Eigen::Index reference,
                              const FrequencyDomainOptions& options) {
    if (reference >= record.channels()) throw InvalidParameter("reference channel out of range");
    const PowerSpectra spectra = psd(record, options.spectral);
    if (reference < 0) reference = loudest_channel(spectra, options.peaks);

    IdentifiedModeSet out;
    out.method = Method::PP;
    const Anpsd averaged = anpsd(spectra);
    for (Eigen::Index j : averaged.excluded) {
        out.diagnostics.push_back("channel " + std::to_string(j) + " has zero power, excluded from ANPSD");
    }
    const auto peaks = pick_peaks(averaged.frequencies, averaged.values, options.peaks);
    if (peaks.empty()) return out;

    const ReferenceSpectra cross = cross_spectra_to_reference(record, reference, options.spectral);
    for (const auto& peak : peaks) {
        const double grr = cross.values(reference, peak.line).real();
        if (!(grr > 0.0)) {
            out.diagnostics.push_back("zero reference auto-spectrum at " + std::to_string(peak.frequency_hz) +
                                      " Hz, mode dropped");
            continue;
        }
        Eigen::VectorXd shape(record.channels());
        for (Eigen::Index j = 0; j < record.channels(); ++j) {
            const std::complex<double> gjr = cross.values(j, peak.line);
            const double sign = std::abs(std::arg(gjr)) < 0.5 * std::numbers::pi ? 1.0 : -1.0;
            shape(j) = sign * std::abs(gjr) / grr;
        }
        out.modes.push_back({peak.frequency_hz, unit_normalize(shape), std::nullopt, peak.height});
    }
    return out;
}

IdentifiedModeSet fdd_identify(const SpectralMatrix& g, const PeakOptions& peaks_options,
                               SingularValueCurves* curves) {
    IdentifiedModeSet out;
    out.method = Method::FDD;

    std::vector<Eigen::Index> lines;
    for (Eigen::Index k = 0; k < g.lines(); ++k) {
        const double f = g.frequencies()(k);
        if (f >= peaks_options.band_lo_hz && f <= peaks_options.band_hi_hz) lines.push_back(k);
    }
    const auto n = static_cast<Eigen::Index>(lines.size());
    Eigen::VectorXd freq(n);
    Eigen::VectorXd first = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd second = Eigen::VectorXd::Zero(n);
    std::vector<Eigen::VectorXcd> vectors(lines.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        freq(i) = g.frequencies()(lines[i]);
        const Eigen::MatrixXcd line = g.line(lines[i]);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(line, Eigen::ComputeThinU);
        const auto& s = svd.singularValues();
        if (!s.allFinite()) {
            out.diagnostics.push_back("SVD failed at " + std::to_string(freq(i)) + " Hz, line skipped");
            continue;
        }
        first(i) = s(0);
        if (s.size() > 1) second(i) = s(1);
        vectors[i] = svd.matrixU().col(0);
    }
    if (curves) *curves = {freq, first, second};

    for (const auto& peak : pick_peaks(freq, first, peaks_options)) {
        if (vectors[peak.line].size() == 0) continue;
        out.modes.push_back({peak.frequency_hz, unit_normalize(real_aligned(vectors[peak.line])),
                             std::nullopt, peak.height});
    }
    return out;
}

IdentifiedModeSet fdd_identify(const MultiChannelRecord& record, const FrequencyDomainOptions& options,
                               SingularValueCurves* curves) {
    return fdd_identify(csd_matrix(record, options.spectral), options.peaks, curves);
}

}  // namespace omabench

#pragma once

#include "omabench/dsp.hpp"
#include "omabench/identified_modes.hpp"

#include <Eigen/Dense>

#include <vector>

namespace omabench {

struct PeakOptions {
    double min_prominence_db = 6.0;  // above the median of the search band
    double min_separation_hz = 2.0;
    double band_lo_hz = 1.0;
    double band_hi_hz = 1500.0;
};

struct Peak {
    double frequency_hz;  // parabolically refined
    Eigen::Index line;    // grid index of the local maximum
    double height;
};

struct Anpsd {
    Eigen::VectorXd frequencies;
    double resolution = 0.0;
    Eigen::VectorXd values;               // integrates to 1 over the grid
    std::vector<Eigen::Index> excluded;   // zero-power channels left out of the average
};

/// Average of the per-channel PSDs, each normalized to unit integrated power.
Anpsd anpsd(const PowerSpectra& spectra);

/**
 * Local maxima of `values` inside the search band that stand at least
 * `min_prominence_db` above the band median, thinned to `min_separation_hz`
 * by keeping the tallest, then refined by a 3-point parabola. Sorted ascending.
 */
std::vector<Peak> pick_peaks(const Eigen::VectorXd& frequencies, const Eigen::VectorXd& values,
                             const PeakOptions& options);

struct FrequencyDomainOptions {
    SpectralEstimatorOptions spectral;
    PeakOptions peaks;
};

/// Channel with the largest total power inside the peak search band.
Eigen::Index default_reference_channel(const MultiChannelRecord& record, const FrequencyDomainOptions& options);

/**
 * Peak picking on the ANPSD.
 *
 * Shape entry j at a peak is |G_jr| / G_rr signed by the cross-spectrum phase
 * (+1 when |phase| < pi / 2). A negative `reference` selects the default channel.
 */
IdentifiedModeSet pp_identify(const MultiChannelRecord& record, Eigen::Index reference = -1,
                              const FrequencyDomainOptions& options = {});

/// First two singular values of the CSD matrix at every line of the search band.
struct SingularValueCurves {
    Eigen::VectorXd frequencies;
    Eigen::VectorXd first;
    Eigen::VectorXd second;
};

/// Frequency domain decomposition: peaks of the first singular value, shapes from its vector.
IdentifiedModeSet fdd_identify(const MultiChannelRecord& record, const FrequencyDomainOptions& options = {},
                               SingularValueCurves* curves = nullptr);

/// FDD on an already estimated spectral matrix.
IdentifiedModeSet fdd_identify(const SpectralMatrix& g, const PeakOptions& peaks,
                               SingularValueCurves* curves = nullptr);

}  // namespace omabench

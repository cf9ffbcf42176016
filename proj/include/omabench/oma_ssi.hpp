#pragma once

#include "omabench/dsp.hpp"
#include "omabench/identified_modes.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace omabench {

struct HankelOptions {
    int block_rows = 10;
    std::vector<int> orders = default_orders();
    bool detrend = true;
    /// Each factor q runs its own stabilization on a copy low-passed at its
    /// Nyquist frequency 0.5 * rate / q and decimated by q. q owns the band up to
    /// 0.4 * rate / q, above the band owned by the next larger factor.
    std::vector<int> decimation = default_decimation();

    /// 2, 4, ..., 100.
    static std::vector<int> default_orders();
    static std::vector<int> default_decimation();
};

/// Ideal FFT low-pass at `cutoff_hz` followed by keeping every `factor`-th sample.
MultiChannelRecord decimate(const MultiChannelRecord& record, int factor, double cutoff_hz);

/**
 * Output block Hankel matrix [Y_past; Y_future].
 *
 * 2 * block_rows block rows of `channels` rows each, N - 2i + 1 columns,
 * scaled by 1 / sqrt(columns). Stored row-major so that its memory is the
 * column-major transpose consumed by the QR factorization.
 */
struct BlockHankel {
    RowMatrix matrix;
    int block_rows = 0;
    Eigen::Index channels = 0;
    double dt = 0.0;
};

BlockHankel build_hankel(const MultiChannelRecord& record, const HankelOptions& options);

/// SVD of the projection of future outputs onto past outputs (UPC weighting).
struct SubspaceProjection {
    Eigen::MatrixXd left_vectors;   // i*l x i*l
    Eigen::VectorXd singular_values;
    int block_rows = 0;
    Eigen::Index channels = 0;
    double dt = 0.0;

    Eigen::Index max_order() const { return singular_values.size(); }
};

/// LQ factorization of the Hankel matrix followed by the projection SVD. Consumes the matrix.
SubspaceProjection project(BlockHankel&& hankel);

struct PoleCandidate {
    double frequency_hz;
    double damping;
    Eigen::VectorXd shape;  // real, max |entry| = 1
    std::complex<double> discrete_eigenvalue;
};

struct Realization {
    int order = 0;           // order actually used (may be truncated)
    Eigen::MatrixXd state_matrix;
    Eigen::MatrixXd output_matrix;
    std::vector<PoleCandidate> poles;
    std::vector<std::string> diagnostics;
};

/// State-space realization of a given order and its physical poles.
Realization realize_modes(const SubspaceProjection& projection, int order);

/// Pole filters: |mu| < 1 and damping inside (0, max_damping).
struct StabilizationTolerances {
    double frequency = 0.01;       // relative
    double damping = 0.05;         // absolute
    double mac = 0.95;
    int min_stable_poles = 3;
    double max_damping = 0.2;
    double band_lo_hz = 0.0;
    double band_hi_hz = 1.0e12;    // clipped to Nyquist
};

struct StabilizationEntry {
    int order;
    int decimation = 1;
    double frequency_hz;
    double damping;
    Eigen::VectorXd shape;
    bool stable_frequency = false;
    bool stable_damping = false;
    bool stable_mac = false;
    double mac_to_previous = 0.0;

    bool stable() const { return stable_frequency && stable_damping && stable_mac; }
};

struct StabilizationDiagram {
    std::vector<StabilizationEntry> entries;
    std::vector<IdentifiedMode> selected;  // ascending
    std::vector<std::string> diagnostics;
};

StabilizationDiagram stabilization(const SubspaceProjection& projection, const std::vector<int>& orders,
                                   const StabilizationTolerances& tolerances = {});

StabilizationDiagram stabilization(const MultiChannelRecord& record, const HankelOptions& options,
                                   const StabilizationTolerances& tolerances = {});

IdentifiedModeSet ssi_identify(const MultiChannelRecord& record, const HankelOptions& options = {},
                               const StabilizationTolerances& tolerances = {},
                               StabilizationDiagram* diagram = nullptr);

}  // namespace omabench

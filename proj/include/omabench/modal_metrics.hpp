#pragma once

#include "omabench/beam_fem.hpp"
#include "omabench/identified_modes.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace omabench {

/// Modal assurance criterion |phi^T psi|^2 / ((phi^T phi)(psi^T psi)).
double mac(const Eigen::VectorXd& phi, const Eigen::VectorXd& psi);

/// 100 |f_id - f_ref| / f_ref.
double relative_error(double f_identified, double f_reference);

struct PairingOptions {
    double frequency_window = 0.05;  // fraction of the reference frequency
    double mac_threshold = 0.95;
};

struct ModePair {
    int reference_index = 0;
    std::optional<int> identified_index;  // empty: not identified ("dash")
    double mac = 0.0;                     // best MAC inside the window, accepted or not
    std::optional<double> frequency_hz;   // identified frequency when accepted
    std::optional<double> error_percent;
};

struct ModePairing {
    std::vector<ModePair> pairs;  // one per reference mode, in reference order

    int identified_count() const;
};

/**
 * Match identified modes to the first `n_reference` reference modes.
 *
 * Candidates lie within the frequency window of a reference mode. Assignment
 * is greedy over all (reference, candidate) pairs by descending MAC, ties
 * broken by smaller frequency error, and each candidate is used at most once.
 * A pair is accepted only when its MAC reaches the threshold.
 */
ModePairing pair_to_reference(const IdentifiedModeSet& identified, const ModalSolution& reference,
                              int n_reference, const PairingOptions& options = {});

}  // namespace omabench

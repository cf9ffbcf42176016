#include "omabench/modal_metrics.hpp"

#include "omabench/error.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace omabench {

double mac(const Eigen::VectorXd& phi, const Eigen::VectorXd& psi) {
    if (phi.size() != psi.size()) throw InvalidInput("MAC of vectors with different lengths");
    const double pp = phi.squaredNorm();
    const double ss = psi.squaredNorm();
    if (!(pp > 0.0) || !(ss > 0.0)) throw DomainError("MAC of a zero vector");
    const double cross = phi.dot(psi);
    return std::clamp(cross * cross / (pp * ss), 0.0, 1.0);
}

double relative_error(double f_identified, double f_reference) {
    if (!(f_reference > 0.0)) throw DomainError("reference frequency must be positive");
    return 100.0 * std::abs(f_identified - f_reference) / f_reference;
}

int ModePairing::identified_count() const {
    return static_cast<int>(std::count_if(pairs.begin(), pairs.end(),
                                          [](const ModePair& p) { return p.identified_index.has_value(); }));
}

ModePairing pair_to_reference(const IdentifiedModeSet& identified, const ModalSolution& reference,
                              int n_reference, const PairingOptions& options) {
    if (reference.modes() == 0) throw InvalidInput("reference modal solution is empty");
    n_reference = std::min<int>(n_reference, static_cast<int>(reference.modes()));

    struct Candidate {
        int ref;
        int id;
        double mac;
        double error;
    };
    std::vector<Candidate> candidates;
    ModePairing out;
    out.pairs.resize(n_reference);
    for (int r = 0; r < n_reference; ++r) {
        out.pairs[r].reference_index = r;
        const double f_ref = reference.frequencies_hz(r);
        const Eigen::VectorXd ref_shape = reference.channel_shapes.col(r);
        for (int i = 0; i < static_cast<int>(identified.modes.size()); ++i) {
            const auto& mode = identified.modes[i];
            const double err = std::abs(mode.frequency_hz - f_ref) / f_ref;
            if (err > options.frequency_window) continue;
            if (mode.shape.size() != ref_shape.size() || mode.shape.squaredNorm() == 0.0) continue;
            const double m = mac(ref_shape, mode.shape);
            candidates.push_back({r, i, m, err});
            out.pairs[r].mac = std::max(out.pairs[r].mac, m);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(b.mac, a.error, a.ref, a.id) < std::tie(a.mac, b.error, b.ref, b.id);
    });

    std::vector<bool> used(identified.modes.size(), false);
    std::vector<bool> done(n_reference, false);
    for (const auto& c : candidates) {
        if (c.mac < options.mac_threshold) break;
        if (done[c.ref] || used[c.id]) continue;
        done[c.ref] = true;
        used[c.id] = true;
        auto& pair = out.pairs[c.ref];
        pair.identified_index = c.id;
        pair.mac = c.mac;
        pair.frequency_hz = identified.modes[c.id].frequency_hz;
        pair.error_percent = 100.0 * c.error;
    }
    return out;
}

}  // namespace omabench

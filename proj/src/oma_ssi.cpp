#include "omabench/oma_ssi.hpp"

#include "fft.hpp"
#include "omabench/error.hpp"
#include "omabench/modal_metrics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace omabench {

std::vector<int> HankelOptions::default_orders() {
    std::vector<int> orders;
    for (int n = 2; n <= 100; n += 2) orders.push_back(n);
    return orders;
}

std::vector<int> HankelOptions::default_decimation() { return {1, 4, 16, 64}; }

MultiChannelRecord decimate(const MultiChannelRecord& record, int factor, double cutoff_hz) {
    if (factor < 1) throw InvalidParameter("decimation factor must be >= 1");
    if (factor == 1) return record;
    const Eigen::Index n = record.samples();
    const Eigen::Index kept = (n + factor - 1) / factor;
    if (kept < 2) throw InvalidInput("record too short to decimate by " + std::to_string(factor));
    const double df = record.sample_rate() / static_cast<double>(n);
    RowMatrix out(record.channels(), kept);
    for (Eigen::Index j = 0; j < record.channels(); ++j) {
        Eigen::VectorXcd bins = detail::real_forward(record.channel(j));
        for (Eigen::Index k = 0; k < bins.size(); ++k) {
            if (k * df > cutoff_hz) bins(k) = 0.0;
        }
        const Eigen::VectorXd filtered = detail::real_inverse(bins, n) / static_cast<double>(n);
        for (Eigen::Index m = 0; m < kept; ++m) out(j, m) = filtered(m * factor);
    }
    return MultiChannelRecord(record.sample_rate() / factor, std::move(out), record.labels());
}

BlockHankel build_hankel(const MultiChannelRecord& record, const HankelOptions& options) {
    const int i = options.block_rows;
    const Eigen::Index l = record.channels();
    const Eigen::Index n = record.samples();
    if (i < 1) throw InvalidParameter("block_rows must be >= 1");
    const Eigen::Index rows = 2 * i * l;
    const Eigen::Index cols = n - 2 * i + 1;
    if (cols < rows) {
        throw InvalidInput("record too short: " + std::to_string(n) + " samples cannot fill a " +
                           std::to_string(rows) + "-row block Hankel matrix");
    }
    for (int order : options.orders) {
        if (order < 1 || order > i * l) {
            throw InvalidParameter("model order " + std::to_string(order) + " outside [1, block_rows * channels]");
        }
    }

    RowMatrix y = record.data();
    if (options.detrend) {
        y.colwise() -= y.rowwise().mean();
    }

    BlockHankel out;
    out.block_rows = i;
    out.channels = l;
    out.dt = record.dt();
    out.matrix.resize(rows, cols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    for (Eigen::Index b = 0; b < 2 * i; ++b) {
        for (Eigen::Index c = 0; c < l; ++c) {
            out.matrix.row(b * l + c) = scale * y.row(c).segment(b, cols);
        }
    }
    return out;
}

SubspaceProjection project(BlockHankel&& hankel) {
    const Eigen::Index il = static_cast<Eigen::Index>(hankel.block_rows) * hankel.channels;
    const Eigen::Index rows = hankel.matrix.rows();
    const Eigen::Index cols = hankel.matrix.cols();

    // Row-major H is column-major H^T; QR of H^T gives H = R^T Q^T (the LQ factorization).
    Eigen::Map<Eigen::MatrixXd> ht(hankel.matrix.data(), cols, rows);
    Eigen::HouseholderQR<Eigen::Ref<Eigen::MatrixXd>> qr(ht);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
    // L21 = (R_12)^T: future rows against the past block of Q.
    const Eigen::MatrixXd l21 = r.block(0, il, il, il).transpose();
    hankel.matrix.resize(0, 0);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(l21, Eigen::ComputeFullU);
    SubspaceProjection out;
    out.left_vectors = svd.matrixU();
    out.singular_values = svd.singularValues();
    out.block_rows = hankel.block_rows;
    out.channels = hankel.channels;
    out.dt = hankel.dt;
    return out;
}

Realization realize_modes(const SubspaceProjection& projection, int order) {
    if (order < 1 || order > projection.max_order()) {
        throw InvalidParameter("model order outside [1, block_rows * channels]");
    }
    Realization out;
    const auto& s = projection.singular_values;
    Eigen::Index rank = 0;
    const double floor = s.size() > 0 ? s(0) * 1e-12 : 0.0;
    while (rank < s.size() && s(rank) > floor) ++rank;
    if (rank < order) {
        const int truncated = static_cast<int>(rank - rank % 2);
        out.diagnostics.push_back("order " + std::to_string(order) + " truncated to numerical rank " +
                                  std::to_string(truncated));
        order = truncated;
    }
    out.order = order;
    if (order == 0) return out;

    const Eigen::Index l = projection.channels;
    const Eigen::Index il = projection.left_vectors.rows();
    const Eigen::MatrixXd gamma =
        projection.left_vectors.leftCols(order) * s.head(order).cwiseSqrt().asDiagonal();
    out.output_matrix = gamma.topRows(l);
    const Eigen::MatrixXd upper = gamma.topRows(il - l);
    const Eigen::MatrixXd lower = gamma.bottomRows(il - l);
    out.state_matrix = upper.colPivHouseholderQr().solve(lower);

    Eigen::EigenSolver<Eigen::MatrixXd> eig(out.state_matrix);
    if (eig.info() != Eigen::Success) {
        out.diagnostics.push_back("eigendecomposition failed at order " + std::to_string(order));
        return out;
    }
    const Eigen::VectorXcd mu = eig.eigenvalues();
    const Eigen::MatrixXcd psi = eig.eigenvectors();
    const Eigen::MatrixXcd c = out.output_matrix.cast<std::complex<double>>();
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        if (!(mu(k).imag() > 0.0)) continue;  // keep one of each conjugate pair
        const std::complex<double> lambda = std::log(mu(k)) / projection.dt;
        const double magnitude = std::abs(lambda);
        PoleCandidate pole;
        pole.discrete_eigenvalue = mu(k);
        pole.frequency_hz = magnitude / (2.0 * std::numbers::pi);
        pole.damping = -lambda.real() / magnitude;
        pole.shape = unit_normalize(real_aligned(c * psi.col(k)));
        out.poles.push_back(std::move(pole));
    }
    std::sort(out.poles.begin(), out.poles.end(),
              [](const PoleCandidate& a, const PoleCandidate& b) { return a.frequency_hz < b.frequency_hz; });
    return out;
}

namespace {

double median_of(std::vector<double> values) {
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

}  // namespace

StabilizationDiagram stabilization(const SubspaceProjection& projection, const std::vector<int>& orders,
                                   const StabilizationTolerances& tol) {
    StabilizationDiagram diagram;
    if (orders.size() < 2) {
        diagram.diagnostics.push_back("stability needs at least two model orders");
        return diagram;
    }
    const double nyquist = 0.5 / projection.dt;
    const double band_hi = std::min(tol.band_hi_hz, nyquist);

    std::vector<StabilizationEntry> previous;
    for (int order : orders) {
        const Realization real = realize_modes(projection, order);
        for (const auto& d : real.diagnostics) diagram.diagnostics.push_back(d);
        std::vector<StabilizationEntry> current;
        for (const auto& pole : real.poles) {
            if (!(std::abs(pole.discrete_eigenvalue) < 1.0)) continue;
            if (!(pole.damping > 0.0 && pole.damping < tol.max_damping)) continue;
            if (pole.frequency_hz < tol.band_lo_hz || pole.frequency_hz > band_hi) continue;
            StabilizationEntry entry{order, 1, pole.frequency_hz, pole.damping, pole.shape};
            const StabilizationEntry* nearest = nullptr;
            for (const auto& p : previous) {
                if (!nearest || std::abs(p.frequency_hz - entry.frequency_hz) <
                                    std::abs(nearest->frequency_hz - entry.frequency_hz)) {
                    nearest = &p;
                }
            }
            if (nearest) {
                entry.stable_frequency =
                    std::abs(nearest->frequency_hz - entry.frequency_hz) <= tol.frequency * entry.frequency_hz;
                entry.stable_damping = std::abs(nearest->damping - entry.damping) <= tol.damping;
                entry.mac_to_previous = mac(nearest->shape, entry.shape);
                entry.stable_mac = entry.mac_to_previous >= tol.mac;
            }
            current.push_back(std::move(entry));
        }
        diagram.entries.insert(diagram.entries.end(), current.begin(), current.end());
        previous = std::move(current);
    }

    std::vector<const StabilizationEntry*> stable;
    for (const auto& e : diagram.entries) {
        if (e.stable()) stable.push_back(&e);
    }
    std::sort(stable.begin(), stable.end(), [](const auto* a, const auto* b) {
        return a->frequency_hz < b->frequency_hz || (a->frequency_hz == b->frequency_hz && a->order < b->order);
    });

    // Clusters chain poles that are adjacent in frequency and alike in shape, so a
    // spurious family sitting within the frequency tolerance of a physical one
    // stays separate.
    std::vector<std::vector<const StabilizationEntry*>> clusters;
    for (const auto* e : stable) {
        std::vector<const StabilizationEntry*>* home = nullptr;
        double home_mac = tol.mac;
        for (auto it = clusters.rbegin(); it != clusters.rend(); ++it) {
            const auto* last = it->back();
            if (e->frequency_hz - last->frequency_hz > tol.frequency * last->frequency_hz) continue;
            const double m = mac(last->shape, e->shape);
            if (m >= home_mac) {
                home = &*it;
                home_mac = m;
            }
        }
        if (home) {
            home->push_back(e);
        } else {
            clusters.push_back({e});
        }
    }
    for (const auto& members : clusters) {
        if (static_cast<int>(members.size()) < tol.min_stable_poles) continue;
        std::vector<double> freqs;
        std::vector<double> damps;
        const StabilizationEntry* best = members.front();
        for (const auto* e : members) {
            freqs.push_back(e->frequency_hz);
            damps.push_back(e->damping);
            // MACs this close to each other are ties; preferring the lowest order keeps
            // the choice unchanged when the record is rescaled.
            const double gain = e->mac_to_previous - best->mac_to_previous;
            if (gain > 1e-9 || (gain >= -1e-9 && e->order < best->order)) best = e;
        }
        diagram.selected.push_back({median_of(freqs), best->shape, median_of(damps), static_cast<double>(members.size())});
    }
    std::sort(diagram.selected.begin(), diagram.selected.end(),
              [](const IdentifiedMode& a, const IdentifiedMode& b) { return a.frequency_hz < b.frequency_hz; });
    return diagram;
}

StabilizationDiagram stabilization(const MultiChannelRecord& record, const HankelOptions& options,
                                   const StabilizationTolerances& tolerances) {
    std::vector<int> factors = options.decimation;
    if (factors.empty()) factors.push_back(1);
    std::sort(factors.begin(), factors.end());
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
    if (factors.front() < 1) throw InvalidParameter("decimation factors must be >= 1");
    std::string merged_note;

    // Default orders may exceed i * l on beams with fewer channels.
    const int max_order = options.block_rows * static_cast<int>(record.channels());
    if (std::any_of(options.orders.begin(), options.orders.end(), [&](int o) { return o > max_order; })) {
        merged_note = "orders above " + std::to_string(max_order) + " dropped";
    }
    // Each rate owns the band up to 80 % of its Nyquist frequency. The FFT filter
    // cuts at Nyquist itself, so poles fitted to the spectral cliff fall outside
    // the owned band instead of on top of modes near its upper edge.
    const auto cutoff = [&](int q) { return q == 1 ? 0.5 * record.sample_rate() : 0.4 * record.sample_rate() / q; };
    const auto filter_edge = [&](int q) { return 0.5 * record.sample_rate() / q; };
    StabilizationDiagram merged;
    if (!merged_note.empty()) merged.diagnostics.push_back(merged_note);
    bool any_rate = false;
    for (std::size_t r = 0; r < factors.size(); ++r) {
        const int q = factors[r];
        const double owned_hi = cutoff(q);
        const double owned_lo = r + 1 < factors.size() ? cutoff(factors[r + 1]) : 0.0;
        if (owned_hi <= tolerances.band_lo_hz || owned_lo >= tolerances.band_hi_hz) continue;

        const MultiChannelRecord rate = decimate(record, q, filter_edge(q));
        const Eigen::Index needed = 2 * static_cast<Eigen::Index>(options.block_rows) * (record.channels() + 1);
        if (rate.samples() < needed) {
            merged.diagnostics.push_back("decimation " + std::to_string(q) + " skipped: record too short");
            continue;
        }
        HankelOptions clipped = options;
        std::erase_if(clipped.orders, [&](int order) { return order > max_order; });
        StabilizationTolerances local = tolerances;
        local.band_hi_hz = std::min(tolerances.band_hi_hz, owned_hi);
        StabilizationDiagram part = stabilization(project(build_hankel(rate, clipped)), clipped.orders, local);
        any_rate = true;
        for (auto& e : part.entries) {
            e.decimation = q;
            merged.entries.push_back(std::move(e));
        }
        for (const auto& d : part.diagnostics) {
            merged.diagnostics.push_back("decimation " + std::to_string(q) + ": " + d);
        }
        for (auto& mode : part.selected) {
            if (mode.frequency_hz > owned_lo) merged.selected.push_back(std::move(mode));
        }
    }
    if (!any_rate) throw InvalidInput("record too short for any decimation factor");

    std::sort(merged.selected.begin(), merged.selected.end(),
              [](const IdentifiedMode& a, const IdentifiedMode& b) { return a.frequency_hz < b.frequency_hz; });
    // Neighbouring rates can both claim a mode sitting on their shared cutoff.
    std::vector<IdentifiedMode> unique;
    for (auto& mode : merged.selected) {
        if (!unique.empty() &&
            mode.frequency_hz - unique.back().frequency_hz <= tolerances.frequency * unique.back().frequency_hz) {
            if (mode.quality > unique.back().quality) unique.back() = std::move(mode);
            continue;
        }
        unique.push_back(std::move(mode));
    }
    merged.selected = std::move(unique);
    return merged;
}

IdentifiedModeSet ssi_identify(const MultiChannelRecord& record, const HankelOptions& options,
                               const StabilizationTolerances& tolerances, StabilizationDiagram* diagram) {
    StabilizationDiagram result = stabilization(record, options, tolerances);
    IdentifiedModeSet out;
    out.method = Method::SSI;
    out.modes = result.selected;
    out.diagnostics = result.diagnostics;
    if (diagram) *diagram = std::move(result);
    return out;
}

}  // namespace omabench

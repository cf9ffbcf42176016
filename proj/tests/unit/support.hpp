#pragma once

#include "omabench/bench_harness.hpp"
#include "omabench/campaign_config.hpp"
#include "omabench/noise_model.hpp"
#include "omabench/oma_ssi.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

namespace omabench::test {

/// Default-config beam case, simulated once per test binary.
inline const BeamCase& clean_case(SupportCondition support) {
    static std::mutex mutex;
    static std::map<SupportCondition, std::unique_ptr<BeamCase>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[support];
    if (!slot) slot = std::make_unique<BeamCase>(build_beam_case(CampaignConfig{}, support));
    return *slot;
}

/// Noisy record with the harness seed of (beam, NL, run).
inline MultiChannelRecord noisy_case(SupportCondition support, double noise_level, int run = 0) {
    return corrupt(clean_case(support).clean, {noise_level, noise_seed(kDefaultSeed, support, noise_level, run)})
        .noisy;
}

/// Pairing of one method on one record against the default reference.
inline MethodResult identify_default(const MultiChannelRecord& record, Method method, SupportCondition support) {
    const CampaignConfig cfg;
    return identify_and_pair(record, method, clean_case(support).reference, cfg.reference_modes, cfg);
}

/// Discrete state-space model x+ = A x + w, y = C x with known modal parameters.
struct SyntheticSystem {
    Eigen::MatrixXd a;
    Eigen::MatrixXd c;
    double dt = 0.0;
    std::vector<double> frequencies_hz;
    std::vector<double> damping;
    std::vector<Eigen::VectorXd> shapes;  // real output shapes
};

/**
 * Block-diagonal realization of lightly damped modes. Only the first state of
 * each 2x2 block is observed, which keeps the output shapes real.
 */
inline SyntheticSystem modal_system(const std::vector<double>& frequencies_hz, const std::vector<double>& damping,
                                    const Eigen::MatrixXd& shapes, double dt) {
    const auto n = static_cast<Eigen::Index>(frequencies_hz.size());
    SyntheticSystem s;
    s.dt = dt;
    s.a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    s.c = Eigen::MatrixXd::Zero(shapes.rows(), 2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = 2.0 * std::numbers::pi * frequencies_hz[static_cast<std::size_t>(k)];
        const double z = damping[static_cast<std::size_t>(k)];
        const std::complex<double> mu = std::exp(std::complex<double>(-z * w, w * std::sqrt(1.0 - z * z)) * dt);
        s.a.block<2, 2>(2 * k, 2 * k) << mu.real(), mu.imag(), -mu.imag(), mu.real();
        s.c.col(2 * k) = shapes.col(k);
        s.frequencies_hz.push_back(frequencies_hz[static_cast<std::size_t>(k)]);
        s.damping.push_back(z);
        s.shapes.emplace_back(shapes.col(k));
    }
    return s;
}

/**
 * The two-mode, three-output oracle system sampled at 100 Hz. Light damping and
 * a 1000 s span at 1e5 samples keep the estimator scatter near 0.05 %, well
 * inside a 0.1 % frequency check.
 */
inline SyntheticSystem two_dof_system() {
    Eigen::MatrixXd shapes(3, 2);
    shapes << 1.0, 1.0, 0.8, -0.4, 0.45, -0.9;
    return modal_system({12.0, 31.0}, {0.01, 0.015}, shapes, 1.0 / 100.0);
}

/// Output of `system` driven by unit white process noise plus optional white measurement noise.
inline MultiChannelRecord simulate_outputs(const SyntheticSystem& system, Eigen::Index samples, std::uint64_t seed,
                                           double measurement_noise = 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Eigen::Index n = system.a.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd w(n);
    RowMatrix y(system.c.rows(), samples);
    for (Eigen::Index burn = 0; burn < 2000 + samples; ++burn) {
        if (burn >= 2000) {
            y.col(burn - 2000) = system.c * x;
            for (Eigen::Index c = 0; c < y.rows(); ++c) y(c, burn - 2000) += measurement_noise * normal(rng);
        }
        for (Eigen::Index j = 0; j < n; ++j) w(j) = normal(rng);
        x = system.a * x + w;
    }
    return MultiChannelRecord(1.0 / system.dt, std::move(y));
}

}  // namespace omabench::test

#include "omabench/beam_fem.hpp"
#include "omabench/error.hpp"
#include "omabench/modal_metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace omabench;

namespace {

ModalSolution reference_solution(SupportCondition support = SupportCondition::CF) {
    BeamModel m;
    m.support = support;
    return modal_analysis(assemble_model(m), 5);
}

IdentifiedModeSet as_identified(const ModalSolution& s) {
    IdentifiedModeSet set;
    for (Eigen::Index k = 0; k < s.modes(); ++k) {
        set.modes.push_back({s.frequencies_hz(k), unit_normalize(s.channel_shapes.col(k)), std::nullopt, 1.0});
    }
    return set;
}

}  // namespace

TEST(Mac, Identity) {
    const Eigen::VectorXd phi = Eigen::VectorXd::LinSpaced(7, -1.0, 2.0);
    EXPECT_NEAR(mac(phi, phi), 1.0, 1e-15);
}

TEST(Mac, Orthogonality) { EXPECT_EQ(mac(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 0.0); }

TEST(Mac, ScaleAndSignInvariance) {
    const Eigen::VectorXd phi = Eigen::VectorXd::LinSpaced(9, 0.1, 3.0);
    EXPECT_NEAR(mac(phi, -2.5 * phi), 1.0, 1e-15);
}

TEST(Mac, RandomVectorProperties) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::VectorXd a(10), b(10);
        for (int j = 0; j < 10; ++j) {
            a(j) = n(rng);
            b(j) = n(rng);
        }
        const double m = mac(a, b);
        EXPECT_EQ(m, mac(b, a));
        EXPECT_GE(m, 0.0);
        EXPECT_LE(m, 1.0);
        const double s = std::exp(n(rng) * 5.0) * (trial % 2 ? -1.0 : 1.0);
        EXPECT_NEAR(mac(s * a, b), m, 1e-12);
        EXPECT_NEAR(mac(a, s * b), m, 1e-12);
    }
}

TEST(Mac, DiscreteSineOrthogonality) {
    for (int i = 1; i <= 5; ++i) {
        for (int k = 1; k <= 5; ++k) {
            if (i == k) continue;
            Eigen::VectorXd a(9), b(9);
            for (int j = 1; j <= 9; ++j) {
                a(j - 1) = std::sin(i * j * std::numbers::pi / 10.0);
                b(j - 1) = std::sin(k * j * std::numbers::pi / 10.0);
            }
            EXPECT_NEAR(mac(a, b), 0.0, 1e-10);
        }
    }
}

TEST(Mac, ZeroVectorAndMismatch) {
    EXPECT_THROW(mac(Eigen::Vector3d::Zero(), Eigen::Vector3d::Ones()), DomainError);
    EXPECT_THROW(mac(Eigen::Vector3d::Ones(), Eigen::Vector2d::Ones()), InvalidInput);
}

TEST(RelativeError, Examples) {
    EXPECT_NEAR(relative_error(8.0, 8.2), 2.4, 0.05);
    EXPECT_NEAR(relative_error(52.0, 52.2), 0.4, 0.05);
    EXPECT_EQ(relative_error(13.7, 13.7), 0.0);
    EXPECT_THROW(relative_error(1.0, 0.0), DomainError);
    EXPECT_THROW(relative_error(1.0, -2.0), DomainError);
}

TEST(Pairing, SelfPairing) {
    const ModalSolution ref = reference_solution();
    const ModePairing p = pair_to_reference(as_identified(ref), ref, 5);
    ASSERT_EQ(p.pairs.size(), 5u);
    EXPECT_EQ(p.identified_count(), 5);
    for (int k = 0; k < 5; ++k) {
        const ModePair& pk = p.pairs[static_cast<std::size_t>(k)];
        EXPECT_EQ(pk.reference_index, k);
        EXPECT_EQ(pk.identified_index, k);
        EXPECT_NEAR(pk.mac, 1.0, 1e-12);
        EXPECT_NEAR(*pk.error_percent, 0.0, 1e-12);
    }
}

TEST(Pairing, EmptySet) {
    const ModePairing p = pair_to_reference(IdentifiedModeSet{}, reference_solution(), 5);
    ASSERT_EQ(p.pairs.size(), 5u);
    EXPECT_EQ(p.identified_count(), 0);
    for (const auto& pk : p.pairs) {
        EXPECT_FALSE(pk.identified_index.has_value());
        EXPECT_FALSE(pk.frequency_hz.has_value());
        EXPECT_EQ(pk.mac, 0.0);
    }
}

TEST(Pairing, LowMacRejectedButRecorded) {
    const ModalSolution ref = reference_solution();
    IdentifiedModeSet set = as_identified(ref);
    // Corrupt mode 1 with a component of mode 3 so its MAC drops below 0.95.
    set.modes[0].shape = unit_normalize(ref.channel_shapes.col(0).normalized() + 0.6 * ref.channel_shapes.col(2).normalized());
    const double expected = mac(set.modes[0].shape, ref.channel_shapes.col(0));
    ASSERT_LT(expected, 0.95);
    const ModePairing p = pair_to_reference(set, ref, 5);
    EXPECT_FALSE(p.pairs[0].identified_index.has_value());
    EXPECT_NEAR(p.pairs[0].mac, expected, 1e-12);
    EXPECT_EQ(p.identified_count(), 4);
}

TEST(Pairing, FrequencyWindowRespected) {
    const ModalSolution ref = reference_solution();
    IdentifiedModeSet set = as_identified(ref);
    set.modes[1].frequency_hz *= 1.06;
    EXPECT_FALSE(pair_to_reference(set, ref, 5).pairs[1].identified_index.has_value());
    set.modes[1].frequency_hz = ref.frequencies_hz(1) * 1.04;
    const ModePairing p = pair_to_reference(set, ref, 5);
    ASSERT_TRUE(p.pairs[1].identified_index.has_value());
    EXPECT_NEAR(*p.pairs[1].error_percent, 4.0, 1e-9);
    PairingOptions wide;
    wide.frequency_window = 0.08;
    set.modes[1].frequency_hz = ref.frequencies_hz(1) * 1.069;
    EXPECT_TRUE(pair_to_reference(set, ref, 5, wide).pairs[1].identified_index.has_value());
}

TEST(Pairing, InjectiveWithTiesToSmallerError) {
    const ModalSolution ref = reference_solution();
    IdentifiedModeSet set;
    const Eigen::VectorXd shape = unit_normalize(ref.channel_shapes.col(0));
    set.modes.push_back({ref.frequencies_hz(0) * 0.98, shape, std::nullopt, 1.0});
    set.modes.push_back({ref.frequencies_hz(0) * 1.01, shape, std::nullopt, 1.0});
    const ModePairing p = pair_to_reference(set, ref, 5);
    ASSERT_TRUE(p.pairs[0].identified_index.has_value());
    EXPECT_EQ(*p.pairs[0].identified_index, 1);
    int used = 0;
    for (const auto& pk : p.pairs) used += pk.identified_index ? 1 : 0;
    EXPECT_EQ(used, 1);
}

TEST(Pairing, DeterministicAndFewerReferences) {
    const ModalSolution ref = reference_solution(SupportCondition::CC);
    const IdentifiedModeSet set = as_identified(ref);
    const ModePairing a = pair_to_reference(set, ref, 3);
    const ModePairing b = pair_to_reference(set, ref, 3);
    ASSERT_EQ(a.pairs.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(a.pairs[k].identified_index, b.pairs[k].identified_index);
        EXPECT_EQ(a.pairs[k].mac, b.pairs[k].mac);
    }
}

#include "omabench/dsp.hpp"
#include "omabench/error.hpp"
#include "omabench/noise_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace omabench;

namespace {

// Three channels of different amplitude and character, 50000 samples.
MultiChannelRecord signal_record(Eigen::Index samples = 50000) {
    RowMatrix d(3, samples);
    for (Eigen::Index i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * 1.0e-4;
        d(0, i) = std::sin(2.0 * std::numbers::pi * 8.2 * t);
        d(1, i) = 40.0 * std::cos(2.0 * std::numbers::pi * 51.0 * t) + 3.0;
        d(2, i) = 1e-3 * std::sin(2.0 * std::numbers::pi * 143.0 * t + 0.3);
    }
    return MultiChannelRecord(1.0e4, d, {"2", "3", "4"});
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

TEST(NlToSnr, TargetTable) {
    const std::pair<double, double> table[] = {{0.05, 26.02}, {0.10, 20.00}, {0.20, 13.98}, {0.50, 6.02},
                                               {0.75, 2.50},  {1.00, 0.00},  {2.00, -6.02}};
    for (const auto& [nl, db] : table) EXPECT_DOUBLE_EQ(round2(nl_to_snr_db(nl)) + 0.0, db) << nl;
}

TEST(NlToSnr, ExactAlgebra) {
    EXPECT_DOUBLE_EQ(nl_to_snr_db(1.0), 0.0);
    for (double nl : {0.05, 0.3, 1.0, 2.0, 7.5}) {
        EXPECT_NEAR(nl_to_snr(nl), 1.0 / (nl * nl), 1e-12 / (nl * nl));
        EXPECT_NEAR(nl_to_snr_db(nl), 10.0 * std::log10(nl_to_snr(nl)), 1e-12);
    }
}

TEST(NlToSnr, NonPositiveIsDomainError) {
    EXPECT_THROW(nl_to_snr_db(0.0), DomainError);
    EXPECT_THROW(nl_to_snr_db(-0.5), DomainError);
    EXPECT_THROW(nl_to_snr(0.0), DomainError);
}

TEST(MakeNoise, ZeroLevelIsZero) {
    const auto n = make_noise(signal_record(100), {0.0, 5});
    EXPECT_EQ(n.data().cwiseAbs().maxCoeff(), 0.0);
}

TEST(MakeNoise, NegativeLevelRejected) {
    EXPECT_THROW(make_noise(signal_record(100), {-0.1, 5}), InvalidParameter);
}

TEST(MakeNoise, RealizedSnrNearNominal) {
    const auto report = corrupt(signal_record(), {0.05, 77}).report;
    for (double db : report.snr_db) EXPECT_NEAR(db, 26.02, 0.2);
}

TEST(MakeNoise, PowerRatioConcentrates) {
    const auto rec = signal_record();
    const auto noise = make_noise(rec, {0.3, 8});
    for (Eigen::Index c = 0; c < rec.channels(); ++c) {
        const double ps = power_and_rms(rec.channel(c)).power;
        const double pn = power_and_rms(noise.channel(c)).power;
        EXPECT_NEAR(pn / (ps * 0.09), 1.0, 0.02) << c;
    }
}

TEST(MakeNoise, ChannelsIndependent) {
    const auto noise = make_noise(signal_record(), {1.0, 9});
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            const auto x = noise.data().row(a);
            const auto y = noise.data().row(b);
            EXPECT_NEAR(x.dot(y) / std::sqrt(x.squaredNorm() * y.squaredNorm()), 0.0, 0.02);
        }
    }
}

TEST(MakeNoise, Deterministic) {
    const auto rec = signal_record(2000);
    EXPECT_TRUE(make_noise(rec, {0.5, 3}).data() == make_noise(rec, {0.5, 3}).data());
    EXPECT_FALSE(make_noise(rec, {0.5, 3}).data() == make_noise(rec, {0.5, 4}).data());
}

TEST(Corrupt, ZeroLevelBitExact) {
    const auto rec = signal_record(1000);
    const auto c = corrupt(rec, {0.0, 1});
    EXPECT_TRUE(c.noisy.data() == rec.data());
    EXPECT_TRUE(std::isinf(c.report.nominal_snr_db));
}

TEST(Corrupt, SubtractingSameNoiseRecoversInput) {
    const auto rec = signal_record(5000);
    const auto c = corrupt(rec, {0.75, 12});
    const auto n = make_noise(rec, {0.75, 12});
    EXPECT_LE((c.noisy.data() - n.data() - rec.data()).cwiseAbs().maxCoeff(), 1e-12 * 40.0);
}

TEST(Corrupt, UnitLevelReport) {
    const auto c = corrupt(signal_record(), {1.0, 13});
    EXPECT_DOUBLE_EQ(c.report.nominal_snr_db, 0.0);
    ASSERT_EQ(c.report.snr_db.size(), 3u);
    for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(c.report.snr_db[j], 0.0, 0.2);
        EXPECT_NEAR(c.report.snr[j], c.report.signal_power[j] / c.report.noise_power[j], 1e-12 * c.report.snr[j]);
        EXPECT_NEAR(c.report.snr_db[j], 10.0 * std::log10(c.report.snr[j]), 1e-12);
    }
}

TEST(Corrupt, ConvergesWithSampleCount) {
    const auto c = corrupt(signal_record(1000000), {0.2, 14});
    for (double db : c.report.snr_db) EXPECT_NEAR(db, nl_to_snr_db(0.2), 0.05);
}

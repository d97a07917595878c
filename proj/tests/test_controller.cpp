#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"

namespace dwsim {
namespace {

using test::kA0;

struct Run {
    ChainOutput chain;
    DetectorConfig det;
};

Run run(const ScenarioConfig& cfg) {
    return {simulate_chain(cfg, false), cfg.resolved_detector()};
}

ScenarioConfig fast_config(std::size_t trial, double duration = 60.0) {
    ScenarioConfig cfg = preset("figure_suite");
    cfg.sample_rate_hz = 1200.0;
    cfg.duration_s = duration;
    cfg.detector.t0_s = duration;
    return trial_config(cfg, trial);
}

EnvelopeSeries scaled(const EnvelopeSeries& s, double alpha, double beta) {
    EnvelopeSeries out = s;
    for (double& v : out.values_v) v = alpha * kA0 + beta * (v - kA0);
    return out;
}

TEST(CrosscorrDetect, FigureScenarioWatermarkPresent) {
    const auto r = run(test::figure_config());
    ASSERT_EQ(r.chain.envelope.size(), 7200u);
    for (auto mode : {Normalization::ReportedMean, Normalization::NominalA0}) {
        DetectorConfig det = r.det;
        det.normalization = mode;
        const auto v = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0);
        EXPECT_GE(v.d_w, 0.85);
        EXPECT_LE(v.d_w, 1.15);
        EXPECT_EQ(v.decision, Decision::WatermarkPresent);
        EXPECT_FALSE(v.fault_flag);
        EXPECT_EQ(classify(v), Classification::NoAttack);
    }
}

TEST(CrosscorrDetect, PerSeedBandOverSeveralSeeds) {
    // Band [0.85, 1.15] sits outside the 0.5% / 99.5% oracle quantiles (0.847 / 1.14)
    // only marginally, so spot-check a handful of seeds rather than a sweep.
    for (std::uint64_t s = 1; s <= 6; ++s) {
        const auto r = run(test::figure_config(2 * s + 1, 2 * s + 2));
        const auto v = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, r.det, kA0);
        EXPECT_GE(v.d_w, 0.85) << "seed " << s;
        EXPECT_LE(v.d_w, 1.15) << "seed " << s;
    }
}

TEST(CrosscorrDetect, FlatEnvelopeIsAttack) {
    const auto r = run(test::figure_config());
    const auto flat = naive_attack(kA0, 1.0, 60.0, 120.0, r.chain.envelope.t0_s);
    for (auto mode : {Normalization::ReportedMean, Normalization::NominalA0}) {
        DetectorConfig det = r.det;
        det.normalization = mode;
        const auto v = crosscorr_detect(flat, r.chain.nw_reference, det, kA0);
        EXPECT_LT(std::abs(v.d_w), 0.15);
        EXPECT_EQ(v.decision, Decision::AttackSuspected);
        EXPECT_EQ(classify(v), Classification::Attack);
        EXPECT_LT(v.variance_ratio, 0.05);
        EXPECT_TRUE(v.variance_alarm);
    }
}

TEST(CrosscorrDetect, ProportionalFakeKeepsDwAndRaisesFault) {
    const auto r = run(test::figure_config());
    const auto genuine = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, r.det, kA0);
    const auto fake = synthesize_fake(extract_noise(r.chain.envelope, kA0),
                                      AttackParams::proportional(0.5), kA0);
    const auto v = crosscorr_detect(fake, r.chain.nw_reference, r.det, kA0);
    EXPECT_NEAR(v.d_w, genuine.d_w, 1e-9);
    EXPECT_EQ(v.decision, Decision::WatermarkPresent);
    EXPECT_TRUE(v.fault_flag);
    EXPECT_NEAR(v.reported_mean_ratio, 0.5, 0.01);
    EXPECT_EQ(classify(v), Classification::FaultSuspected);
}

TEST(CrosscorrDetect, ScaleInvarianceForAnyFactor) {
    const auto r = run(test::figure_config(21, 22));
    const auto genuine = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, r.det, kA0);
    for (double k : {0.01, 0.1, 0.25, 0.5, 0.9, 1.0}) {
        const auto v = crosscorr_detect(scaled(r.chain.envelope, k, k), r.chain.nw_reference, r.det, kA0);
        EXPECT_NEAR(v.d_w, genuine.d_w, 1e-9) << k;
        EXPECT_EQ(v.decision, genuine.decision);
        EXPECT_NEAR(v.variance_ratio, genuine.variance_ratio, 1e-9);
    }
}

TEST(CrosscorrDetect, LinearInBetaWithNominalNormalization) {
    const auto r = run(test::figure_config());
    DetectorConfig det = r.det;
    det.normalization = Normalization::NominalA0;
    const double d1 = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0).d_w;
    for (double beta : {0.0, 0.25, 0.5, 1.0}) {
        const auto v = crosscorr_detect(scaled(r.chain.envelope, 1.0, beta), r.chain.nw_reference, det, kA0);
        EXPECT_NEAR(v.d_w, beta * d1, 1e-9);
    }
}

TEST(CrosscorrDetect, UsesThePrivateReference) {
    const auto r = run(test::figure_config());
    // 3 s = 3 / B for the 1 Hz watermark; 360 reports.
    std::vector<double> shifted(r.chain.nw_reference.values());
    std::rotate(shifted.begin(), shifted.begin() + 360, shifted.end());
    const SampledSignal ref(shifted, 120.0, r.chain.nw_reference.t0_s());
    const auto v = crosscorr_detect(r.chain.envelope, ref, r.det, kA0);
    EXPECT_LT(v.d_w, r.det.threshold);
    EXPECT_EQ(v.decision, Decision::AttackSuspected);
}

TEST(CrosscorrDetect, Errors) {
    const auto r = run(test::figure_config());
    DetectorConfig det = r.det;
    det.t0_s = 61.0;
    EXPECT_THROW(crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0), ParameterError);
    det = r.det;
    det.expected_nw_ms = 0.0;
    EXPECT_THROW(crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0), ParameterError);
    EXPECT_THROW(crosscorr_detect(r.chain.envelope, r.chain.nw_reference.tail(100), r.det, kA0),
                 ParameterError);
    const auto zero = naive_attack(kA0, 0.0, 60.0, 120.0);
    EXPECT_THROW(crosscorr_detect(zero, r.chain.nw_reference, r.det, kA0), DegenerateInputError);
    det = r.det;
    det.threshold = 1.5;
    EXPECT_THROW(crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0), ParameterError);
}

TEST(CrosscorrDetect, ShorterAveragingWindowUsesTail) {
    const auto r = run(test::figure_config());
    DetectorConfig det = r.det;
    det.t0_s = 30.0;
    const auto v = crosscorr_detect(r.chain.envelope, r.chain.nw_reference, det, kA0);
    EnvelopeSeries tail{std::vector<double>(r.chain.envelope.values_v.end() - 3600,
                                            r.chain.envelope.values_v.end()),
                        120.0, 0.0};
    const auto ref_tail = r.chain.nw_reference.tail(3600);
    const auto w = crosscorr_detect(tail, SampledSignal(ref_tail.values(), 120.0), det, kA0);
    EXPECT_DOUBLE_EQ(v.d_w, w.d_w);
}

TEST(VarianceDetect, Examples) {
    const auto r = run(test::figure_config());
    const double total = r.det.expected_total_ms;
    EXPECT_NEAR(total, 0.13, 1e-12);
    const double genuine = variance_detect(r.chain.envelope, r.det, kA0, total);
    EXPECT_GE(genuine, 0.8);
    EXPECT_LE(genuine, 1.2);
    const auto naive = naive_attack(kA0, 1.0, 60.0, 120.0);
    EXPECT_LT(variance_detect(naive, r.det, kA0, total), 0.05);
    const auto fake = scaled(r.chain.envelope, 0.5, 0.5);
    const double prop = variance_detect(fake, r.det, kA0, total);
    EXPECT_GE(prop, 0.8);
    EXPECT_LE(prop, 1.2);
    EXPECT_THROW(variance_detect(r.chain.envelope, r.det, kA0, 0.0), ParameterError);
}

TEST(Classify, Table) {
    DetectorVerdict v;
    v.decision = Decision::WatermarkPresent;
    v.fault_flag = false;
    EXPECT_EQ(classify(v), Classification::NoAttack);
    v.fault_flag = true;
    EXPECT_EQ(classify(v), Classification::FaultSuspected);
    v.decision = Decision::AttackSuspected;
    EXPECT_EQ(classify(v), Classification::Attack);
    v.fault_flag = false;
    EXPECT_EQ(classify(v), Classification::Attack);
    EXPECT_EQ(to_string(Classification::FaultSuspected), "FAULT_SUSPECTED");
    EXPECT_EQ(to_string(Decision::WatermarkPresent), "WATERMARK_PRESENT");
}

TEST(CrosscorrDetect, SpreadShrinksWithAveragingTime) {
    auto spread = [](double t0) {
        std::vector<double> d;
        for (std::size_t i = 0; i < 100; ++i) {
            const auto r = run(fast_config(i, t0));
            d.push_back(crosscorr_detect(r.chain.envelope, r.chain.nw_reference, r.det, kA0).d_w);
        }
        return std::sqrt(variance(d));
    };
    const double s15 = spread(15.0), s60 = spread(60.0), s240 = spread(240.0);
    EXPECT_NEAR(s15 / s60, 2.0, 0.6);
    EXPECT_NEAR(s60 / s240, 2.0, 0.6);
}

}  // namespace
}  // namespace dwsim

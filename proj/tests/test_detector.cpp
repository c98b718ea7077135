#include <driftguard/detector.hpp>

#include <cmath>
#include <random>

#include <gtest/gtest.h>

using namespace driftguard;

namespace {

std::vector<Event> labeled_events(int n_benign, int n_attack, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise;
    std::vector<Event> events;
    for (int i = 0; i < n_benign + n_attack; ++i) {
        Event e;
        e.t = i;
        e.label = i < n_benign ? 0 : 1;
        const double shift = e.label == 1 ? 6.0 : 0.0;
        e.features = {noise(rng) + shift, noise(rng) - shift};
        events.push_back(e);
    }
    return events;
}

}  // namespace

TEST(FitPrior, MatchesSampleMoments) {
    std::vector<Event> rows;
    for (int i = 0; i < 1000; ++i) {
        Event e;
        e.features = {static_cast<double>(i % 10), 4.0};
        rows.push_back(e);
    }
    const std::vector<NigParams> priors = fit_prior(rows, 2, 20.0);
    ASSERT_EQ(priors.size(), 2u);
    EXPECT_NEAR(priors[0].mu, 4.5, 1e-9);
    EXPECT_DOUBLE_EQ(priors[0].kappa, 20.0);
    EXPECT_DOUBLE_EQ(priors[0].alpha, 10.0);
    EXPECT_NEAR(priors[0].beta, 8.25 * 10.0, 1e-6);  // var of 0..9 is 8.25
    // Constant second feature floors to a tiny positive beta.
    EXPECT_GT(priors[1].beta, 0.0);
    // Predictive variance approximates the sample variance.
    const double pred_var =
        priors[0].beta * (priors[0].kappa + 1.0) /
        (priors[0].alpha * priors[0].kappa);
    EXPECT_NEAR(pred_var, 8.25 * 21.0 / 20.0, 1e-6);
}

TEST(BuildConfig, InflatedPriorWidensMaliciousBeta) {
    DetectorSettings settings;
    settings.malicious_fit = MaliciousFit::kInflate;
    settings.scale_inflation = 10.0;
    settings.malicious_prior_strength = settings.prior_strength;
    const std::vector<Event> train = labeled_events(400, 0, 1);
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);
    ASSERT_EQ(config.dimension(), 2u);
    EXPECT_NEAR(config.malicious_prior[0].beta,
                10.0 * config.benign_prior[0].beta, 1e-9);
    EXPECT_DOUBLE_EQ(config.mixing_weight, 0.99);
}

TEST(BuildConfig, AutoUsesLabelsWhenPresent) {
    DetectorSettings settings;
    const std::vector<Event> train = labeled_events(400, 40, 2);
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);
    // Attack rows center near (+6, -6); the fitted malicious prior follows.
    EXPECT_GT(config.malicious_prior[0].mu, 3.0);
    EXPECT_LT(config.malicious_prior[1].mu, -3.0);
}

TEST(BuildConfig, LabelsModeWithoutAttacksThrows) {
    DetectorSettings settings;
    settings.malicious_fit = MaliciousFit::kLabels;
    const std::vector<Event> train = labeled_events(100, 0, 3);
    EXPECT_THROW(build_bocpd_config(settings, train, 0.01),
                 std::invalid_argument);
}

TEST(BuildConfig, MixingWeightOverrideWins) {
    DetectorSettings settings;
    settings.mixing_weight = 0.7;
    const std::vector<Event> train = labeled_events(100, 0, 4);
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);
    EXPECT_DOUBLE_EQ(config.mixing_weight, 0.7);
}

TEST(RunDetector, ScoresAreProbabilitiesAndDeterministic) {
    DetectorSettings settings;
    settings.prior_strength = 50.0;
    const std::vector<Event> train = labeled_events(500, 0, 5);
    const std::vector<Event> test = labeled_events(200, 10, 6);
    const DecisionPolicy policy = DecisionPolicy::make(1.0, 10.0, 0.01);
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);

    const DetectionRun a = run_detector(config, test, policy);
    const DetectionRun b = run_detector(config, test, policy);
    ASSERT_EQ(a.events.size(), test.size());
    ASSERT_EQ(a.step_log_evidence.size(), test.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        ASSERT_GE(a.events[i].score, 0.0);
        ASSERT_LE(a.events[i].score, 1.0);
        ASSERT_EQ(a.events[i].score, b.events[i].score);
        ASSERT_EQ(a.events[i].alert, a.events[i].score > policy.threshold);
        ASSERT_EQ(a.events[i].t, test[i].t);
        ASSERT_EQ(a.events[i].label, test[i].label);
    }
}

TEST(RunDetector, ObviousAttackBurstRaisesScores) {
    DetectorSettings settings;
    settings.prior_strength = 300.0;
    settings.malicious_fit = MaliciousFit::kInflate;
    const std::vector<Event> train = labeled_events(2000, 0, 7);

    std::mt19937 rng(8);
    std::normal_distribution<double> noise;
    std::vector<Event> test;
    for (int i = 0; i < 300; ++i) {
        Event e;
        e.t = i;
        e.label = (i >= 150 && i < 170) ? 1 : 0;
        const double shift = e.label == 1 ? 6.0 : 0.0;
        e.features = {noise(rng) + shift, noise(rng) + shift};
        test.push_back(e);
    }
    const DecisionPolicy policy = DecisionPolicy::make(1.0, 10.0, 0.01);
    const BocpdConfig config = build_bocpd_config(settings, train, 0.01);
    const DetectionRun run = run_detector(config, test, policy);

    double attack_mean = 0.0;
    double benign_mean = 0.0;
    int attack_count = 0;
    int benign_count = 0;
    for (const ScoredEvent& e : run.events) {
        if (e.label == 1) {
            attack_mean += e.score;
            ++attack_count;
        } else {
            benign_mean += e.score;
            ++benign_count;
        }
    }
    attack_mean /= attack_count;
    benign_mean /= benign_count;
    EXPECT_GT(attack_mean, 0.5);
    EXPECT_LT(benign_mean, 0.05);
}

TEST(RunDetector, AttackFreeStreamsStayQuietUnderTheBudgetPolicy) {
    // attack_rate = 0 with a well-matched benign model: no alerts at the
    // 0.908 threshold in at least 18 of 20 seeded runs.
    int quiet_runs = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        SyntheticConfig synth;
        synth.dimension = 2;
        synth.length = 2500;
        synth.attack_rate = 0.0;
        synth.seed = static_cast<std::uint64_t>(seed);
        SplitStream stream = split_events(generate_synthetic(synth),
                                          SplitFractions{0.5, 0.2, 0.3});
        standardize(stream);
        const DecisionPolicy policy = DecisionPolicy::make(1.0, 10.0, 0.01);
        const DetectorSettings settings;
        const BocpdConfig config =
            build_bocpd_config(settings, stream.train, policy.base_rate);
        const DetectionRun run = run_detector(config, stream.test, policy);
        bool any_alert = false;
        for (const ScoredEvent& e : run.events) any_alert |= e.alert;
        if (!any_alert) ++quiet_runs;
    }
    EXPECT_GE(quiet_runs, 18);
}

TEST(DetectorSettings, ValidationCatchesBadValues) {
    DetectorSettings settings;
    settings.hazard = 0.0;
    EXPECT_THROW(settings.validate(), std::invalid_argument);
    settings = DetectorSettings{};
    settings.prior_strength = 1.0;
    EXPECT_THROW(settings.validate(), std::invalid_argument);
    settings = DetectorSettings{};
    settings.scale_inflation = 0.0;
    EXPECT_THROW(settings.validate(), std::invalid_argument);
}

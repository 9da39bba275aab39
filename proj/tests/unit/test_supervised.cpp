#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jitdp/classifiers.hpp"
#include "jitdp/ealr.hpp"
#include "jitdp/error.hpp"
#include "support/fixtures.hpp"

namespace jitdp {
namespace {

// Records with continuous metrics so that distance ties are practically impossible.
std::vector<ChangeRecord> continuous_records(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::bernoulli_distribution coin(0.4);
    std::vector<ChangeRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        ChangeRecord r;
        for (MetricId m : kAllMetrics) r.metric(m) = u(rng);
        r.metric(MetricId::FIX) = coin(rng) ? 1 : 0;
        r.defective = coin(rng);
        out.push_back(r);
    }
    out[0].defective = true;
    out[1].defective = false;
    return out;
}

TEST(Preprocess, KameiRecipeByHand) {
    ChangeRecord r;
    r.metric(MetricId::LA) = 10;
    r.metric(MetricId::LD) = 5;
    r.metric(MetricId::LT) = 4;
    r.metric(MetricId::NF) = 2;
    r.metric(MetricId::NUC) = 6;
    r.metric(MetricId::FIX) = 1;
    r.metric(MetricId::EXP) = 7;
    const auto x = preprocess_features(r, Preprocess::Kamei);
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::LA)], std::log1p(2.5));
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::LD)], std::log1p(1.25));
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::LT)], std::log1p(2.0));
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::NUC)], std::log1p(3.0));
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::EXP)], std::log1p(7.0));
    EXPECT_DOUBLE_EQ(x[index_of(MetricId::FIX)], 1.0);

    r.metric(MetricId::LT) = 0;
    EXPECT_DOUBLE_EQ(preprocess_features(r, Preprocess::Kamei)[index_of(MetricId::LA)], std::log1p(10.0));
    EXPECT_EQ(preprocess_features(r, Preprocess::Raw), r.metrics);
    EXPECT_EQ(parse_preprocess("raw"), Preprocess::Raw);
    EXPECT_THROW(parse_preprocess("zscore"), ConfigError);
}

TEST(LeastSquares, RecoversExactPlane) {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        const double a = i, b = (i * 7) % 5;
        x.insert(x.end(), {a, b});
        y.push_back(2 + 3 * a - b);
    }
    const LinearFit fit = fit_least_squares(x, 2, y);
    EXPECT_NEAR(fit.intercept, 2, 1e-10);
    EXPECT_NEAR(fit.slopes[0], 3, 1e-10);
    EXPECT_NEAR(fit.slopes[1], -1, 1e-10);
    EXPECT_FALSE(fit.rank_deficient);
}

TEST(LeastSquares, DuplicateColumnsTakeMinimumNorm) {
    std::vector<double> x, y;
    for (int i = 0; i < 8; ++i) {
        x.insert(x.end(), {double(i), double(i)});
        y.push_back(1 + 4.0 * i);
    }
    const LinearFit fit = fit_least_squares(x, 2, y);
    EXPECT_TRUE(fit.rank_deficient);
    EXPECT_NEAR(fit.slopes[0], 2, 1e-9);
    EXPECT_NEAR(fit.slopes[1], 2, 1e-9);
    const std::vector<double> probe = {3, 3};
    EXPECT_NEAR(fit.predict(probe), 13, 1e-9);
}

TEST(LeastSquares, ConstantFeaturesLeaveTheMean) {
    const std::vector<double> x = {1, 1, 1, 1};
    const std::vector<double> y = {1, 2, 3, 6};
    const LinearFit fit = fit_least_squares(x, 1, y);
    EXPECT_TRUE(fit.rank_deficient);
    EXPECT_NEAR(fit.predict(std::vector<double>{1}), 3, 1e-12);
}

// Residuals of the least-squares fit are orthogonal to the intercept and every column.
TEST(LeastSquaresProperty, ResidualsOrthogonal) {
    std::mt19937_64 rng(909);
    std::normal_distribution<double> n(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 20 + trial, cols = 1 + trial % 6;
        std::vector<double> x(rows * cols), y(rows);
        for (auto& v : x) v = n(rng);
        for (auto& v : y) v = n(rng);
        const LinearFit fit = fit_least_squares(x, cols, y);
        std::vector<double> dot(cols + 1, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            const double res = y[i] - fit.predict(std::span<const double>(x.data() + i * cols, cols));
            dot[0] += res;
            for (std::size_t j = 0; j < cols; ++j) dot[j + 1] += res * x[i * cols + j];
        }
        for (double d : dot) ASSERT_NEAR(d, 0.0, 1e-8);
    }
}

TEST(Ealr, RejectsUnfitTrainingData) {
    EXPECT_THROW(fit_ealr({}), UnfitError);
    const auto zero = testing::changes({0, 0}, {1, 0});
    EXPECT_THROW(fit_ealr(zero), UnfitError);
}

TEST(Ealr, EffortFloorAndDensityOrder) {
    std::mt19937_64 rng(1);
    auto recs = testing::random_records(rng, 60);
    recs[0].metric(MetricId::LA) = 0;
    recs[0].metric(MetricId::LD) = 0;
    recs[1].metric(MetricId::LA) = 0;
    recs[1].metric(MetricId::LD) = 1;
    const RegressionModel model = fit_ealr(recs);
    EXPECT_DOUBLE_EQ(model.effort_floor, 1.0);
    const Ranking r = predict_ealr(model, recs);
    ASSERT_EQ(r.size(), recs.size());
    for (std::size_t i = 1; i < r.size(); ++i) {
        ASSERT_GE(r[i - 1].score, r[i].score);
        ASSERT_DOUBLE_EQ(r[i].score, model.predict(recs[r[i].index]));
    }
}

TEST(Standardizer, SampleDeviationAndZeroSpread) {
    const auto recs = testing::changes({2, 4, 6}, {0, 1, 0});
    const Standardizer s = Standardizer::fit(recs);
    EXPECT_DOUBLE_EQ(s.mean[index_of(MetricId::LA)], 2.0);
    EXPECT_DOUBLE_EQ(s.scale[index_of(MetricId::LA)], 1.0);
    EXPECT_DOUBLE_EQ(s.scale[index_of(MetricId::NS)], 1.0);
    EXPECT_DOUBLE_EQ(s.apply(recs[2])[index_of(MetricId::LA)], 1.0);
}

TEST(Knn, OneNeighbourMatchesBruteForce) {
    std::mt19937_64 rng(1111);
    const auto train = continuous_records(rng, 80);
    const auto test = continuous_records(rng, 40);
    ClassifierConfig cfg;
    cfg.k = 1;
    const auto model = fit_classifier(ClassifierKind::Knn, train, cfg);

    std::array<double, kMetricCount> mean{}, sd{};
    for (std::size_t j = 0; j < kMetricCount; ++j) {
        for (const auto& r : train) mean[j] += r.metrics[j] / train.size();
        for (const auto& r : train) sd[j] += (r.metrics[j] - mean[j]) * (r.metrics[j] - mean[j]);
        sd[j] = std::sqrt(sd[j] / (train.size() - 1));
    }
    for (const auto& q : test) {
        double best = std::numeric_limits<double>::infinity();
        bool label = false;
        for (const auto& t : train) {
            double d = 0;
            for (std::size_t j = 0; j < kMetricCount; ++j) {
                const double diff = (q.metrics[j] - t.metrics[j]) / sd[j];
                d += diff * diff;
            }
            if (d < best) {
                best = d;
                label = t.defective;
            }
        }
        EXPECT_EQ(model.predict_probability(q), label ? 1.0 : 0.0);
    }
}

TEST(KnnProperty, InvariantToColumnScaling) {
    std::mt19937_64 rng(1212);
    for (int trial = 0; trial < 20; ++trial) {
        auto train = continuous_records(rng, 50);
        auto test = continuous_records(rng, 20);
        const auto before = fit_classifier(ClassifierKind::Knn, train);
        std::vector<double> p;
        for (const auto& r : test) p.push_back(before.predict_probability(r));
        const MetricId m = kAllMetrics[trial % kMetricCount];
        for (auto* set : {&train, &test}) {
            for (auto& r : *set) r.metric(m) *= 8.0;
        }
        const auto after = fit_classifier(ClassifierKind::Knn, train);
        for (std::size_t i = 0; i < test.size(); ++i) ASSERT_EQ(after.predict_probability(test[i]), p[i]);
    }
}

TEST(Classifiers, SingleClassTrainingIsDegenerate) {
    const auto recs = testing::changes({1, 2, 3}, {0, 0, 0});
    for (ClassifierKind k : {ClassifierKind::Knn, ClassifierKind::Tree, ClassifierKind::Forest}) {
        const auto model = fit_classifier(k, recs);
        EXPECT_TRUE(model.degenerate());
        EXPECT_EQ(model.predict_probability(recs[0]), 0.0);
    }
    EXPECT_THROW(fit_classifier(ClassifierKind::Tree, {}), UnfitError);
}

TEST(Tree, FitsSeparableDataExactly) {
    std::mt19937_64 rng(1313);
    auto recs = continuous_records(rng, 200);
    for (auto& r : recs) r.defective = r.metric(MetricId::NF) + r.metric(MetricId::EXP) > 10.0;
    ClassifierConfig cfg;
    cfg.tree.min_leaf = 1;
    const auto model = fit_classifier(ClassifierKind::Tree, recs, cfg);
    ASSERT_EQ(model.trees().size(), 1u);
    for (const auto& r : recs) EXPECT_EQ(model.predict_probability(r), r.defective ? 1.0 : 0.0);
    EXPECT_LE(model.trees()[0].depth(), cfg.tree.max_depth);
}

TEST(Tree, DepthLimitHolds) {
    std::mt19937_64 rng(1414);
    const auto recs = continuous_records(rng, 300);
    ClassifierConfig cfg;
    cfg.tree.max_depth = 3;
    const auto model = fit_classifier(ClassifierKind::Tree, recs, cfg);
    EXPECT_LE(model.trees()[0].depth(), 3u);
    for (const auto& r : recs) {
        const double p = model.predict_probability(r);
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, 1.0);
    }
}

TEST(Forest, SeedDeterminesModel) {
    std::mt19937_64 rng(1515);
    const auto train = continuous_records(rng, 120);
    const auto test = continuous_records(rng, 60);
    ClassifierConfig cfg;
    cfg.forest_trees = 25;
    const auto a = predict_classifier(fit_classifier(ClassifierKind::Forest, train, cfg), test);
    const auto b = predict_classifier(fit_classifier(ClassifierKind::Forest, train, cfg), test);
    EXPECT_EQ(a, b);
    cfg.seed = 2;
    const auto c = predict_classifier(fit_classifier(ClassifierKind::Forest, train, cfg), test);
    EXPECT_NE(a, c);
    EXPECT_EQ(fit_classifier(ClassifierKind::Forest, train, cfg).trees().size(), 25u);
}

TEST(Classifiers, TiesBreakTowardsCheaperChanges) {
    const auto recs = testing::changes({9, 3, 5, 1}, {0, 1, 0, 1});
    const auto model = fit_classifier(ClassifierKind::Knn, recs, ClassifierConfig{.k = 4});
    const Ranking r = predict_classifier(model, recs);
    EXPECT_EQ(r.order(), (std::vector<std::size_t>{3, 1, 2, 0}));
}

TEST(Classifiers, DensityOrderDividesByEffort) {
    std::mt19937_64 rng(1616);
    const auto train = testing::random_records(rng, 80);
    ClassifierConfig cfg;
    cfg.order = ClassifierOrder::Density;
    const auto model = fit_classifier(ClassifierKind::Tree, train, cfg);
    const Ranking r = predict_classifier(model, train);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto& rec = train[r[i].index];
        const double p = model.predict_probability(rec);
        if (effort(rec) > 0) ASSERT_DOUBLE_EQ(r[i].score, p / effort(rec));
    }
}

}  // namespace
}  // namespace jitdp

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "jitdp/error.hpp"
#include "jitdp/unsupervised.hpp"
#include "support/fixtures.hpp"

namespace jitdp {
namespace {

std::vector<double> column(const std::vector<ChangeRecord>& recs, MetricId m) {
    std::vector<double> v;
    for (const auto& r : recs) v.push_back(r.metric(m));
    return v;
}

TEST(Unsupervised, SmallestValueFirstAndZeroIsInfinite) {
    auto recs = testing::changes({1, 1, 1, 1}, {0, 0, 0, 0});
    const std::vector<double> lt = {5, 0, 2, 5};
    for (std::size_t i = 0; i < recs.size(); ++i) recs[i].metric(MetricId::LT) = lt[i];
    const Ranking r = rank_by_metric(recs, MetricId::LT);
    EXPECT_EQ(r.order(), (std::vector<std::size_t>{1, 2, 0, 3}));
    EXPECT_TRUE(std::isinf(r[0].score));
    EXPECT_DOUBLE_EQ(r[1].score, 0.5);
    EXPECT_DOUBLE_EQ(r[2].score, 0.2);
}

TEST(Unsupervised, LaAndLdAreRejected) {
    const auto recs = testing::changes({1, 2}, {0, 1});
    EXPECT_THROW(rank_by_metric(recs, MetricId::LA), RejectedMetricError);
    EXPECT_THROW(rank_by_metric(recs, MetricId::LD), RejectedMetricError);
}

TEST(Unsupervised, NegativeValuesRejected) {
    const auto recs = testing::changes({1, 2}, {0, 1});
    const std::vector<double> vals = {1.0, -2.0};
    EXPECT_THROW(rank_by_values(recs, vals), Error);
}

TEST(Unsupervised, EmptySliceGivesEmptyRanking) {
    EXPECT_TRUE(rank_by_metric({}, MetricId::NF).empty());
}

// Every rankable metric yields a permutation sorted by value, ties in input order.
TEST(UnsupervisedProperty, PermutationSortedAndStable) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const auto recs = testing::random_records(rng, 1 + trial % 40);
        for (MetricId m : kRankableMetrics) {
            const Ranking r = rank_by_metric(recs, m);
            auto order = r.order();
            ASSERT_EQ(order.size(), recs.size());
            auto sorted = order;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i);
            for (std::size_t i = 1; i < order.size(); ++i) {
                const double a = recs[order[i - 1]].metric(m);
                const double b = recs[order[i]].metric(m);
                ASSERT_LE(a, b);
                if (a == b) ASSERT_LT(order[i - 1], order[i]);
                ASSERT_GE(r[i - 1].score, r[i].score);
            }
            for (std::size_t i = 0; i < r.size(); ++i) {
                ASSERT_EQ(r[i].effort, effort(recs[r[i].index]));
                ASSERT_EQ(r[i].defective, recs[r[i].index].defective);
            }
        }
    }
}

// A strictly increasing transform of the values never changes the order.
TEST(UnsupervisedProperty, MonotoneTransformInvariance) {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const auto recs = testing::random_records(rng, 30);
        for (MetricId m : kRankableMetrics) {
            auto vals = column(recs, m);
            std::vector<double> transformed;
            for (double v : vals) transformed.push_back(3.0 * v * v + std::sqrt(v));
            EXPECT_EQ(rank_by_values(recs, vals).order(), rank_by_values(recs, transformed).order());
        }
    }
}

// The churn ranker is the value ranker over LA + LD.
TEST(UnsupervisedProperty, ChurnMatchesSummedColumn) {
    std::mt19937_64 rng(303);
    const auto recs = testing::random_records(rng, 1000);
    std::vector<double> churn;
    for (const auto& r : recs) churn.push_back(r.metric(MetricId::LA) + r.metric(MetricId::LD));
    EXPECT_EQ(rank_by_churn(recs), rank_by_values(recs, churn));
}

TEST(Ranking, FromSortedRejectsIncreasingScores) {
    std::vector<RankedChange> ok = {{0, 3.0, 1.0, true}, {1, 3.0, 2.0, false}, {2, 1.0, 1.0, false}};
    EXPECT_NO_THROW(Ranking::from_sorted(ok));
    std::vector<RankedChange> bad = {{0, 1.0, 1.0, true}, {1, 2.0, 1.0, false}};
    EXPECT_THROW(Ranking::from_sorted(bad), Error);
}

TEST(Ranking, TieBreakByEffort) {
    const auto recs = testing::changes({9, 3, 5, 1}, {0, 1, 0, 1});
    const std::vector<double> scores = {0.5, 0.5, 0.9, 0.5};
    EXPECT_EQ(Ranking::by_score(recs, scores).order(), (std::vector<std::size_t>{2, 0, 1, 3}));
    EXPECT_EQ(Ranking::by_score(recs, scores, TieBreak::AscendingEffort).order(),
              (std::vector<std::size_t>{2, 3, 1, 0}));
    const std::vector<double> nan = {0.5, std::nan(""), 0.1, 0.2};
    EXPECT_THROW(Ranking::by_score(recs, nan), Error);
}

TEST(Ranking, Totals) {
    const auto recs = testing::changes({9, 3, 5, 1}, {0, 1, 0, 1});
    const Ranking r = testing::as_given(recs);
    EXPECT_DOUBLE_EQ(r.total_effort(), 18.0);
    EXPECT_EQ(r.total_defective(), 2u);
}

}  // namespace
}  // namespace jitdp

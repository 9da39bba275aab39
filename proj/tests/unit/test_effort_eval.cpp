#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "jitdp/effort_eval.hpp"
#include "jitdp/error.hpp"
#include "jitdp/unsupervised.hpp"
#include "support/fixtures.hpp"

namespace jitdp {
namespace {

using testing::as_given;
using testing::changes;
using testing::in_order;

// Area under the lift chart accumulated change by change: each change contributes a
// trapezoid whose width is its share of effort, clipped at `cut`.
double oracle_area(const std::vector<ChangeRecord>& recs, const std::vector<std::size_t>& order, double cut) {
    double e_total = 0, d_total = 0;
    for (const auto& r : recs) {
        e_total += effort(r);
        d_total += r.defective ? 1 : 0;
    }
    double x = 0, y = 0, area = 0;
    for (std::size_t i : order) {
        const double w = effort(recs[i]) / e_total;
        const double h = (recs[i].defective ? 1.0 : 0.0) / d_total;
        if (x + w <= cut) {
            area += w * (y + h / 2);
        } else if (x < cut) {
            const double part = cut - x;
            area += part * (y + h * (part / w) / 2);
        }
        x += w;
        y += h;
    }
    return area;
}

std::vector<std::size_t> by_density(const std::vector<ChangeRecord>& recs, bool best_first) {
    auto dens = [&](std::size_t i) {
        const double e = effort(recs[i]);
        if (!recs[i].defective) return 0.0;
        return e > 0 ? 1.0 / e : std::numeric_limits<double>::infinity();
    };
    std::vector<std::size_t> idx(recs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return best_first ? dens(a) > dens(b) : dens(a) < dens(b);
    });
    return idx;
}

double oracle_popt(const std::vector<ChangeRecord>& recs, const std::vector<std::size_t>& order, double cut) {
    const double opt = oracle_area(recs, by_density(recs, true), cut);
    const double worst = oracle_area(recs, by_density(recs, false), cut);
    return std::clamp(1 - (opt - oracle_area(recs, order, cut)) / (opt - worst), 0.0, 1.0);
}

std::vector<ChangeRecord> random_slice(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> e(0, 30);
    std::bernoulli_distribution defect(0.3);
    std::vector<ChangeRecord> recs;
    for (std::size_t i = 0; i < n; ++i) recs.push_back(testing::change(e(rng), defect(rng)));
    recs[0].defective = true;
    recs[0].metric(MetricId::LA) += 1;
    return recs;
}

std::vector<std::size_t> shuffled(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

TEST(Cutoff, StrictPrefixWithinBudget) {
    EXPECT_EQ(effort_cutoff(as_given(changes({10, 10, 10, 10, 10}, {0, 0, 0, 0, 0})), 0.2).inspected, 1u);
    EXPECT_EQ(effort_cutoff(as_given(changes({30, 10, 10}, {1, 1, 1})), 0.2).inspected, 0u);
    EXPECT_EQ(effort_cutoff(as_given(changes({0, 0, 5, 5}, {0, 1, 0, 0})), 0.5).inspected, 3u);
    EXPECT_EQ(effort_cutoff(as_given(changes({1, 2, 3}, {0, 1, 0})), 1.0).inspected, 3u);
    const Cutoff zero = effort_cutoff(as_given(changes({0, 0}, {1, 0})), 0.2);
    EXPECT_TRUE(zero.degenerate);
    EXPECT_EQ(zero.inspected, 0u);
}

TEST(Cutoff, RejectsFractionOutsideUnitInterval) {
    const Ranking r = as_given(changes({1}, {1}));
    EXPECT_THROW(effort_cutoff(r, 0.0), Error);
    EXPECT_THROW(effort_cutoff(r, 1.5), Error);
    EXPECT_THROW(popt(r, -0.1), Error);
}

TEST(Confusion, HandComputedScores) {
    std::vector<double> e = {1, 1, 1, 1};
    std::vector<int> l = {1, 0, 0, 0};
    for (int i = 0; i < 9; ++i) {
        e.push_back(2);
        l.push_back(1);
    }
    const Confusion c = confusion_scores(as_given(changes(e, l)), 0.2);
    EXPECT_EQ(c.true_positives, 1u);
    EXPECT_EQ(c.false_positives, 3u);
    EXPECT_EQ(c.false_negatives, 9u);
    EXPECT_DOUBLE_EQ(c.recall, 0.1);
    EXPECT_DOUBLE_EQ(c.precision, 0.25);
    EXPECT_NEAR(c.f1, 0.05 / 0.35, 1e-15);
    EXPECT_FALSE(c.degenerate);
}

TEST(Confusion, NoDefectsIsDegenerate) {
    const Confusion c = confusion_scores(as_given(changes({1, 2, 3}, {0, 0, 0})), 0.5);
    EXPECT_TRUE(c.degenerate);
    EXPECT_EQ(c.recall, 0.0);
    EXPECT_EQ(c.f1, 0.0);
}

TEST(Popt, HandComputedThreeChangeExample) {
    const auto recs = changes({1, 1, 2}, {1, 0, 1});
    const Ranking r = as_given(recs);
    EXPECT_DOUBLE_EQ(LiftCurve::from_ranking(r).area(1.0), 0.5625);
    EXPECT_DOUBLE_EQ(LiftCurve::optimal(r).area(1.0), 0.6875);
    EXPECT_DOUBLE_EQ(LiftCurve::worst(r).area(1.0), 0.3125);
    const PoptResult p = popt(r, 1.0);
    EXPECT_NEAR(p.value, 2.0 / 3.0, 1e-15);
    EXPECT_FALSE(p.degenerate);
    EXPECT_NEAR(popt(r, 0.2, PoptRange::Full).value, 2.0 / 3.0, 1e-15);
}

TEST(Popt, DegenerateSlicesPinnedToHalf) {
    EXPECT_EQ(popt(as_given(changes({1, 2}, {0, 0})), 0.2).value, 0.5);
    EXPECT_TRUE(popt(as_given(changes({0, 0}, {1, 0})), 0.2).degenerate);
    const PoptResult uniform = popt(as_given(changes({3, 3}, {1, 1})), 1.0);
    EXPECT_TRUE(uniform.degenerate);
    EXPECT_EQ(uniform.value, 0.5);
}

TEST(Popt, ZeroEffortDefectsComeFirstInOptimal) {
    const auto recs = changes({5, 0, 5}, {1, 1, 0});
    const auto pts = LiftCurve::optimal(as_given(recs)).points();
    EXPECT_DOUBLE_EQ(pts[1].x, 0.0);
    EXPECT_DOUBLE_EQ(pts[1].y, 0.5);
}

TEST(PoptProperty, MatchesIndependentOracle) {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        const auto recs = random_slice(rng, 2 + trial % 60);
        const auto order = shuffled(rng, recs.size());
        for (double f : {0.05, 0.2, 0.5, 1.0}) {
            const PoptResult p = popt(in_order(recs, order), f);
            if (p.degenerate) continue;
            ASSERT_NEAR(p.value, oracle_popt(recs, order, f), 1e-9) << "trial " << trial << " f " << f;
        }
    }
}

TEST(PoptProperty, BoundedOptimalOneWorstZero) {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 500; ++trial) {
        const auto recs = random_slice(rng, 2 + trial % 50);
        for (double f : {0.1, 0.2, 1.0}) {
            const PoptResult m = popt(in_order(recs, shuffled(rng, recs.size())), f);
            ASSERT_GE(m.value, 0.0);
            ASSERT_LE(m.value, 1.0);
            const PoptResult best = popt(in_order(recs, by_density(recs, true)), f);
            const PoptResult worst = popt(in_order(recs, by_density(recs, false)), f);
            if (best.degenerate) continue;
            ASSERT_NEAR(best.value, 1.0, 1e-12);
            ASSERT_NEAR(worst.value, 0.0, 1e-12);
        }
    }
}

TEST(PoptProperty, ReversalMirrorsOverFullRange) {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 300; ++trial) {
        const auto recs = random_slice(rng, 3 + trial % 30);
        auto order = shuffled(rng, recs.size());
        const PoptResult fwd = popt(in_order(recs, order), 1.0);
        std::reverse(order.begin(), order.end());
        const PoptResult back = popt(in_order(recs, order), 1.0);
        if (fwd.degenerate) continue;
        ASSERT_NEAR(fwd.value + back.value, 1.0, 1e-9);
    }
}

// Over every ordering of a small slice the density orders bound all lift curves.
TEST(PoptProperty, ExhaustiveOrderingsNeverBeatOptimal) {
    std::mt19937_64 rng(707);
    for (int trial = 0; trial < 40; ++trial) {
        const auto recs = random_slice(rng, 3 + trial % 6);
        const Ranking base = as_given(recs);
        for (double f : {0.2, 0.6, 1.0}) {
            const double opt = LiftCurve::optimal(base).area(f);
            const double worst = LiftCurve::worst(base).area(f);
            std::vector<std::size_t> perm(recs.size());
            std::iota(perm.begin(), perm.end(), 0);
            double best_seen = -1, worst_seen = 2;
            do {
                std::vector<RankedChange> items;
                for (std::size_t i : perm) items.push_back(base[i]);
                const double a = LiftCurve::from_order(items).area(f);
                ASSERT_LE(a, opt + 1e-12);
                ASSERT_GE(a, worst - 1e-12);
                best_seen = std::max(best_seen, a);
                worst_seen = std::min(worst_seen, a);
            } while (std::next_permutation(perm.begin(), perm.end()));
            EXPECT_NEAR(best_seen, opt, 1e-12);
            EXPECT_NEAR(worst_seen, worst, 1e-12);
        }
    }
}

TEST(ConfusionProperty, IdentitiesAndRecallMonotoneInFraction) {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 500; ++trial) {
        const auto recs = random_slice(rng, 1 + trial % 80);
        const Ranking r = in_order(recs, shuffled(rng, recs.size()));
        double last_recall = 0.0;
        for (double f = 0.05; f <= 1.0 + 1e-9; f += 0.05) {
            const Confusion c = confusion_scores(r, std::min(f, 1.0));
            const Cutoff cut = effort_cutoff(r, std::min(f, 1.0));
            ASSERT_EQ(c.true_positives + c.false_negatives, r.total_defective());
            ASSERT_EQ(c.true_positives + c.false_positives, cut.inspected);
            ASSERT_GE(c.recall, last_recall);
            double spent = 0;
            for (std::size_t i = 0; i < cut.inspected; ++i) spent += r[i].effort;
            ASSERT_LE(spent, std::min(f, 1.0) * r.total_effort() * (1 + 1e-9));
            if (cut.inspected < r.size()) {
                ASSERT_GT(spent + r[cut.inspected].effort, std::min(f, 1.0) * r.total_effort());
            }
            last_recall = c.recall;
        }
        ASSERT_DOUBLE_EQ(confusion_scores(r, 1.0).recall, 1.0);
    }
}

TEST(Evaluate, BundlesScores) {
    const auto recs = changes({1, 1, 2}, {1, 0, 1});
    const EvalScores s = evaluate(as_given(recs), 1.0);
    EXPECT_DOUBLE_EQ(s.recall, 1.0);
    EXPECT_NEAR(s.precision, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(s.popt, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(s.effort_fraction, 1.0);
    EXPECT_FALSE(s.degenerate);
}

}  // namespace
}  // namespace jitdp

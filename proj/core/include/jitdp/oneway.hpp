#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "jitdp/effort_eval.hpp"
#include "jitdp/metrics.hpp"
#include "jitdp/ranking.hpp"

namespace jitdp {

// Selection criterion; Mean is the unweighted mean of recall, precision, F1 and Popt.
enum class Goal { Mean, Recall, Precision, F1, Popt };

Goal parse_goal(std::string_view name);
std::string_view goal_name(Goal g) noexcept;
double goal_score(const EvalScores& s, Goal g) noexcept;

struct OneWayConfig {
    Goal goal = Goal::Mean;
    double effort_fraction = kDefaultEffortFraction;
    bool include_all_metrics = false;  // also consider LA and LD
    PoptRange popt_range = PoptRange::Cutoff;
};

// Training-side scores, one entry per candidate metric in declaration order.
struct MetricScoreTable {
    Goal goal = Goal::Mean;
    std::vector<std::pair<MetricId, EvalScores>> entries;

    const EvalScores& at(MetricId m) const;
};

struct OneWayModel {
    MetricId best = MetricId::NS;
    MetricScoreTable table;
    bool degenerate = false;  // no defective change in the training slice
};

// Scores every candidate metric's ranker on `train` and keeps the argmax of the goal.
// Ties go to the earliest metric. Throws UnfitError on empty or zero-effort training data.
OneWayModel oneway_train(std::span<const ChangeRecord> train, const OneWayConfig& config = {});

Ranking oneway_predict(MetricId best, std::span<const ChangeRecord> test);

}  // namespace jitdp

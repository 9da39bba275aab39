#include "jitdp/oneway.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "jitdp/error.hpp"
#include "jitdp/unsupervised.hpp"

namespace jitdp {

namespace {

Ranking rank_candidate(std::span<const ChangeRecord> records, MetricId m) {
    if (is_rankable(m)) return rank_by_metric(records, m);
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back(r.metric(m));
    return rank_by_values(records, values);
}

}  // namespace

Goal parse_goal(std::string_view name) {
    std::string n(name);
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (n == "mean") return Goal::Mean;
    if (n == "recall" || n == "acc") return Goal::Recall;
    if (n == "precision") return Goal::Precision;
    if (n == "f1" || n == "f") return Goal::F1;
    if (n == "popt") return Goal::Popt;
    throw ConfigError("unknown goal '" + std::string(name) + "' (expected mean|recall|precision|f1|popt)");
}

std::string_view goal_name(Goal g) noexcept {
    switch (g) {
        case Goal::Mean: return "mean";
        case Goal::Recall: return "recall";
        case Goal::Precision: return "precision";
        case Goal::F1: return "f1";
        case Goal::Popt: return "popt";
    }
    return "?";
}

double goal_score(const EvalScores& s, Goal g) noexcept {
    switch (g) {
        case Goal::Mean: return (s.recall + s.precision + s.f1 + s.popt) / 4.0;
        case Goal::Recall: return s.recall;
        case Goal::Precision: return s.precision;
        case Goal::F1: return s.f1;
        case Goal::Popt: return s.popt;
    }
    return 0.0;
}

const EvalScores& MetricScoreTable::at(MetricId m) const {
    for (const auto& [metric, scores] : entries) {
        if (metric == m) return scores;
    }
    throw Error("metric " + std::string(metric_name(m)) + " is not in the score table");
}

OneWayModel oneway_train(std::span<const ChangeRecord> train, const OneWayConfig& config) {
    if (train.empty()) throw UnfitError("OneWay: empty training data");
    double total_effort = 0.0;
    bool any_defective = false;
    for (const auto& r : train) {
        total_effort += effort(r);
        any_defective = any_defective || r.defective;
    }
    if (total_effort <= 0.0) throw UnfitError("OneWay: training data has zero total effort");

    OneWayModel model;
    model.table.goal = config.goal;
    model.degenerate = !any_defective;
    const auto consider = [&](MetricId m) {
        model.table.entries.emplace_back(m, evaluate(rank_candidate(train, m), config.effort_fraction, config.popt_range));
    };
    if (config.include_all_metrics) {
        for (MetricId m : kAllMetrics) consider(m);
    } else {
        for (MetricId m : kRankableMetrics) consider(m);
    }

    double best_score = -1.0;
    for (const auto& [metric, scores] : model.table.entries) {
        const double s = goal_score(scores, config.goal);
        if (s > best_score) {
            best_score = s;
            model.best = metric;
        }
    }
    return model;
}

Ranking oneway_predict(MetricId best, std::span<const ChangeRecord> test) { return rank_candidate(test, best); }

}  // namespace jitdp

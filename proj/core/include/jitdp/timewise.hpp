#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jitdp/classifiers.hpp"
#include "jitdp/dataset.hpp"
#include "jitdp/ealr.hpp"
#include "jitdp/effort_eval.hpp"
#include "jitdp/metrics.hpp"
#include "jitdp/oneway.hpp"

namespace jitdp {

// Train on buckets i, i+1; test on buckets i+4, i+5 (0-based bucket positions).
struct WindowSpec {
    std::size_t ordinal = 0;  // 1-based
    std::size_t train_first = 0;
    std::size_t train_last = 0;
    std::size_t test_first = 0;
    std::size_t test_last = 0;

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// N - 5 windows. Throws InsufficientHistoryError when N < 6.
std::vector<WindowSpec> make_windows(std::size_t bucket_count);
std::vector<WindowSpec> make_windows(std::span<const MonthBucket> buckets);

enum class WindowMode { Populated, Calendar };

WindowMode parse_window_mode(std::string_view name);
PoptRange parse_popt_range(std::string_view name);

struct Learner {
    enum class Kind { Metric, Churn, Ealr, Knn, Tree, Forest, OneWay };

    Kind kind = Kind::Metric;
    MetricId metric = MetricId::NS;  // Kind::Metric only

    static Learner of_metric(MetricId m) noexcept { return {Kind::Metric, m}; }
    static Learner of(Kind k) noexcept { return {k, MetricId::NS}; }

    // "LT", "churn", "ealr", "knn"/"ibk", "tree"/"j48", "forest"/"rf", "oneway".
    static Learner parse(std::string_view name);

    std::string name() const;
    bool supervised() const noexcept;  // fitted on the training slice

    friend bool operator==(const Learner&, const Learner&) = default;
};

// Expands a comma list that may contain the groups "all", "unsupervised" and "supervised".
std::vector<Learner> parse_learners(std::string_view list);

std::vector<Learner> all_learners();
std::vector<Learner> unsupervised_learners();      // the twelve metric rankers
std::vector<Learner> supervised_baseline_learners();  // EALR, KNN, TREE, FOREST

struct ExperimentConfig {
    double effort_fraction = kDefaultEffortFraction;
    PoptRange popt_range = PoptRange::Cutoff;
    Goal goal = Goal::Mean;
    bool oneway_all_metrics = false;
    Preprocess preprocess = Preprocess::Kamei;
    ClassifierConfig classifier{};
    WindowMode window_mode = WindowMode::Populated;
    unsigned threads = 1;
};

struct ExperimentResult {
    std::string project;
    std::string learner;
    std::size_t window = 0;
    EvalScores scores{};
    bool degenerate = false;
    bool skipped = false;
    std::string reason;

    friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

// Time-wise cross-validation over one project. Results come back ordered by window,
// then by the order of `learners`. Learner failures become skip records.
std::vector<ExperimentResult> run_experiment(const Dataset& ds, std::span<const Learner> learners,
                                             const ExperimentConfig& config = {});

}  // namespace jitdp

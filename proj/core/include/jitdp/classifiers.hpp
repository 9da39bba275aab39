#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "jitdp/dataset.hpp"
#include "jitdp/metrics.hpp"
#include "jitdp/ranking.hpp"

namespace jitdp {

enum class ClassifierKind { Knn, Tree, Forest };

std::string_view classifier_name(ClassifierKind k) noexcept;

enum class SplitCriterion { GainRatio, InfoGain };

// How predicted probabilities become an inspection order.
enum class ClassifierOrder {
    Probability,  // probability descending, cheaper change first on ties
    Density,      // probability / effort descending
};

struct TreeConfig {
    SplitCriterion criterion = SplitCriterion::GainRatio;
    std::size_t min_leaf = 2;
    std::size_t max_depth = 32;
    std::size_t features_per_split = 0;  // 0 = all
};

struct ClassifierConfig {
    std::size_t k = 8;
    TreeConfig tree{};
    std::size_t forest_trees = 100;
    std::uint64_t seed = 1;
    ClassifierOrder order = ClassifierOrder::Probability;
};

// Per-feature z-score parameters; a zero spread maps to 1.
struct Standardizer {
    std::array<double, kMetricCount> mean{};
    std::array<double, kMetricCount> scale{};

    static Standardizer fit(std::span<const ChangeRecord> train);
    std::array<double, kMetricCount> apply(const ChangeRecord& r) const;
};

// Binary decision tree over standardized metrics; leaves hold the training defect rate.
class DecisionTree {
public:
    struct Node {
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        double defect_rate = 0.0;
        bool leaf = true;
    };

    using Row = std::array<double, kMetricCount>;

    // `rows` indexes into `features`; duplicates are allowed (bootstrap samples).
    // `seed` only matters when cfg.features_per_split restricts the candidates.
    static DecisionTree grow(std::span<const Row> features, std::span<const bool> labels,
                             std::span<const std::size_t> rows, const TreeConfig& cfg,
                             std::uint64_t seed = 0);

    double predict(const Row& x) const;
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::size_t depth() const noexcept;

private:
    std::vector<Node> nodes_;
};

class ClassifierModel {
public:
    ClassifierKind kind() const noexcept { return kind_; }
    const ClassifierConfig& config() const noexcept { return config_; }

    // Single-class training data: every record gets the class prior.
    bool degenerate() const noexcept { return degenerate_; }

    double predict_probability(const ChangeRecord& r) const;

    std::span<const DecisionTree> trees() const noexcept { return trees_; }

private:
    friend ClassifierModel fit_classifier(ClassifierKind, std::span<const ChangeRecord>,
                                          const ClassifierConfig&);

    ClassifierKind kind_ = ClassifierKind::Knn;
    ClassifierConfig config_{};
    Standardizer standardizer_{};
    bool degenerate_ = false;
    double prior_ = 0.0;
    std::vector<DecisionTree::Row> train_rows_;
    std::vector<bool> train_labels_;
    std::vector<DecisionTree> trees_;
};

// Throws UnfitError on an empty training slice.
ClassifierModel fit_classifier(ClassifierKind kind, std::span<const ChangeRecord> train,
                               const ClassifierConfig& config = {});

Ranking predict_classifier(const ClassifierModel& model, std::span<const ChangeRecord> test);

}  // namespace jitdp

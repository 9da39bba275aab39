#include "jitdp/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include "jitdp/error.hpp"

namespace jitdp {

namespace {

double entropy(double positives, double total) {
    if (total <= 0.0 || positives <= 0.0 || positives >= total) return 0.0;
    const double p = positives / total;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

class TreeBuilder {
public:
    TreeBuilder(std::span<const DecisionTree::Row> features, std::span<const bool> labels,
                const TreeConfig& cfg, std::uint64_t seed)
        : features_(features), labels_(labels), cfg_(cfg), rng_(seeded_engine(seed, 0x74726565)) {}

    std::size_t grow(std::vector<std::size_t> rows, std::size_t depth, std::vector<DecisionTree::Node>& nodes) {
        const std::size_t n = rows.size();
        std::size_t positives = 0;
        for (std::size_t r : rows) positives += labels_[r] ? 1 : 0;

        const std::size_t id = nodes.size();
        nodes.push_back({});
        nodes[id].defect_rate = n > 0 ? static_cast<double>(positives) / static_cast<double>(n) : 0.0;

        const std::size_t min_leaf = std::max<std::size_t>(cfg_.min_leaf, 1);
        if (positives == 0 || positives == n || depth >= cfg_.max_depth || n < 2 * min_leaf) return id;

        const Split best = find_split(rows, positives, min_leaf);
        if (!best.found) return id;

        std::vector<std::size_t> left, right;
        for (std::size_t r : rows) {
            (features_[r][best.feature] <= best.threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        nodes[id].leaf = false;
        nodes[id].feature = best.feature;
        nodes[id].threshold = best.threshold;
        const std::size_t l = grow(std::move(left), depth + 1, nodes);
        const std::size_t r = grow(std::move(right), depth + 1, nodes);
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }

private:
    struct Split {
        bool found = false;
        std::size_t feature = 0;
        double threshold = 0.0;
        double merit = 0.0;
    };

    std::vector<std::size_t> candidate_features() {
        std::vector<std::size_t> all(kMetricCount);
        std::iota(all.begin(), all.end(), 0);
        const std::size_t k = cfg_.features_per_split;
        if (k == 0 || k >= kMetricCount) return all;
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, kMetricCount - 1);
            std::swap(all[i], all[pick(rng_)]);
        }
        all.resize(k);
        std::sort(all.begin(), all.end());
        return all;
    }

    Split find_split(const std::vector<std::size_t>& rows, std::size_t positives, std::size_t min_leaf) {
        const double n = static_cast<double>(rows.size());
        const double parent = entropy(static_cast<double>(positives), n);
        Split best;
        std::vector<std::pair<double, bool>> column(rows.size());
        for (std::size_t f : candidate_features()) {
            for (std::size_t i = 0; i < rows.size(); ++i) column[i] = {features_[rows[i]][f], labels_[rows[i]]};
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double left_pos = 0.0;
            for (std::size_t i = 1; i < column.size(); ++i) {
                left_pos += column[i - 1].second ? 1.0 : 0.0;
                if (column[i - 1].first == column[i].first) continue;
                if (i < min_leaf || rows.size() - i < min_leaf) continue;
                const double nl = static_cast<double>(i);
                const double nr = n - nl;
                const double gain = parent - (nl / n) * entropy(left_pos, nl) -
                                    (nr / n) * entropy(static_cast<double>(positives) - left_pos, nr);
                if (gain <= 1e-12) continue;
                double merit = gain;
                if (cfg_.criterion == SplitCriterion::GainRatio) {
                    const double p = nl / n;
                    const double split_info = -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
                    merit = gain / split_info;
                }
                if (!best.found || merit > best.merit) {
                    best = {true, f, (column[i - 1].first + column[i].first) / 2.0, merit};
                }
            }
        }
        return best;
    }

    std::span<const DecisionTree::Row> features_;
    std::span<const bool> labels_;
    TreeConfig cfg_;
    std::mt19937_64 rng_;
};

TreeConfig forest_tree_config(const ClassifierConfig& cfg) {
    TreeConfig t;
    t.criterion = SplitCriterion::InfoGain;
    t.min_leaf = 1;
    t.max_depth = cfg.tree.max_depth;
    t.features_per_split =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(kMetricCount)))));
    return t;
}

}  // namespace

std::string_view classifier_name(ClassifierKind k) noexcept {
    switch (k) {
        case ClassifierKind::Knn: return "KNN";
        case ClassifierKind::Tree: return "TREE";
        case ClassifierKind::Forest: return "FOREST";
    }
    return "?";
}

Standardizer Standardizer::fit(std::span<const ChangeRecord> train) {
    Standardizer s;
    const double n = static_cast<double>(train.size());
    for (std::size_t j = 0; j < kMetricCount; ++j) {
        double mean = 0.0;
        for (const auto& r : train) mean += r.metrics[j];
        mean = n > 0 ? mean / n : 0.0;
        double var = 0.0;
        for (const auto& r : train) var += (r.metrics[j] - mean) * (r.metrics[j] - mean);
        const double sd = n > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
        s.mean[j] = mean;
        s.scale[j] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

std::array<double, kMetricCount> Standardizer::apply(const ChangeRecord& r) const {
    std::array<double, kMetricCount> z{};
    for (std::size_t j = 0; j < kMetricCount; ++j) z[j] = (r.metrics[j] - mean[j]) / scale[j];
    return z;
}

DecisionTree DecisionTree::grow(std::span<const Row> features, std::span<const bool> labels,
                                std::span<const std::size_t> rows, const TreeConfig& cfg, std::uint64_t seed) {
    if (features.size() != labels.size()) throw Error("decision tree: label count mismatch");
    DecisionTree tree;
    TreeBuilder builder(features, labels, cfg, seed);
    builder.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0, tree.nodes_);
    return tree;
}

double DecisionTree::predict(const Row& x) const {
    std::size_t i = 0;
    while (!nodes_[i].leaf) i = x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
    return nodes_[i].defect_rate;
}

std::size_t DecisionTree::depth() const noexcept {
    std::vector<std::size_t> level(nodes_.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        deepest = std::max(deepest, level[i]);
        if (!nodes_[i].leaf) {
            level[nodes_[i].left] = level[i] + 1;
            level[nodes_[i].right] = level[i] + 1;
        }
    }
    return deepest;
}

ClassifierModel fit_classifier(ClassifierKind kind, std::span<const ChangeRecord> train,
                               const ClassifierConfig& config) {
    if (train.empty()) throw UnfitError(std::string(classifier_name(kind)) + ": empty training data");
    if (kind == ClassifierKind::Knn && config.k == 0) throw ConfigError("KNN: K must be at least 1");
    if (kind == ClassifierKind::Forest && config.forest_trees == 0) {
        throw ConfigError("FOREST: tree count must be at least 1");
    }

    ClassifierModel model;
    model.kind_ = kind;
    model.config_ = config;

    const auto positives = std::count_if(train.begin(), train.end(), [](const ChangeRecord& r) { return r.defective; });
    if (positives == 0 || static_cast<std::size_t>(positives) == train.size()) {
        model.degenerate_ = true;
        model.prior_ = positives == 0 ? 0.0 : 1.0;
        return model;
    }

    model.standardizer_ = Standardizer::fit(train);
    model.train_rows_.reserve(train.size());
    model.train_labels_.reserve(train.size());
    for (const auto& r : train) {
        model.train_rows_.push_back(model.standardizer_.apply(r));
        model.train_labels_.push_back(r.defective);
    }
    if (kind == ClassifierKind::Knn) return model;

    // std::vector<bool> has no contiguous storage to span over.
    const std::unique_ptr<bool[]> labels(new bool[train.size()]);
    for (std::size_t i = 0; i < train.size(); ++i) labels[i] = model.train_labels_[i];
    const std::span<const bool> label_span(labels.get(), train.size());

    if (kind == ClassifierKind::Tree) {
        std::vector<std::size_t> rows(train.size());
        std::iota(rows.begin(), rows.end(), 0);
        model.trees_.push_back(DecisionTree::grow(model.train_rows_, label_span, rows, config.tree, config.seed));
    } else {
        const TreeConfig tree_cfg = forest_tree_config(config);
        model.trees_.reserve(config.forest_trees);
        for (std::size_t t = 0; t < config.forest_trees; ++t) {
            auto rng = seeded_engine(config.seed, t);
            std::uniform_int_distribution<std::size_t> draw(0, train.size() - 1);
            std::vector<std::size_t> rows(train.size());
            for (auto& r : rows) r = draw(rng);
            model.trees_.push_back(DecisionTree::grow(model.train_rows_, label_span, rows, tree_cfg, rng()));
        }
    }
    model.train_rows_.clear();
    model.train_labels_.clear();
    return model;
}

double ClassifierModel::predict_probability(const ChangeRecord& r) const {
    if (degenerate_) return prior_;
    const auto z = standardizer_.apply(r);
    if (kind_ == ClassifierKind::Knn) {
        std::vector<std::pair<double, std::size_t>> dist(train_rows_.size());
        for (std::size_t i = 0; i < train_rows_.size(); ++i) {
            double d = 0.0;
            for (std::size_t j = 0; j < kMetricCount; ++j) {
                const double diff = z[j] - train_rows_[i][j];
                d += diff * diff;
            }
            dist[i] = {d, i};
        }
        const std::size_t k = std::min(config_.k, dist.size());
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        std::size_t defective = 0;
        for (std::size_t i = 0; i < k; ++i) defective += train_labels_[dist[i].second] ? 1 : 0;
        return static_cast<double>(defective) / static_cast<double>(k);
    }
    double sum = 0.0;
    for (const auto& tree : trees_) sum += tree.predict(z);
    return sum / static_cast<double>(trees_.size());
}

Ranking predict_classifier(const ClassifierModel& model, std::span<const ChangeRecord> test) {
    std::vector<double> scores;
    scores.reserve(test.size());
    for (const auto& r : test) {
        const double p = model.predict_probability(r);
        if (model.config().order == ClassifierOrder::Density) {
            const double e = effort(r);
            scores.push_back(e > 0.0 ? p / e : (p > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
        } else {
            scores.push_back(p);
        }
    }
    return Ranking::by_score(test, scores, TieBreak::AscendingEffort);
}

}  // namespace jitdp

#include "jitdp/unsupervised.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "jitdp/error.hpp"

namespace jitdp {

Ranking rank_by_values(std::span<const ChangeRecord> records, std::span<const double> values) {
    if (records.size() != values.size()) throw Error("rank_by_values: size mismatch");
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0)) throw Error("rank_by_values: metric values must be non-negative");
        order[i] = i;
    }
    // Sorting on the value itself keeps the order exact where 1/v would round two
    // neighbouring values to the same score.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<RankedChange> entries;
    entries.reserve(order.size());
    for (std::size_t i : order) {
        const double score = values[i] == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / values[i];
        entries.push_back({i, score, effort(records[i]), records[i].defective});
    }
    return Ranking::from_sorted(std::move(entries));
}

Ranking rank_by_metric(std::span<const ChangeRecord> records, MetricId m) {
    if (!is_rankable(m)) {
        throw RejectedMetricError("metric " + std::string(metric_name(m)) + " cannot be used as a ranker");
    }
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back(r.metric(m));
    return rank_by_values(records, values);
}

Ranking rank_by_churn(std::span<const ChangeRecord> records) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back(effort(r));
    return rank_by_values(records, values);
}

}  // namespace jitdp

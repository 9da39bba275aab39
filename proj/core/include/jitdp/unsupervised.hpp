#pragma once

#include <span>

#include "jitdp/dataset.hpp"
#include "jitdp/ranking.hpp"

namespace jitdp {

// Ranks by 1/value descending: smaller values first, zero treated as +inf.
// Ties keep input order. Values must be non-negative.
Ranking rank_by_values(std::span<const ChangeRecord> records, std::span<const double> values);

// Single-metric unsupervised predictor. Throws RejectedMetricError for LA and LD.
Ranking rank_by_metric(std::span<const ChangeRecord> records, MetricId m);

// Same rule with churn (LA + LD) as the metric.
Ranking rank_by_churn(std::span<const ChangeRecord> records);

}  // namespace jitdp

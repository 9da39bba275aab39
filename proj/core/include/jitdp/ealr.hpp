#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "jitdp/dataset.hpp"
#include "jitdp/metrics.hpp"
#include "jitdp/ranking.hpp"

namespace jitdp {

enum class Preprocess {
    Kamei,  // size normalisation followed by ln(1+x)
    Raw,
};

Preprocess parse_preprocess(std::string_view name);
std::string_view preprocess_name(Preprocess p) noexcept;

// Kamei recipe: LA and LD divided by LT, LT and NUC divided by NF (a zero divisor
// leaves the value unchanged), then ln(1+x) on everything but FIX.
std::array<double, kMetricCount> preprocess_features(const ChangeRecord& r, Preprocess p);

// Ordinary least squares with an intercept. Rank-deficient systems take the
// minimum-norm solution and set `rank_deficient`.
struct LinearFit {
    std::vector<double> slopes;
    double intercept = 0.0;
    bool rank_deficient = false;

    double predict(std::span<const double> x) const;
};

// `features` is row-major, rows x cols.
LinearFit fit_least_squares(std::span<const double> features, std::size_t cols,
                            std::span<const double> target);

// Effort-aware linear regression: regresses label / effort on the preprocessed metrics.
struct RegressionModel {
    LinearFit fit;
    Preprocess recipe = Preprocess::Kamei;
    double effort_floor = 0.0;  // smallest positive training effort

    double predict(const ChangeRecord& r) const;
};

// Throws UnfitError when the slice is empty or every change has zero effort.
RegressionModel fit_ealr(std::span<const ChangeRecord> train, Preprocess recipe = Preprocess::Kamei);

// Predicted defect density descending, ties in input order.
Ranking predict_ealr(const RegressionModel& model, std::span<const ChangeRecord> test);

}  // namespace jitdp

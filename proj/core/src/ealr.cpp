#include "jitdp/ealr.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "jitdp/error.hpp"

namespace jitdp {

Preprocess parse_preprocess(std::string_view name) {
    if (name == "kamei") return Preprocess::Kamei;
    if (name == "raw") return Preprocess::Raw;
    throw ConfigError("unknown preprocessing recipe '" + std::string(name) + "' (expected kamei|raw)");
}

std::string_view preprocess_name(Preprocess p) noexcept { return p == Preprocess::Kamei ? "kamei" : "raw"; }

std::array<double, kMetricCount> preprocess_features(const ChangeRecord& r, Preprocess p) {
    std::array<double, kMetricCount> x = r.metrics;
    if (p == Preprocess::Raw) return x;

    const auto divide = [&](MetricId num, MetricId den) {
        const double d = r.metric(den);
        if (d > 0.0) x[index_of(num)] = r.metric(num) / d;
    };
    divide(MetricId::LA, MetricId::LT);
    divide(MetricId::LD, MetricId::LT);
    divide(MetricId::LT, MetricId::NF);
    divide(MetricId::NUC, MetricId::NF);
    for (MetricId m : kAllMetrics) {
        if (m != MetricId::FIX) x[index_of(m)] = std::log1p(x[index_of(m)]);
    }
    return x;
}

double LinearFit::predict(std::span<const double> x) const {
    if (x.size() != slopes.size()) throw Error("linear model: feature count mismatch");
    double y = intercept;
    for (std::size_t i = 0; i < x.size(); ++i) y += slopes[i] * x[i];
    return y;
}

LinearFit fit_least_squares(std::span<const double> features, std::size_t cols,
                            std::span<const double> target) {
    const std::size_t rows = target.size();
    if (rows == 0) throw UnfitError("least squares: no rows");
    if (features.size() != rows * cols) throw Error("least squares: feature matrix has the wrong size");

    // Centering separates the intercept and keeps the decomposition well scaled.
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) x(i, j) = features[i * cols + j];
        y(i) = target[i];
    }
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    x.rowwise() -= x_mean;
    y.array() -= y_mean;

    LinearFit fit;
    fit.slopes.assign(cols, 0.0);
    if (cols > 0) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
        const double max_abs = x.cwiseAbs().maxCoeff();
        cod.setThreshold(std::max(rows, cols) * std::numeric_limits<double>::epsilon() * 16.0);
        const Eigen::VectorXd beta = max_abs > 0.0 ? Eigen::VectorXd(cod.solve(y)) : Eigen::VectorXd::Zero(cols);
        fit.rank_deficient = max_abs == 0.0 || static_cast<std::size_t>(cod.rank()) < cols;
        for (std::size_t j = 0; j < cols; ++j) fit.slopes[j] = beta(j);
        fit.intercept = y_mean - x_mean.dot(beta);
    } else {
        fit.intercept = y_mean;
    }
    for (double b : fit.slopes) {
        if (!std::isfinite(b)) throw UnfitError("least squares: non-finite coefficient");
    }
    if (!std::isfinite(fit.intercept)) throw UnfitError("least squares: non-finite intercept");
    return fit;
}

double RegressionModel::predict(const ChangeRecord& r) const {
    const auto x = preprocess_features(r, recipe);
    return fit.predict(x);
}

RegressionModel fit_ealr(std::span<const ChangeRecord> train, Preprocess recipe) {
    if (train.empty()) throw UnfitError("EALR: empty training data");
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& r : train) {
        const double e = effort(r);
        if (e > 0.0) floor = std::min(floor, e);
    }
    if (!std::isfinite(floor)) throw UnfitError("EALR: every training change has zero effort");

    std::vector<double> features;
    std::vector<double> target;
    features.reserve(train.size() * kMetricCount);
    target.reserve(train.size());
    for (const auto& r : train) {
        const auto x = preprocess_features(r, recipe);
        features.insert(features.end(), x.begin(), x.end());
        target.push_back((r.defective ? 1.0 : 0.0) / std::max(effort(r), floor));
    }
    RegressionModel model;
    model.fit = fit_least_squares(features, kMetricCount, target);
    model.recipe = recipe;
    model.effort_floor = floor;
    return model;
}

Ranking predict_ealr(const RegressionModel& model, std::span<const ChangeRecord> test) {
    std::vector<double> scores;
    scores.reserve(test.size());
    for (const auto& r : test) scores.push_back(model.predict(r));
    return Ranking::by_score(test, scores, TieBreak::InputOrder);
}

}  // namespace jitdp

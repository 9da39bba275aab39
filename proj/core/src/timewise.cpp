#include "jitdp/timewise.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>

#include "jitdp/error.hpp"
#include "jitdp/unsupervised.hpp"

namespace jitdp {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

ExperimentResult run_learner(const Learner& learner, std::span<const ChangeRecord> train,
                             std::span<const ChangeRecord> test, const ExperimentConfig& config,
                             std::size_t ordinal) {
    ExperimentResult res;
    res.learner = learner.name();
    res.window = ordinal;
    const auto skip = [&](std::string reason) {
        res.skipped = true;
        res.reason = std::move(reason);
        return res;
    };
    if (test.empty()) return skip("empty test window");
    if (learner.supervised() && train.empty()) return skip("empty training window");

    try {
        Ranking ranking;
        bool degenerate_model = false;
        switch (learner.kind) {
            case Learner::Kind::Metric: ranking = rank_by_metric(test, learner.metric); break;
            case Learner::Kind::Churn: ranking = rank_by_churn(test); break;
            case Learner::Kind::Ealr: ranking = predict_ealr(fit_ealr(train, config.preprocess), test); break;
            case Learner::Kind::Knn:
            case Learner::Kind::Tree:
            case Learner::Kind::Forest: {
                const ClassifierKind kind = learner.kind == Learner::Kind::Knn    ? ClassifierKind::Knn
                                            : learner.kind == Learner::Kind::Tree ? ClassifierKind::Tree
                                                                                  : ClassifierKind::Forest;
                ClassifierConfig cfg = config.classifier;
                cfg.seed = config.classifier.seed ^ (0x9E3779B97F4A7C15ULL * ordinal);
                const ClassifierModel model = fit_classifier(kind, train, cfg);
                if (model.degenerate()) return skip("single-class training data");
                ranking = predict_classifier(model, test);
                break;
            }
            case Learner::Kind::OneWay: {
                OneWayConfig cfg;
                cfg.goal = config.goal;
                cfg.effort_fraction = config.effort_fraction;
                cfg.include_all_metrics = config.oneway_all_metrics;
                cfg.popt_range = config.popt_range;
                const OneWayModel model = oneway_train(train, cfg);
                degenerate_model = model.degenerate;
                ranking = oneway_predict(model.best, test);
                break;
            }
        }
        res.scores = evaluate(ranking, config.effort_fraction, config.popt_range);
        res.degenerate = res.scores.degenerate || degenerate_model;
    } catch (const Error& e) {
        return skip(e.what());
    }
    return res;
}

}  // namespace

std::vector<WindowSpec> make_windows(std::size_t bucket_count) {
    if (bucket_count < 6) {
        throw InsufficientHistoryError("time-wise validation needs at least 6 month buckets, found " +
                                       std::to_string(bucket_count));
    }
    std::vector<WindowSpec> windows;
    windows.reserve(bucket_count - 5);
    for (std::size_t i = 0; i + 5 < bucket_count; ++i) {
        windows.push_back({i + 1, i, i + 1, i + 4, i + 5});
    }
    return windows;
}

std::vector<WindowSpec> make_windows(std::span<const MonthBucket> buckets) { return make_windows(buckets.size()); }

WindowMode parse_window_mode(std::string_view name) {
    const std::string n = lower(name);
    if (n == "populated") return WindowMode::Populated;
    if (n == "calendar") return WindowMode::Calendar;
    throw ConfigError("unknown window mode '" + std::string(name) + "' (expected populated|calendar)");
}

PoptRange parse_popt_range(std::string_view name) {
    const std::string n = lower(name);
    if (n == "cutoff") return PoptRange::Cutoff;
    if (n == "full") return PoptRange::Full;
    throw ConfigError("unknown Popt range '" + std::string(name) + "' (expected cutoff|full)");
}

Learner Learner::parse(std::string_view name) {
    const std::string n = lower(trim(name));
    if (n == "churn") return of(Kind::Churn);
    if (n == "ealr") return of(Kind::Ealr);
    if (n == "knn" || n == "ibk") return of(Kind::Knn);
    if (n == "tree" || n == "j48") return of(Kind::Tree);
    if (n == "forest" || n == "rf" || n == "randomforest") return of(Kind::Forest);
    if (n == "oneway") return of(Kind::OneWay);
    if (auto m = parse_metric(n)) {
        if (!is_rankable(*m)) {
            throw RejectedMetricError("metric " + std::string(metric_name(*m)) + " cannot be used as a ranker");
        }
        return of_metric(*m);
    }
    throw ConfigError("unknown learner '" + std::string(trim(name)) + "'");
}

std::string Learner::name() const {
    switch (kind) {
        case Kind::Metric: return std::string(metric_name(metric));
        case Kind::Churn: return "CHURN";
        case Kind::Ealr: return "EALR";
        case Kind::Knn: return "KNN";
        case Kind::Tree: return "TREE";
        case Kind::Forest: return "FOREST";
        case Kind::OneWay: return "ONEWAY";
    }
    return "?";
}

bool Learner::supervised() const noexcept {
    return kind != Kind::Metric && kind != Kind::Churn;
}

std::vector<Learner> unsupervised_learners() {
    std::vector<Learner> out;
    for (MetricId m : kRankableMetrics) out.push_back(Learner::of_metric(m));
    return out;
}

std::vector<Learner> supervised_baseline_learners() {
    return {Learner::of(Learner::Kind::Ealr), Learner::of(Learner::Kind::Knn), Learner::of(Learner::Kind::Tree),
            Learner::of(Learner::Kind::Forest)};
}

std::vector<Learner> all_learners() {
    auto out = unsupervised_learners();
    for (const auto& l : supervised_baseline_learners()) out.push_back(l);
    out.push_back(Learner::of(Learner::Kind::OneWay));
    return out;
}

std::vector<Learner> parse_learners(std::string_view list) {
    std::vector<Learner> out;
    const auto add = [&out](const Learner& l) {
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    };
    while (!list.empty()) {
        const auto comma = list.find(',');
        const std::string token = lower(trim(list.substr(0, comma)));
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
        if (token.empty()) continue;
        if (token == "all") {
            for (const auto& l : all_learners()) add(l);
        } else if (token == "unsupervised") {
            for (const auto& l : unsupervised_learners()) add(l);
        } else if (token == "supervised") {
            for (const auto& l : supervised_baseline_learners()) add(l);
        } else {
            add(Learner::parse(token));
        }
    }
    if (out.empty()) throw ConfigError("learner set is empty");
    return out;
}

std::vector<ExperimentResult> run_experiment(const Dataset& ds, std::span<const Learner> learners,
                                             const ExperimentConfig& config) {
    if (learners.empty()) throw ConfigError("learner set is empty");
    if (!(config.effort_fraction > 0.0 && config.effort_fraction <= 1.0)) {
        throw ConfigError("effort fraction must lie in (0, 1]");
    }
    const auto buckets =
        config.window_mode == WindowMode::Calendar ? group_by_calendar_month(ds) : group_by_month(ds);
    const auto windows = make_windows(buckets);

    std::vector<std::vector<ExperimentResult>> per_window(windows.size());
    const auto run_window = [&](std::size_t w) {
        const WindowSpec& spec = windows[w];
        const auto train = bucket_span(ds, buckets, spec.train_first, spec.train_last);
        const auto test = bucket_span(ds, buckets, spec.test_first, spec.test_last);
        auto& out = per_window[w];
        out.reserve(learners.size());
        for (const Learner& learner : learners) {
            out.push_back(run_learner(learner, train, test, config, spec.ordinal));
            out.back().project = ds.project();
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(windows.size())));
    if (threads == 1) {
        for (std::size_t w = 0; w < windows.size(); ++w) run_window(w);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t w = next++; w < windows.size(); w = next++) {
                        try {
                            run_window(w);
                        } catch (...) {
                            const std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<ExperimentResult> results;
    results.reserve(windows.size() * learners.size());
    for (auto& batch : per_window) {
        for (auto& r : batch) results.push_back(std::move(r));
    }
    return results;
}

}  // namespace jitdp

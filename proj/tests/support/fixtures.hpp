#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

#include "jitdp/dataset.hpp"
#include "jitdp/ranking.hpp"

namespace jitdp::testing {

inline Date day(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

// A change whose churn is split evenly-ish between LA and LD.
inline ChangeRecord change(double churn, bool defective, Date when = day(2005, 1, 1)) {
    ChangeRecord r;
    r.committed = when;
    r.metric(MetricId::LA) = churn - std::floor(churn / 2.0);
    r.metric(MetricId::LD) = std::floor(churn / 2.0);
    r.defective = defective;
    return r;
}

// Records with the given efforts and labels, all other metrics zero.
inline std::vector<ChangeRecord> changes(const std::vector<double>& efforts, const std::vector<int>& labels) {
    std::vector<ChangeRecord> out;
    for (std::size_t i = 0; i < efforts.size(); ++i) out.push_back(change(efforts[i], labels[i] != 0));
    return out;
}

// Ranking that keeps the records' input order (constant scores).
inline Ranking as_given(const std::vector<ChangeRecord>& records) {
    std::vector<double> scores(records.size(), 1.0);
    return Ranking::by_score(records, scores);
}

inline Ranking in_order(const std::vector<ChangeRecord>& records, const std::vector<std::size_t>& order) {
    std::vector<double> scores(records.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        scores[order[pos]] = static_cast<double>(order.size() - pos);
    }
    return Ranking::by_score(records, scores);
}

// Random record with every metric populated; small integer ranges make ties common.
inline ChangeRecord random_record(std::mt19937_64& rng, Date when = day(2005, 1, 1)) {
    std::uniform_int_distribution<int> small(0, 6);
    std::uniform_int_distribution<int> churn(0, 40);
    std::bernoulli_distribution coin(0.35);
    ChangeRecord r;
    r.committed = when;
    for (MetricId m : kAllMetrics) r.metric(m) = small(rng);
    r.metric(MetricId::LA) = churn(rng);
    r.metric(MetricId::LD) = churn(rng) / 2;
    r.metric(MetricId::FIX) = coin(rng) ? 1.0 : 0.0;
    r.defective = coin(rng);
    return r;
}

inline std::vector<ChangeRecord> random_records(std::mt19937_64& rng, std::size_t n) {
    std::vector<ChangeRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_record(rng));
    return out;
}

}  // namespace jitdp::testing

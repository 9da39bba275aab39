#include "jitdp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jitdp/error.hpp"

namespace jitdp {

Ranking Ranking::by_score(std::span<const ChangeRecord> records, std::span<const double> scores,
                          TieBreak tie) {
    if (records.size() != scores.size()) throw Error("ranking: score count does not match record count");
    Ranking r;
    r.entries_.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (std::isnan(scores[i])) throw Error("ranking: NaN score at index " + std::to_string(i));
        r.entries_.push_back({i, scores[i], effort(records[i]), records[i].defective});
    }
    if (tie == TieBreak::InputOrder) {
        std::stable_sort(r.entries_.begin(), r.entries_.end(),
                         [](const RankedChange& a, const RankedChange& b) { return a.score > b.score; });
    } else {
        std::stable_sort(r.entries_.begin(), r.entries_.end(), [](const RankedChange& a, const RankedChange& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.effort < b.effort;
        });
    }
    return r;
}

Ranking Ranking::from_sorted(std::vector<RankedChange> entries) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (std::isnan(entries[i].score) || entries[i].score > entries[i - 1].score) {
            throw Error("ranking: scores must be nonincreasing");
        }
    }
    Ranking r;
    r.entries_ = std::move(entries);
    return r;
}

std::vector<std::size_t> Ranking::order() const {
    std::vector<std::size_t> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.index);
    return out;
}

double Ranking::total_effort() const noexcept {
    double total = 0.0;
    for (const auto& e : entries_) total += e.effort;
    return total;
}

std::size_t Ranking::total_defective() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const RankedChange& e) { return e.defective; }));
}

}  // namespace jitdp

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jitdp/dataset.hpp"

namespace jitdp {

struct RankedChange {
    std::size_t index = 0;  // position in the ranked slice
    double score = 0.0;
    double effort = 0.0;
    bool defective = false;

    friend bool operator==(const RankedChange&, const RankedChange&) = default;
};

enum class TieBreak {
    InputOrder,       // stable
    AscendingEffort,  // cheaper change first, then input order
};

// Changes of one slice in inspection order, highest score first.
class Ranking {
public:
    Ranking() = default;

    // `scores[i]` belongs to `records[i]`; NaN scores are rejected.
    static Ranking by_score(std::span<const ChangeRecord> records, std::span<const double> scores,
                            TieBreak tie = TieBreak::InputOrder);

    // Adopts entries already in inspection order. Throws if scores increase anywhere.
    static Ranking from_sorted(std::vector<RankedChange> entries);

    std::span<const RankedChange> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const RankedChange& operator[](std::size_t i) const { return entries_[i]; }

    std::vector<std::size_t> order() const;
    double total_effort() const noexcept;
    std::size_t total_defective() const noexcept;

    friend bool operator==(const Ranking&, const Ranking&) = default;

private:
    std::vector<RankedChange> entries_;
};

}  // namespace jitdp

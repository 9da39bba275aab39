#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jitdp/ranking.hpp"

namespace jitdp {

inline constexpr double kDefaultEffortFraction = 0.2;

// Prefix of a ranking that fits the inspection budget.
struct Cutoff {
    std::size_t inspected = 0;
    bool degenerate = false;  // total effort is zero
};

// Walks the ranking while cumulative effort stays within fraction * total effort.
// The first change that would overrun the budget ends the walk and is not inspected.
Cutoff effort_cutoff(const Ranking& r, double fraction);

struct Confusion {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    bool degenerate = false;  // zero effort or no defective change in the slice
};

Confusion confusion_scores(const Ranking& r, double fraction);

struct LiftPoint {
    double x = 0.0;  // cumulative effort fraction
    double y = 0.0;  // cumulative defect fraction
};

// Effort-based cumulative lift chart through (0,0) and one point per change.
class LiftCurve {
public:
    // Follows the order of `ordered` as given; scores are ignored.
    static LiftCurve from_order(std::span<const RankedChange> ordered);
    static LiftCurve from_ranking(const Ranking& r);
    // Actual defect density descending (zero-effort defective changes first).
    static LiftCurve optimal(const Ranking& r);
    // Actual defect density ascending.
    static LiftCurve worst(const Ranking& r);

    std::span<const LiftPoint> points() const noexcept { return points_; }

    // Trapezoidal area under the curve on [0, cutoff].
    double area(double cutoff) const noexcept;

private:
    std::vector<LiftPoint> points_;
};

// Upper end of the x-range over which lift-chart areas are integrated.
enum class PoptRange {
    Cutoff,  // [0, effort fraction]
    Full,    // [0, 1]
};

struct PoptResult {
    double value = 0.5;
    bool degenerate = false;  // optimal and worst areas coincide
};

// 1 - (S(optimal) - S(m)) / (S(optimal) - S(worst)), clipped to [0,1]. Areas run up
// to `fraction` unless `range` is Full.
PoptResult popt(const Ranking& r, double fraction, PoptRange range = PoptRange::Cutoff);

struct EvalScores {
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    double popt = 0.0;
    double effort_fraction = kDefaultEffortFraction;
    bool degenerate = false;

    friend bool operator==(const EvalScores&, const EvalScores&) = default;
};

EvalScores evaluate(const Ranking& r, double fraction = kDefaultEffortFraction,
                    PoptRange range = PoptRange::Cutoff);

}  // namespace jitdp

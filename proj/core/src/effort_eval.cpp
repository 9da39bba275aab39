#include "jitdp/effort_eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "jitdp/error.hpp"

namespace jitdp {

namespace {

void check_fraction(double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw Error("effort fraction must lie in (0, 1], got " + std::to_string(fraction));
    }
}

// Actual defect density; zero-effort defective changes are infinitely dense.
double density(const RankedChange& e) {
    if (e.effort > 0.0) return e.defective ? 1.0 / e.effort : 0.0;
    return e.defective ? std::numeric_limits<double>::infinity() : 0.0;
}

LiftCurve curve_sorted_by_density(const Ranking& r, bool descending) {
    std::vector<RankedChange> items(r.entries().begin(), r.entries().end());
    std::stable_sort(items.begin(), items.end(), [descending](const RankedChange& a, const RankedChange& b) {
        return descending ? density(a) > density(b) : density(a) < density(b);
    });
    return LiftCurve::from_order(items);
}

}  // namespace

Cutoff effort_cutoff(const Ranking& r, double fraction) {
    check_fraction(fraction);
    const double total = r.total_effort();
    if (total <= 0.0) return {0, true};
    // The relative slack absorbs rounding in fraction * total, nothing more.
    const double budget = fraction * total * (1.0 + 1e-12);
    double spent = 0.0;
    std::size_t inspected = 0;
    for (const auto& e : r.entries()) {
        spent += e.effort;
        if (spent > budget) break;
        ++inspected;
    }
    return {inspected, false};
}

Confusion confusion_scores(const Ranking& r, double fraction) {
    const Cutoff cut = effort_cutoff(r, fraction);
    Confusion c;
    const std::size_t total_defective = r.total_defective();
    for (std::size_t i = 0; i < cut.inspected; ++i) {
        if (r[i].defective) ++c.true_positives;
    }
    c.false_positives = cut.inspected - c.true_positives;
    c.false_negatives = total_defective - c.true_positives;
    if (total_defective > 0) {
        c.recall = static_cast<double>(c.true_positives) / static_cast<double>(total_defective);
    }
    if (cut.inspected > 0) {
        c.precision = static_cast<double>(c.true_positives) / static_cast<double>(cut.inspected);
    }
    if (c.recall > 0.0 && c.precision > 0.0) {
        c.f1 = 2.0 * c.precision * c.recall / (c.precision + c.recall);
    }
    c.degenerate = cut.degenerate || total_defective == 0;
    return c;
}

LiftCurve LiftCurve::from_order(std::span<const RankedChange> ordered) {
    double total_effort = 0.0;
    double total_defects = 0.0;
    for (const auto& e : ordered) {
        total_effort += e.effort;
        total_defects += e.defective ? 1.0 : 0.0;
    }
    LiftCurve c;
    c.points_.reserve(ordered.size() + 1);
    c.points_.push_back({0.0, 0.0});
    double effort_sum = 0.0;
    double defect_sum = 0.0;
    for (const auto& e : ordered) {
        effort_sum += e.effort;
        defect_sum += e.defective ? 1.0 : 0.0;
        c.points_.push_back({total_effort > 0.0 ? effort_sum / total_effort : 0.0,
                             total_defects > 0.0 ? defect_sum / total_defects : 0.0});
    }
    return c;
}

LiftCurve LiftCurve::from_ranking(const Ranking& r) { return from_order(r.entries()); }

LiftCurve LiftCurve::optimal(const Ranking& r) { return curve_sorted_by_density(r, true); }

LiftCurve LiftCurve::worst(const Ranking& r) { return curve_sorted_by_density(r, false); }

double LiftCurve::area(double cutoff) const noexcept {
    double total = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const LiftPoint& a = points_[i - 1];
        const LiftPoint& b = points_[i];
        if (a.x >= cutoff) break;
        if (b.x <= cutoff) {
            total += (b.x - a.x) * (a.y + b.y) / 2.0;
        } else {
            const double y_cut = a.y + (b.y - a.y) * (cutoff - a.x) / (b.x - a.x);
            total += (cutoff - a.x) * (a.y + y_cut) / 2.0;
            break;
        }
    }
    return total;
}

PoptResult popt(const Ranking& r, double fraction, PoptRange range) {
    check_fraction(fraction);
    if (range == PoptRange::Full) fraction = 1.0;
    if (r.total_effort() <= 0.0 || r.total_defective() == 0) return {0.5, true};
    const double s_optimal = LiftCurve::optimal(r).area(fraction);
    const double s_worst = LiftCurve::worst(r).area(fraction);
    const double s_model = LiftCurve::from_ranking(r).area(fraction);
    const double spread = s_optimal - s_worst;
    if (spread <= 1e-12) return {0.5, true};
    const double value = 1.0 - (s_optimal - s_model) / spread;
    return {std::clamp(value, 0.0, 1.0), false};
}

EvalScores evaluate(const Ranking& r, double fraction, PoptRange range) {
    const Confusion c = confusion_scores(r, fraction);
    const PoptResult p = popt(r, fraction, range);
    EvalScores s;
    s.recall = c.recall;
    s.precision = c.precision;
    s.f1 = c.f1;
    s.popt = p.value;
    s.effort_fraction = fraction;
    s.degenerate = c.degenerate || p.degenerate;
    return s;
}

}  // namespace jitdp

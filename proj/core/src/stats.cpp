#include "jitdp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jitdp/error.hpp"

namespace jitdp {

namespace {

// Twice the average rank of each value (ties share), so ranks stay integral.
std::vector<std::uint64_t> doubled_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::uint64_t> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j hold 1-based ranks i+1..j+1; their average doubled is i+j+2
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = i + j + 2;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

ZeroMethod parse_zero_method(std::string_view name) {
    if (name == "wilcox") return ZeroMethod::Wilcox;
    if (name == "pratt") return ZeroMethod::Pratt;
    throw ConfigError("unknown zero method '" + std::string(name) + "' (expected wilcox|pratt)");
}

Sidedness parse_sidedness(std::string_view name) {
    if (name == "two-sided") return Sidedness::TwoSided;
    if (name == "directional") return Sidedness::Directional;
    throw ConfigError("unknown sidedness '" + std::string(name) + "' (expected two-sided|directional)");
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, ZeroMethod zeros,
                                    Alternative alternative) {
    if (a.size() != b.size()) throw Error("wilcoxon: samples must be paired (equal length)");
    if (a.empty()) throw Error("wilcoxon: empty samples");

    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];

    std::vector<double> magnitude;
    std::vector<bool> positive;
    std::vector<std::uint64_t> ranks;
    if (zeros == ZeroMethod::Wilcox) {
        for (double d : diff) {
            if (d != 0.0) {
                magnitude.push_back(std::abs(d));
                positive.push_back(d > 0.0);
            }
        }
        ranks = doubled_ranks(magnitude);
    } else {
        for (double d : diff) magnitude.push_back(std::abs(d));
        const auto all = doubled_ranks(magnitude);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (diff[i] != 0.0) {
                ranks.push_back(all[i]);
                positive.push_back(diff[i] > 0.0);
            }
        }
    }

    WilcoxonResult res;
    res.effective_n = ranks.size();
    if (ranks.empty()) {
        res.degenerate = true;
        return res;
    }

    std::uint64_t w2 = 0;  // doubled W+
    std::uint64_t total2 = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        total2 += ranks[i];
        if (positive[i]) w2 += ranks[i];
    }
    res.w_plus = static_cast<double>(w2) / 2.0;

    if (ranks.size() <= kWilcoxonExactLimit) {
        // Null distribution of doubled W+: every sign pattern equally likely.
        std::vector<double> count(total2 + 1, 0.0);
        count[0] = 1.0;
        std::uint64_t reach = 0;
        for (std::uint64_t r : ranks) {
            for (std::uint64_t s = reach + 1; s-- > 0;) count[s + r] += count[s];
            reach += r;
        }
        const double patterns = std::ldexp(1.0, static_cast<int>(ranks.size()));
        double lower = 0.0, upper = 0.0;
        for (std::uint64_t s = 0; s <= total2; ++s) {
            if (s <= w2) lower += count[s];
            if (s >= w2) upper += count[s];
        }
        res.exact = true;
        switch (alternative) {
            case Alternative::TwoSided: res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / patterns); break;
            case Alternative::Greater: res.p_value = upper / patterns; break;
            case Alternative::Less: res.p_value = lower / patterns; break;
        }
        return res;
    }

    double sum_sq = 0.0;
    for (std::uint64_t r : ranks) sum_sq += (static_cast<double>(r) / 2.0) * (static_cast<double>(r) / 2.0);
    const double mean = static_cast<double>(total2) / 4.0;
    const double sd = std::sqrt(sum_sq / 4.0);
    if (alternative == Alternative::TwoSided) {
        const double z = std::max(0.0, std::abs(res.w_plus - mean) - 0.5) / sd;
        res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    } else {
        const double shift = alternative == Alternative::Greater ? res.w_plus - mean : mean - res.w_plus;
        res.p_value = 0.5 * std::erfc((shift - 0.5) / sd / std::sqrt(2.0));
    }
    return res;
}

std::vector<double> bh_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error("bh_adjust: p-values must lie in [0, 1]");
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double p = p_values[order[k]];
        // m / (k + 1) >= 1; the max keeps rounding from pushing the product below p.
        const double candidate = std::max(p, p * static_cast<double>(m) / static_cast<double>(k + 1));
        running = std::min(running, candidate);
        adjusted[order[k]] = running;
    }
    return adjusted;
}

std::string_view magnitude_name(Magnitude m) noexcept {
    switch (m) {
        case Magnitude::Negligible: return "negligible";
        case Magnitude::Small: return "small";
        case Magnitude::Medium: return "medium";
        case Magnitude::Large: return "large";
    }
    return "?";
}

Magnitude magnitude_of(double delta) noexcept {
    const double d = std::abs(delta);
    if (d < 0.147) return Magnitude::Negligible;
    if (d < 0.33) return Magnitude::Small;
    if (d < 0.474) return Magnitude::Medium;
    return Magnitude::Large;
}

CliffsDelta cliffs_delta(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw Error("cliffs_delta: samples must be nonempty");
    std::vector<double> sorted(b.begin(), b.end());
    std::sort(sorted.begin(), sorted.end());
    long long dominance = 0;
    for (double x : a) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        dominance += below - above;
    }
    CliffsDelta c;
    c.delta = static_cast<double>(dominance) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    c.magnitude = magnitude_of(c.delta);
    return c;
}

std::string_view color_name(Color c) noexcept {
    switch (c) {
        case Color::Better: return "BETTER";
        case Color::Tie: return "TIE";
        case Color::Worse: return "WORSE";
    }
    return "?";
}

Color decide(double adjusted_p, double delta) noexcept {
    if (!(adjusted_p < kSignificance) || magnitude_of(delta) == Magnitude::Negligible) return Color::Tie;
    return delta > 0.0 ? Color::Better : Color::Worse;
}

std::vector<ComparisonVerdict> compare_family(std::string_view baseline, std::string_view measure,
                                              std::span<const PairedSample> family, const TestOptions& options) {
    std::vector<ComparisonVerdict> out;
    std::vector<double> raw;
    out.reserve(family.size());
    for (const PairedSample& s : family) {
        if (s.scores.size() != s.baseline_scores.size()) throw Error("compare_family: unpaired sample for " + s.learner);
        ComparisonVerdict v;
        v.learner = s.learner;
        v.baseline = std::string(baseline);
        v.measure = std::string(measure);
        v.pairs = s.scores.size();
        if (v.pairs > 0) {
            const CliffsDelta c = cliffs_delta(s.scores, s.baseline_scores);
            v.delta = c.delta;
            v.magnitude = c.magnitude;
            Alternative alt = Alternative::TwoSided;
            if (options.sidedness == Sidedness::Directional && c.delta != 0.0) {
                alt = c.delta > 0.0 ? Alternative::Greater : Alternative::Less;
            }
            v.p_value = wilcoxon_signed_rank(s.scores, s.baseline_scores, options.zeros, alt).p_value;
        }
        raw.push_back(v.p_value);
        out.push_back(std::move(v));
    }
    const auto adjusted = bh_adjust(raw);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].p_adjusted = adjusted[i];
        out[i].color = decide(adjusted[i], out[i].delta);
    }
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace jitdp

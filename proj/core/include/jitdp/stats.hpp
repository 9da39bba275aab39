#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jitdp {

enum class ZeroMethod {
    Wilcox,  // drop zero differences before ranking
    Pratt,   // rank zeros, then drop them from the statistic
};

ZeroMethod parse_zero_method(std::string_view name);

enum class Alternative {
    TwoSided,
    Greater,  // a tends to exceed b
    Less,
};

struct WilcoxonResult {
    double p_value = 1.0;
    double w_plus = 0.0;          // sum of ranks of positive differences
    std::size_t effective_n = 0;  // nonzero differences
    bool exact = false;
    bool degenerate = false;      // every difference was zero
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

// Signed-rank test on paired samples. Exact null distribution up to
// kWilcoxonExactLimit nonzero differences, normal approximation with continuity
// correction beyond. Tied |differences| share average ranks.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    ZeroMethod zeros = ZeroMethod::Wilcox,
                                    Alternative alternative = Alternative::TwoSided);

// Benjamini-Hochberg step-up adjustment, returned in input order.
std::vector<double> bh_adjust(std::span<const double> p_values);

enum class Magnitude { Negligible, Small, Medium, Large };

std::string_view magnitude_name(Magnitude m) noexcept;
Magnitude magnitude_of(double delta) noexcept;

struct CliffsDelta {
    double delta = 0.0;
    Magnitude magnitude = Magnitude::Negligible;
};

CliffsDelta cliffs_delta(std::span<const double> a, std::span<const double> b);

enum class Color { Better, Tie, Worse };

std::string_view color_name(Color c) noexcept;

inline constexpr double kSignificance = 0.05;

// Better when the adjusted p is below 0.05, the effect is not negligible and the
// delta favours A. Worse symmetrically. Tie otherwise.
Color decide(double adjusted_p, double delta) noexcept;

struct ComparisonVerdict {
    std::string learner;
    std::string baseline;
    std::string measure;
    std::size_t pairs = 0;
    double p_value = 1.0;
    double p_adjusted = 1.0;
    double delta = 0.0;
    Magnitude magnitude = Magnitude::Negligible;
    Color color = Color::Tie;
};

// One paired sample per contender, aligned with the baseline sample.
struct PairedSample {
    std::string learner;
    std::vector<double> scores;
    std::vector<double> baseline_scores;
};

enum class Sidedness {
    TwoSided,
    Directional,  // one-sided, in the direction the delta points
};

Sidedness parse_sidedness(std::string_view name);

struct TestOptions {
    ZeroMethod zeros = ZeroMethod::Wilcox;
    Sidedness sidedness = Sidedness::TwoSided;
};

// Compares every contender against the baseline; BH runs over the whole family.
std::vector<ComparisonVerdict> compare_family(std::string_view baseline, std::string_view measure,
                                              std::span<const PairedSample> family,
                                              const TestOptions& options = {});

// Type-7 (linear interpolation) sample quantile. Empty input yields NaN.
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

}  // namespace jitdp

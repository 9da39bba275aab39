#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jitdp/effort_eval.hpp"
#include "jitdp/stats.hpp"
#include "jitdp/timewise.hpp"

namespace jitdp {

enum class Measure { Recall, Precision, F1, Popt };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::Recall, Measure::Precision,
                                                        Measure::F1, Measure::Popt};

std::string_view measure_name(Measure m) noexcept;
double measure_value(const EvalScores& s, Measure m) noexcept;

// Baseline for verdicts: a learner name or "best-supervised" (the supervised
// baseline with the highest median, chosen per project and measure).
inline constexpr std::string_view kBestSupervised = "best-supervised";

// Which comparisons share one Benjamini-Hochberg adjustment.
enum class FamilyScope {
    Measure,  // every learner against the baseline within one (project, measure)
    Project,  // all measures of a project together
    None,     // raw p-values
};

FamilyScope parse_family_scope(std::string_view name);

struct VerdictConfig {
    TestOptions test{};
    FamilyScope scope = FamilyScope::Measure;
};

struct RunConfig {
    std::filesystem::path data_dir;
    std::vector<std::string> projects;  // empty: every *.csv in data_dir
    std::vector<Learner> learners;
    ExperimentConfig experiment{};
    std::string schema = "kamei";
    std::string baseline{kBestSupervised};
    VerdictConfig verdicts{};
    std::filesystem::path out_dir;
};

struct MedianRow {
    std::string project;
    std::string learner;
    Measure measure = Measure::Recall;
    double median = 0.0;  // NaN when every window was skipped
    std::size_t windows = 0;
    std::size_t skipped = 0;
};

struct QuartileRow {
    std::string project;
    std::string learner;
    Measure measure = Measure::Recall;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    std::size_t n = 0;
};

struct ProjectVerdict {
    std::string project;
    ComparisonVerdict verdict;
};

// Rows follow first appearance of (project, learner) in `results`.
std::vector<MedianRow> median_table(std::span<const ExperimentResult> results);
std::vector<QuartileRow> quartile_table(std::span<const ExperimentResult> results);

// Per (project, measure) family: every other learner against the baseline, paired by window.
std::vector<ProjectVerdict> verdict_table(std::span<const ExperimentResult> results,
                                          std::string_view baseline,
                                          const VerdictConfig& config = {});

// Supervised baseline (EALR/KNN/TREE/FOREST) with the highest median, if any ran.
std::optional<std::string> best_supervised(std::span<const ExperimentResult> results,
                                           std::string_view project, Measure m);

void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results);
void write_medians_csv(std::ostream& out, std::span<const MedianRow> rows);
void write_verdicts_csv(std::ostream& out, std::span<const ProjectVerdict> rows);
void write_quartiles_csv(std::ostream& out, std::span<const QuartileRow> rows);

std::vector<ExperimentResult> read_results_csv(std::istream& in);
std::vector<MedianRow> read_medians_csv(std::istream& in);

// Throws jitdp::Error unless every median equals the median of the matching
// non-skipped column of `results`.
void check_median_consistency(std::span<const ExperimentResult> results,
                              std::span<const MedianRow> medians);

// Finds <data_dir>/<project>.csv, ignoring case. Throws ConfigError naming the project.
std::filesystem::path resolve_project_file(const std::filesystem::path& data_dir,
                                           std::string_view project);

struct RunSummary {
    std::vector<std::filesystem::path> outputs;
    std::size_t projects = 0;
    std::size_t results = 0;
    std::size_t skipped = 0;
};

// Runs every project and writes results.csv, medians.csv, verdicts.csv and
// quartiles.csv into out_dir. Nothing is left behind on failure.
RunSummary run_command(const RunConfig& config);

struct KnownCorpus {
    std::string_view name;
    std::size_t changes;
    double defect_percent;  // whole percent
};

std::span<const KnownCorpus> known_corpora() noexcept;
std::optional<KnownCorpus> find_known_corpus(std::string_view project) noexcept;

struct ValidationReport {
    std::filesystem::path file;
    std::string project;
    bool loaded = false;
    std::string error;
    std::size_t rows = 0;
    double defect_ratio = 0.0;
    std::size_t month_buckets = 0;
    std::size_t windows = 0;
    std::optional<KnownCorpus> expected;
    bool matches_expected = false;
};

std::vector<ValidationReport> validate_directory(const std::filesystem::path& data_dir,
                                                 std::string_view schema = "kamei");
void print_validation(std::ostream& out, std::span<const ValidationReport> reports);

}  // namespace jitdp

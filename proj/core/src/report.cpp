#include "jitdp/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "csv_text.hpp"
#include "jitdp/csv.hpp"
#include "jitdp/error.hpp"

namespace jitdp {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string number(double v) { return std::isnan(v) ? "NA" : format_number(v); }

double parse_number(const std::string& text, std::size_t line_no) {
    if (text == "NA" || text.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw RowError(line_no, "unparsable number '" + text + "'");
    return v;
}

std::size_t parse_count(const std::string& text, std::size_t line_no) {
    const double v = parse_number(text, line_no);
    if (!(v >= 0.0) || v != std::floor(v)) throw RowError(line_no, "expected a count, found '" + text + "'");
    return static_cast<std::size_t>(v);
}

std::optional<Measure> parse_measure(std::string_view name) {
    for (Measure m : kAllMeasures) {
        if (measure_name(m) == name) return m;
    }
    return std::nullopt;
}

// (project, learner) pairs in first-appearance order.
std::vector<std::pair<std::string, std::string>> groups(std::span<const ExperimentResult> results) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : results) {
        std::pair<std::string, std::string> key{r.project, r.learner};
        if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
    }
    return out;
}

std::vector<std::string> projects_of(std::span<const ExperimentResult> results) {
    std::vector<std::string> out;
    for (const auto& r : results) {
        if (std::find(out.begin(), out.end(), r.project) == out.end()) out.push_back(r.project);
    }
    return out;
}

std::vector<double> column(std::span<const ExperimentResult> results, std::string_view project,
                           std::string_view learner, Measure m) {
    std::vector<double> out;
    for (const auto& r : results) {
        if (r.project == project && r.learner == learner && !r.skipped) out.push_back(measure_value(r.scores, m));
    }
    return out;
}

std::map<std::size_t, double> by_window(std::span<const ExperimentResult> results, std::string_view project,
                                        std::string_view learner, Measure m) {
    std::map<std::size_t, double> out;
    for (const auto& r : results) {
        if (r.project == project && r.learner == learner && !r.skipped) out[r.window] = measure_value(r.scores, m);
    }
    return out;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, std::string_view expected_header) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw Error("empty CSV table");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header) throw Error("unexpected CSV header '" + line + "'");
    const std::size_t width = detail::split_csv_line(line, line_no).size();
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line, line_no);
        if (fields.size() != width) throw RowError(line_no, "wrong field count");
        fields.push_back(std::to_string(line_no));
        rows.push_back(std::move(fields));
    }
    return rows;
}

constexpr std::string_view kResultsHeader = "project,learner,window,recall,precision,f1,popt,skipped,reason";
constexpr std::string_view kMediansHeader = "project,learner,measure,median,windows,skipped";
constexpr std::string_view kVerdictsHeader = "project,measure,learner,baseline,p,p_bh,delta,band,color";
constexpr std::string_view kQuartilesHeader = "project,learner,measure,min,q1,median,q3,max,n";

constexpr std::array<KnownCorpus, 7> kKnownCorpora = {{
    {"bugzilla", 4620, 36},
    {"platform", 64250, 14},
    {"mozilla", 98275, 5},
    {"jdt", 35386, 14},
    {"columba", 4455, 31},
    {"postgres", 20431, 25},
    {"postgresql", 20431, 25},
}};

std::vector<std::filesystem::path> csv_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

std::string_view measure_name(Measure m) noexcept {
    switch (m) {
        case Measure::Recall: return "recall";
        case Measure::Precision: return "precision";
        case Measure::F1: return "f1";
        case Measure::Popt: return "popt";
    }
    return "?";
}

double measure_value(const EvalScores& s, Measure m) noexcept {
    switch (m) {
        case Measure::Recall: return s.recall;
        case Measure::Precision: return s.precision;
        case Measure::F1: return s.f1;
        case Measure::Popt: return s.popt;
    }
    return 0.0;
}

std::vector<MedianRow> median_table(std::span<const ExperimentResult> results) {
    std::vector<MedianRow> rows;
    for (const auto& [project, learner] : groups(results)) {
        std::size_t skipped = 0;
        for (const auto& r : results) {
            if (r.project == project && r.learner == learner && r.skipped) ++skipped;
        }
        for (Measure m : kAllMeasures) {
            auto values = column(results, project, learner, m);
            const std::size_t n = values.size();
            rows.push_back({project, learner, m, median(std::move(values)), n, skipped});
        }
    }
    return rows;
}

std::vector<QuartileRow> quartile_table(std::span<const ExperimentResult> results) {
    std::vector<QuartileRow> rows;
    for (const auto& [project, learner] : groups(results)) {
        for (Measure m : kAllMeasures) {
            const auto values = column(results, project, learner, m);
            QuartileRow row{project, learner, m};
            row.n = values.size();
            row.min = quantile(values, 0.0);
            row.q1 = quantile(values, 0.25);
            row.median = median(values);
            row.q3 = quantile(values, 0.75);
            row.max = quantile(values, 1.0);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::optional<std::string> best_supervised(std::span<const ExperimentResult> results, std::string_view project,
                                           Measure m) {
    std::optional<std::string> best;
    double best_median = -std::numeric_limits<double>::infinity();
    for (const Learner& l : supervised_baseline_learners()) {
        const std::string name = l.name();
        const double med = median(column(results, project, name, m));
        if (!std::isnan(med) && med > best_median) {
            best_median = med;
            best = name;
        }
    }
    return best;
}

FamilyScope parse_family_scope(std::string_view name) {
    if (name == "measure") return FamilyScope::Measure;
    if (name == "project") return FamilyScope::Project;
    if (name == "none") return FamilyScope::None;
    throw ConfigError("unknown BH family scope '" + std::string(name) + "' (expected measure|project|none)");
}

std::vector<ProjectVerdict> verdict_table(std::span<const ExperimentResult> results, std::string_view baseline,
                                          const VerdictConfig& config) {
    std::vector<ProjectVerdict> out;
    const auto all_groups = groups(results);
    for (const std::string& project : projects_of(results)) {
        std::vector<std::string> learners;
        for (const auto& [p, l] : all_groups) {
            if (p == project) learners.push_back(l);
        }
        for (Measure m : kAllMeasures) {
            std::string base;
            if (baseline == kBestSupervised) {
                const auto best = best_supervised(results, project, m);
                if (!best) continue;
                base = *best;
            } else {
                base = std::string(baseline);
                if (std::find(learners.begin(), learners.end(), base) == learners.end()) {
                    throw ConfigError("baseline learner '" + base + "' did not run on project " + project);
                }
            }
            const auto base_scores = by_window(results, project, base, m);
            std::vector<PairedSample> family;
            for (const auto& learner : learners) {
                if (learner == base) continue;
                PairedSample sample{learner, {}, {}};
                for (const auto& [window, value] : by_window(results, project, learner, m)) {
                    const auto it = base_scores.find(window);
                    if (it == base_scores.end()) continue;
                    sample.scores.push_back(value);
                    sample.baseline_scores.push_back(it->second);
                }
                family.push_back(std::move(sample));
            }
            for (auto& v : compare_family(base, measure_name(m), family, config.test)) {
                out.push_back({project, std::move(v)});
            }
        }
        if (config.scope == FamilyScope::Measure) continue;
        // Re-adjust this project's verdicts under the wider or empty family.
        const auto first = std::find_if(out.begin(), out.end(), [&](const ProjectVerdict& v) { return v.project == project; });
        std::vector<double> raw;
        for (auto it = first; it != out.end(); ++it) raw.push_back(it->verdict.p_value);
        const auto adjusted = config.scope == FamilyScope::Project ? bh_adjust(raw) : raw;
        for (std::size_t i = 0; i < adjusted.size(); ++i) {
            auto& v = (first + static_cast<std::ptrdiff_t>(i))->verdict;
            v.p_adjusted = adjusted[i];
            v.color = decide(v.p_adjusted, v.delta);
        }
    }
    return out;
}

void write_results_csv(std::ostream& out, std::span<const ExperimentResult> results) {
    out << kResultsHeader << '\n';
    for (const auto& r : results) {
        out << detail::quote_csv(r.project) << ',' << detail::quote_csv(r.learner) << ',' << r.window << ',';
        if (r.skipped) {
            out << "NA,NA,NA,NA,1,";
        } else {
            out << number(r.scores.recall) << ',' << number(r.scores.precision) << ',' << number(r.scores.f1) << ','
                << number(r.scores.popt) << ",0,";
        }
        out << detail::quote_csv(r.reason) << '\n';
    }
}

void write_medians_csv(std::ostream& out, std::span<const MedianRow> rows) {
    out << kMediansHeader << '\n';
    for (const auto& r : rows) {
        out << detail::quote_csv(r.project) << ',' << detail::quote_csv(r.learner) << ',' << measure_name(r.measure)
            << ',' << number(r.median) << ',' << r.windows << ',' << r.skipped << '\n';
    }
}

void write_verdicts_csv(std::ostream& out, std::span<const ProjectVerdict> rows) {
    out << kVerdictsHeader << '\n';
    for (const auto& [project, v] : rows) {
        out << detail::quote_csv(project) << ',' << v.measure << ',' << detail::quote_csv(v.learner) << ','
            << detail::quote_csv(v.baseline) << ',' << number(v.p_value) << ',' << number(v.p_adjusted) << ','
            << number(v.delta) << ',' << magnitude_name(v.magnitude) << ',' << color_name(v.color) << '\n';
    }
}

void write_quartiles_csv(std::ostream& out, std::span<const QuartileRow> rows) {
    out << kQuartilesHeader << '\n';
    for (const auto& r : rows) {
        out << detail::quote_csv(r.project) << ',' << detail::quote_csv(r.learner) << ',' << measure_name(r.measure)
            << ',' << number(r.min) << ',' << number(r.q1) << ',' << number(r.median) << ',' << number(r.q3) << ','
            << number(r.max) << ',' << r.n << '\n';
    }
}

std::vector<ExperimentResult> read_results_csv(std::istream& in) {
    std::vector<ExperimentResult> out;
    for (auto& f : read_rows(in, kResultsHeader)) {
        const std::size_t line_no = std::stoul(f.back());
        ExperimentResult r;
        r.project = f[0];
        r.learner = f[1];
        r.window = parse_count(f[2], line_no);
        r.skipped = f[7] == "1";
        if (!r.skipped) {
            r.scores.recall = parse_number(f[3], line_no);
            r.scores.precision = parse_number(f[4], line_no);
            r.scores.f1 = parse_number(f[5], line_no);
            r.scores.popt = parse_number(f[6], line_no);
        }
        r.reason = f[8];
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<MedianRow> read_medians_csv(std::istream& in) {
    std::vector<MedianRow> out;
    for (auto& f : read_rows(in, kMediansHeader)) {
        const std::size_t line_no = std::stoul(f.back());
        const auto m = parse_measure(f[2]);
        if (!m) throw RowError(line_no, "unknown measure '" + f[2] + "'");
        out.push_back({f[0], f[1], *m, parse_number(f[3], line_no), parse_count(f[4], line_no),
                       parse_count(f[5], line_no)});
    }
    return out;
}

void check_median_consistency(std::span<const ExperimentResult> results, std::span<const MedianRow> medians) {
    for (const auto& row : medians) {
        const double expected = median(column(results, row.project, row.learner, row.measure));
        const bool both_nan = std::isnan(expected) && std::isnan(row.median);
        if (!both_nan && expected != row.median) {
            throw Error("median table disagrees with per-window results for " + row.project + "/" + row.learner +
                        "/" + std::string(measure_name(row.measure)));
        }
    }
}

std::filesystem::path resolve_project_file(const std::filesystem::path& data_dir, std::string_view project) {
    const std::string wanted = lower(project);
    if (std::filesystem::is_directory(data_dir)) {
        for (const auto& file : csv_files(data_dir)) {
            if (lower(file.stem().string()) == wanted) return file;
        }
    }
    throw ConfigError("dataset for project '" + std::string(project) + "' not found in " + data_dir.string());
}

RunSummary run_command(const RunConfig& config) {
    if (config.learners.empty()) throw ConfigError("learner set is empty");
    if (!(config.experiment.effort_fraction > 0.0 && config.experiment.effort_fraction <= 1.0)) {
        throw ConfigError("effort fraction must lie in (0, 1]");
    }
    if (!std::filesystem::is_directory(config.data_dir)) {
        throw ConfigError("data directory " + config.data_dir.string() + " does not exist");
    }
    if (config.out_dir.empty()) throw ConfigError("no output directory given");
    const SchemaProfile profile = SchemaProfile::resolve(config.schema);

    std::vector<std::filesystem::path> files;
    if (config.projects.empty()) {
        files = csv_files(config.data_dir);
        if (files.empty()) throw ConfigError("no CSV datasets in " + config.data_dir.string());
    } else {
        for (const auto& p : config.projects) files.push_back(resolve_project_file(config.data_dir, p));
    }

    std::vector<ExperimentResult> results;
    for (const auto& file : files) {
        const Dataset ds = load_csv(file, profile);
        auto batch = run_experiment(ds, config.learners, config.experiment);
        std::move(batch.begin(), batch.end(), std::back_inserter(results));
    }

    const auto medians = median_table(results);
    std::ostringstream results_text, medians_text, verdicts_text, quartiles_text;
    write_results_csv(results_text, results);
    write_medians_csv(medians_text, medians);
    write_verdicts_csv(verdicts_text, verdict_table(results, config.baseline, config.verdicts));
    write_quartiles_csv(quartiles_text, quartile_table(results));

    {
        std::istringstream reread(results_text.str());
        check_median_consistency(read_results_csv(reread), medians);
    }

    std::filesystem::create_directories(config.out_dir);
    const std::vector<std::pair<std::string, std::string>> outputs = {
        {"results.csv", results_text.str()},
        {"medians.csv", medians_text.str()},
        {"verdicts.csv", verdicts_text.str()},
        {"quartiles.csv", quartiles_text.str()},
    };
    std::vector<std::filesystem::path> staged;
    try {
        for (const auto& [name, text] : outputs) {
            const auto path = config.out_dir / (name + ".partial");
            staged.push_back(path);
            std::ofstream out(path, std::ios::binary);
            out << text;
            out.close();
            if (!out) throw Error("failed writing " + path.string());
        }
    } catch (...) {
        std::error_code ignored;
        for (const auto& p : staged) std::filesystem::remove(p, ignored);
        throw;
    }

    RunSummary summary;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const auto final_path = config.out_dir / outputs[i].first;
        std::filesystem::rename(staged[i], final_path);
        summary.outputs.push_back(final_path);
    }
    summary.projects = files.size();
    summary.results = results.size();
    summary.skipped = static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const ExperimentResult& r) { return r.skipped; }));
    return summary;
}

std::span<const KnownCorpus> known_corpora() noexcept { return kKnownCorpora; }

std::optional<KnownCorpus> find_known_corpus(std::string_view project) noexcept {
    const std::string name = lower(project);
    for (const auto& c : kKnownCorpora) {
        if (c.name == name) return c;
    }
    return std::nullopt;
}

std::vector<ValidationReport> validate_directory(const std::filesystem::path& data_dir, std::string_view schema) {
    std::vector<ValidationReport> reports;
    if (!std::filesystem::is_directory(data_dir)) return reports;
    const SchemaProfile profile = SchemaProfile::resolve(schema);
    for (const auto& file : csv_files(data_dir)) {
        ValidationReport rep;
        rep.file = file;
        rep.project = file.stem().string();
        rep.expected = find_known_corpus(rep.project);
        try {
            const Dataset ds = load_csv(file, profile);
            rep.loaded = true;
            rep.rows = ds.size();
            rep.defect_ratio = ds.defect_ratio();
            rep.month_buckets = group_by_month(ds).size();
            rep.windows = rep.month_buckets >= 6 ? rep.month_buckets - 5 : 0;
            if (rep.expected) {
                rep.matches_expected = rep.rows == rep.expected->changes &&
                                       std::round(rep.defect_ratio * 100.0) == rep.expected->defect_percent;
            }
        } catch (const Error& e) {
            rep.error = e.what();
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

void print_validation(std::ostream& out, std::span<const ValidationReport> reports) {
    out << std::left << std::setw(16) << "project" << std::right << std::setw(9) << "rows" << std::setw(10)
        << "defect%" << std::setw(9) << "months" << std::setw(9) << "windows" << "  expected\n";
    for (const auto& r : reports) {
        out << std::left << std::setw(16) << r.project << std::right;
        if (!r.loaded) {
            out << "  ERROR " << r.error << '\n';
            continue;
        }
        std::ostringstream pct;
        pct << std::fixed << std::setprecision(1) << r.defect_ratio * 100.0;
        out << std::setw(9) << r.rows << std::setw(10) << pct.str() << std::setw(9) << r.month_buckets
            << std::setw(9) << r.windows << "  ";
        if (r.expected) {
            out << r.expected->changes << " rows, " << r.expected->defect_percent << "% -> "
                << (r.matches_expected ? "OK" : "MISMATCH");
        } else {
            out << "-";
        }
        out << '\n';
    }
    if (reports.empty()) out << "(no CSV files found)\n";
}

}  // namespace jitdp

// Command-line front end: run time-wise experiments, validate datasets, and
// generate a synthetic corpus.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "jitdp/csv.hpp"
#include "jitdp/error.hpp"
#include "jitdp/report.hpp"
#include "jitdp/synthetic.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Effort-aware just-in-time defect prediction experiments"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Time-wise cross-validation with median tables and verdicts");
    std::string data_dir, out_dir = "out", projects, learners = "all";
    std::string popt_range = "cutoff";
    std::string goal = "mean", preprocess = "kamei", window_mode = "populated", schema = "kamei";
    std::string baseline{jitdp::kBestSupervised}, classifier_order = "probability", zero_method = "wilcox",
                sidedness = "two-sided", bh_family = "measure";
    double effort_fraction = jitdp::kDefaultEffortFraction;
    std::uint64_t seed = 1;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::size_t knn_k = 8, trees = 100, max_depth = 32, min_leaf = 2;
    bool all_metrics = false;

    run->add_option("--data-dir", data_dir, "Directory holding <project>.csv files")->required();
    run->add_option("--projects", projects, "Comma-separated project names (default: every CSV)");
    run->add_option("--learners", learners,
                    "Comma-separated learners: metric names, churn, ealr, knn, tree, forest, oneway, "
                    "or the groups all|unsupervised|supervised")
        ->capture_default_str();
    run->add_option("--effort-fraction", effort_fraction, "Inspection budget as a fraction of total churn")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    run->add_option("--popt-range", popt_range,
                    "Lift-chart integration range for Popt: cutoff (up to the effort fraction) or full")
        ->capture_default_str();
    run->add_option("--goal", goal, "OneWay selection goal: mean|recall|precision|f1|popt")->capture_default_str();
    run->add_option("--preprocess", preprocess, "EALR feature recipe: kamei|raw")->capture_default_str();
    run->add_option("--window-mode", window_mode, "Month indexing: populated|calendar")->capture_default_str();
    run->add_option("--seed", seed, "Seed for the tree learners")->capture_default_str();
    run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    run->add_option("--schema", schema, "Column profile: kamei or a JSON profile path")->capture_default_str();
    run->add_option("--baseline", baseline, "Verdict baseline: a learner name or best-supervised")
        ->capture_default_str();
    run->add_option("--threads", threads, "Worker threads per project")->capture_default_str();
    run->add_option("--knn-k", knn_k, "Neighbours for KNN")->capture_default_str();
    run->add_option("--trees", trees, "Trees in FOREST")->capture_default_str();
    run->add_option("--max-depth", max_depth, "Depth limit for TREE and FOREST")->capture_default_str();
    run->add_option("--min-leaf", min_leaf, "Minimum leaf size for TREE")->capture_default_str();
    run->add_option("--classifier-order", classifier_order,
                    "Ordering of classifier output: probability|density")
        ->capture_default_str();
    run->add_option("--zero-method", zero_method, "Wilcoxon zero differences: wilcox|pratt")->capture_default_str();
    run->add_option("--sidedness", sidedness, "Wilcoxon alternative: two-sided|directional")->capture_default_str();
    run->add_option("--bh-family", bh_family, "Benjamini-Hochberg family: measure|project|none")->capture_default_str();
    run->add_flag("--oneway-all-metrics", all_metrics, "Let OneWay also pick LA or LD");

    // validate
    auto* validate = app.add_subcommand("validate", "Report row counts, defect rates and window counts");
    std::string validate_dir, validate_schema = "kamei";
    validate->add_option("--data-dir", validate_dir, "Directory holding <project>.csv files")->required();
    validate->add_option("--schema", validate_schema, "Column profile")->capture_default_str();

    // synth
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic corpus as CSV files");
    jitdp::SyntheticConfig synth_cfg;
    std::string synth_dir;
    synth->add_option("--out-dir", synth_dir, "Destination directory")->required();
    synth->add_option("--projects", synth_cfg.projects, "Project count")->capture_default_str();
    synth->add_option("--months", synth_cfg.months, "Months per project")->capture_default_str();
    synth->add_option("--per-month", synth_cfg.changes_per_month, "Changes per month")->capture_default_str();
    synth->add_option("--seed", synth_cfg.seed, "Generator seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            jitdp::RunConfig cfg;
            cfg.data_dir = data_dir;
            cfg.projects = split_list(projects);
            cfg.learners = jitdp::parse_learners(learners);
            cfg.experiment.effort_fraction = effort_fraction;
            cfg.experiment.popt_range = jitdp::parse_popt_range(popt_range);
            cfg.experiment.goal = jitdp::parse_goal(goal);
            cfg.experiment.preprocess = jitdp::parse_preprocess(preprocess);
            cfg.experiment.window_mode = jitdp::parse_window_mode(window_mode);
            cfg.experiment.oneway_all_metrics = all_metrics;
            cfg.experiment.threads = threads;
            cfg.experiment.classifier.seed = seed;
            cfg.experiment.classifier.k = knn_k;
            cfg.experiment.classifier.forest_trees = trees;
            cfg.experiment.classifier.tree.max_depth = max_depth;
            cfg.experiment.classifier.tree.min_leaf = min_leaf;
            if (classifier_order == "probability") {
                cfg.experiment.classifier.order = jitdp::ClassifierOrder::Probability;
            } else if (classifier_order == "density") {
                cfg.experiment.classifier.order = jitdp::ClassifierOrder::Density;
            } else {
                throw jitdp::ConfigError("unknown classifier order '" + classifier_order + "'");
            }
            cfg.verdicts.test.zeros = jitdp::parse_zero_method(zero_method);
            cfg.verdicts.test.sidedness = jitdp::parse_sidedness(sidedness);
            cfg.verdicts.scope = jitdp::parse_family_scope(bh_family);
            cfg.schema = schema;
            cfg.baseline = baseline;
            cfg.out_dir = out_dir;

            const auto summary = jitdp::run_command(cfg);
            std::cout << "projects: " << summary.projects << ", results: " << summary.results
                      << ", skipped: " << summary.skipped << '\n';
            for (const auto& p : summary.outputs) std::cout << "wrote " << p.string() << '\n';
        } else if (*validate) {
            jitdp::print_validation(std::cout, jitdp::validate_directory(validate_dir, validate_schema));
        } else if (*synth) {
            std::filesystem::create_directories(synth_dir);
            for (const auto& ds : jitdp::synthetic_corpus(synth_cfg)) {
                const auto path = std::filesystem::path(synth_dir) / (ds.project() + ".csv");
                jitdp::write_csv(path, ds);
                std::cout << "wrote " << path.string() << " (" << ds.size() << " changes)\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "jitdp: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}

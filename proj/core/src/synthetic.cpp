#include "jitdp/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>

namespace jitdp {

Dataset synthetic_project(const SyntheticConfig& config, std::size_t project_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(project_index)};
    std::mt19937_64 rng(seq);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<unsigned> day(1, 28);
    std::poisson_distribution<int> few(0.6), some(1.5), many(4.0), devs(5.0);
    std::lognormal_distribution<double> added(2.8, 1.6), deleted(1.8, 1.7), lines(6.0, 1.4), age(3.2, 1.5),
        experience(5.0, 1.8);
    std::bernoulli_distribution is_fix(0.3);

    // Projects differ in baseline risk so the corpus spans a range of defect ratios.
    const double offset = -4.0 + 0.25 * static_cast<double>(project_index % 5);

    std::vector<ChangeRecord> records;
    records.reserve(config.months * config.changes_per_month);
    for (std::size_t month = 0; month < config.months; ++month) {
        const int year = config.start_year + static_cast<int>(month / 12);
        const unsigned mon = static_cast<unsigned>(month % 12) + 1;
        for (std::size_t c = 0; c < config.changes_per_month; ++c) {
            ChangeRecord r;
            r.committed = Date{std::chrono::year{year} / std::chrono::month{mon} / std::chrono::day{day(rng)}};
            const double ns = 1 + few(rng);
            const double nd = ns + some(rng);
            const double nf = nd + many(rng);
            r.metric(MetricId::NS) = ns;
            r.metric(MetricId::ND) = nd;
            r.metric(MetricId::NF) = nf;
            r.metric(MetricId::ENTROPY) = nf > 1 ? unit(rng) * std::log2(nf) : 0.0;
            r.metric(MetricId::LA) = std::floor(added(rng) * std::sqrt(nf));
            r.metric(MetricId::LD) = unit(rng) < 0.25 ? 0.0 : std::floor(deleted(rng));
            r.metric(MetricId::LT) = std::floor(lines(rng) * (0.5 + 0.1 * nf));
            r.metric(MetricId::FIX) = is_fix(rng) ? 1.0 : 0.0;
            r.metric(MetricId::NDEV) = 1 + devs(rng);
            r.metric(MetricId::AGE) = std::round(age(rng) * 10.0) / 10.0;
            r.metric(MetricId::NUC) = 1 + many(rng);
            const double exp = std::floor(experience(rng));
            r.metric(MetricId::EXP) = exp;
            r.metric(MetricId::REXP) = std::round(exp * unit(rng) * 100.0) / 100.0;
            r.metric(MetricId::SEXP) = std::floor(exp * (0.2 + 0.8 * unit(rng)));

            const double logit = offset + 0.35 * std::log1p(effort(r)) + 0.5 * r.metric(MetricId::FIX) +
                                 0.2 * std::log1p(nf) + 0.15 * std::log1p(r.metric(MetricId::LT)) -
                                 0.12 * std::log1p(exp) - 0.1 * std::log1p(r.metric(MetricId::AGE));
            r.defective = unit(rng) < 1.0 / (1.0 + std::exp(-logit));
            records.push_back(r);
        }
    }
    return Dataset("synthetic" + std::to_string(project_index + 1), std::move(records));
}

std::vector<Dataset> synthetic_corpus(const SyntheticConfig& config) {
    std::vector<Dataset> out;
    out.reserve(config.projects);
    for (std::size_t p = 0; p < config.projects; ++p) out.push_back(synthetic_project(config, p));
    return out;
}

}  // namespace jitdp

#include "jitdp/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "jitdp/error.hpp"

namespace jitdp {

void validate_record(const ChangeRecord& r) {
    for (MetricId m : kAllMetrics) {
        const double v = r.metric(m);
        if (!std::isfinite(v)) {
            throw Error("metric " + std::string(metric_name(m)) + " is not finite");
        }
        if (v < 0.0) {
            throw Error("metric " + std::string(metric_name(m)) + " is negative");
        }
    }
    const double fix = r.metric(MetricId::FIX);
    if (fix != 0.0 && fix != 1.0) throw Error("metric FIX must be 0 or 1");
}

Dataset::Dataset(std::string project, std::vector<ChangeRecord> records)
    : project_(std::move(project)), records_(std::move(records)) {
    if (records_.empty()) throw EmptyDatasetError("dataset '" + project_ + "' has no records");
    for (const auto& r : records_) validate_record(r);
    std::stable_sort(records_.begin(), records_.end(),
                     [](const ChangeRecord& a, const ChangeRecord& b) { return a.committed < b.committed; });
}

double Dataset::defect_ratio() const noexcept {
    const auto defective = std::count_if(records_.begin(), records_.end(),
                                         [](const ChangeRecord& r) { return r.defective; });
    return static_cast<double>(defective) / static_cast<double>(records_.size());
}

YearMonth YearMonth::of(Date d) noexcept {
    const std::chrono::year_month_day ymd{d};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

YearMonth YearMonth::next() const noexcept {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

std::vector<MonthBucket> group_by_month(const Dataset& ds) {
    std::vector<MonthBucket> buckets;
    const auto records = ds.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const YearMonth key = YearMonth::of(records[i].committed);
        if (buckets.empty() || buckets.back().key != key) {
            buckets.push_back({key, i, 0});
        }
        ++buckets.back().count;
    }
    return buckets;
}

std::vector<MonthBucket> group_by_calendar_month(const Dataset& ds) {
    const auto populated = group_by_month(ds);
    std::vector<MonthBucket> buckets;
    for (const MonthBucket& b : populated) {
        while (!buckets.empty() && buckets.back().key.next() < b.key) {
            const MonthBucket& prev = buckets.back();
            buckets.push_back({prev.key.next(), prev.end(), 0});
        }
        buckets.push_back(b);
    }
    return buckets;
}

std::span<const ChangeRecord> bucket_span(const Dataset& ds, std::span<const MonthBucket> buckets,
                                          std::size_t from, std::size_t to) {
    if (from > to || to >= buckets.size()) throw Error("bucket range out of bounds");
    const std::size_t begin = buckets[from].first;
    const std::size_t end = buckets[to].end();
    return ds.records().subspan(begin, end - begin);
}

}  // namespace jitdp

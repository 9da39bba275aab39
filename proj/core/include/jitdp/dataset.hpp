#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jitdp/metrics.hpp"

namespace jitdp {

using Date = std::chrono::sys_days;

// One commit: its day, the fourteen metrics and whether it introduced a defect.
struct ChangeRecord {
    Date committed{};
    std::array<double, kMetricCount> metrics{};
    bool defective = false;

    double metric(MetricId m) const noexcept { return metrics[index_of(m)]; }
    double& metric(MetricId m) noexcept { return metrics[index_of(m)]; }

    friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

// Inspection cost of a change: lines added plus lines deleted.
inline double effort(const ChangeRecord& r) noexcept {
    return r.metric(MetricId::LA) + r.metric(MetricId::LD);
}

// Throws jitdp::Error unless every metric is finite and non-negative and FIX is 0 or 1.
void validate_record(const ChangeRecord& r);

// Immutable, time-sorted collection of changes for one project.
class Dataset {
public:
    // Stable-sorts by commit day and validates every record.
    // Throws EmptyDatasetError when `records` is empty.
    Dataset(std::string project, std::vector<ChangeRecord> records);

    const std::string& project() const noexcept { return project_; }
    std::span<const ChangeRecord> records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    double defect_ratio() const noexcept;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::string project_;
    std::vector<ChangeRecord> records_;
};

struct YearMonth {
    int year = 0;
    unsigned month = 0;  // 1..12

    static YearMonth of(Date d) noexcept;
    YearMonth next() const noexcept;

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

// A contiguous run of dataset records sharing a calendar month.
struct MonthBucket {
    YearMonth key;
    std::size_t first = 0;  // offset into Dataset::records()
    std::size_t count = 0;

    std::size_t end() const noexcept { return first + count; }
};

// Buckets for months that contain at least one change.
std::vector<MonthBucket> group_by_month(const Dataset& ds);

// One bucket per calendar month from the first to the last change, empty months included.
std::vector<MonthBucket> group_by_calendar_month(const Dataset& ds);

// Records of buckets [from, to] inclusive as a single contiguous slice.
std::span<const ChangeRecord> bucket_span(const Dataset& ds, std::span<const MonthBucket> buckets,
                                          std::size_t from, std::size_t to);

}  // namespace jitdp

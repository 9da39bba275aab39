#include "jitdp/metrics.hpp"

#include <algorithm>
#include <cctype>

namespace jitdp {

namespace {

constexpr std::array<std::string_view, kMetricCount> kNames = {
    "NS", "ND", "NF", "ENTROPY", "LA", "LD", "LT", "FIX", "NDEV", "AGE", "NUC", "EXP", "REXP", "SEXP",
};

bool iequals(std::string_view a, std::string_view b) noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
    });
}

}  // namespace

std::string_view metric_name(MetricId m) noexcept { return kNames[index_of(m)]; }

std::optional<MetricId> parse_metric(std::string_view name) noexcept {
    for (MetricId m : kAllMetrics) {
        if (iequals(name, metric_name(m))) return m;
    }
    return std::nullopt;
}

}  // namespace jitdp

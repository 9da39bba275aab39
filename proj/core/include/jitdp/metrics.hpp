#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace jitdp {

// The fourteen change metrics, in canonical column order.
enum class MetricId : std::size_t {
    NS, ND, NF, ENTROPY,
    LA, LD, LT,
    FIX,
    NDEV, AGE, NUC,
    EXP, REXP, SEXP,
};

inline constexpr std::size_t kMetricCount = 14;

inline constexpr std::array<MetricId, kMetricCount> kAllMetrics = {
    MetricId::NS,   MetricId::ND,  MetricId::NF,  MetricId::ENTROPY, MetricId::LA,
    MetricId::LD,   MetricId::LT,  MetricId::FIX, MetricId::NDEV,    MetricId::AGE,
    MetricId::NUC,  MetricId::EXP, MetricId::REXP, MetricId::SEXP,
};

// Everything except LA and LD, which make up the effort measure itself.
inline constexpr std::array<MetricId, 12> kRankableMetrics = {
    MetricId::NS,  MetricId::ND,   MetricId::NF,  MetricId::ENTROPY,
    MetricId::LT,  MetricId::FIX,  MetricId::NDEV, MetricId::AGE,
    MetricId::NUC, MetricId::EXP,  MetricId::REXP, MetricId::SEXP,
};

constexpr std::size_t index_of(MetricId m) noexcept { return static_cast<std::size_t>(m); }

constexpr bool is_rankable(MetricId m) noexcept {
    return m != MetricId::LA && m != MetricId::LD;
}

// Upper-case display name ("ENTROPY", "SEXP", ...).
std::string_view metric_name(MetricId m) noexcept;

// Case-insensitive lookup of a display name.
std::optional<MetricId> parse_metric(std::string_view name) noexcept;

}  // namespace jitdp

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jitdp/dataset.hpp"

namespace jitdp {

// Seeded generator of plausible change-metric projects for testing without the
// public corpora. Defect odds grow with change size, diffusion and fixes, and
// shrink with developer experience.
struct SyntheticConfig {
    std::size_t projects = 5;
    std::size_t months = 24;
    std::size_t changes_per_month = 200;
    std::uint64_t seed = 20170801;
    int start_year = 2003;
};

std::vector<Dataset> synthetic_corpus(const SyntheticConfig& config = {});

Dataset synthetic_project(const SyntheticConfig& config, std::size_t project_index);

}  // namespace jitdp

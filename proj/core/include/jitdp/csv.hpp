#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "jitdp/dataset.hpp"
#include "jitdp/metrics.hpp"

namespace jitdp {

// What a CSV column feeds into.
struct ColumnTarget {
    enum class Kind { Timestamp, Label, Metric };
    Kind kind = Kind::Metric;
    MetricId metric = MetricId::NS;

    friend bool operator==(const ColumnTarget&, const ColumnTarget&) = default;
};

// Maps lower-cased header names onto record fields. Unmapped columns are ignored.
class SchemaProfile {
public:
    SchemaProfile(std::string name, std::map<std::string, ColumnTarget> synonyms);

    // Canonical names plus the synonyms seen in the public change-metric corpora
    // ("entrophy", "contains_bug", "commitdate", ...).
    static SchemaProfile kamei();

    // {"name": "...", "columns": {"header": "TIMESTAMP" | "LABEL" | "<metric>"}}
    static SchemaProfile from_json_file(const std::filesystem::path& path);

    // "kamei" or a path to a JSON profile.
    static SchemaProfile resolve(std::string_view name_or_path);

    const std::string& name() const noexcept { return name_; }
    std::optional<ColumnTarget> lookup(std::string_view header) const;

private:
    std::string name_;
    std::map<std::string, ColumnTarget> synonyms_;
};

Dataset read_csv(std::istream& in, std::string project, const SchemaProfile& profile);

// Project name defaults to the file stem.
Dataset load_csv(const std::filesystem::path& path, const SchemaProfile& profile);

// Canonical form: commitdate,ns,...,sexp,bug with ISO dates and shortest round-trip numbers.
void write_csv(std::ostream& out, const Dataset& ds);
void write_csv(const std::filesystem::path& path, const Dataset& ds);

// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace jitdp

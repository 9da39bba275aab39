#include "jitdp/csv.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "csv_text.hpp"
#include "jitdp/error.hpp"
#include "json.hpp"

namespace jitdp {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_bool(std::string_view text, bool& out) {
    const std::string t = lower(trim(text));
    if (t == "true" || t == "t" || t == "yes") {
        out = true;
        return true;
    }
    if (t == "false" || t == "f" || t == "no") {
        out = false;
        return true;
    }
    double v = 0.0;
    if (parse_double(t, v) && (v == 0.0 || v == 1.0)) {
        out = v == 1.0;
        return true;
    }
    return false;
}

enum class DateFormat { EpochSeconds, YearFirst, MonthFirst };

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::optional<DateFormat> detect_date_format(std::string_view text) {
    text = trim(text);
    std::string_view date = text.substr(0, text.find_first_of(" T"));
    if (date.find_first_of("-/") == std::string_view::npos) {
        double v = 0.0;
        if (parse_double(text, v)) return DateFormat::EpochSeconds;
        return std::nullopt;
    }
    const auto sep = date.find_first_of("-/");
    const auto last = date.find_last_of("-/");
    if (sep == last) return std::nullopt;
    if (sep == 4) return DateFormat::YearFirst;
    if (date.size() - last - 1 == 4) return DateFormat::MonthFirst;
    return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text, DateFormat fmt) {
    text = trim(text);
    if (fmt == DateFormat::EpochSeconds) {
        double seconds = 0.0;
        if (!parse_double(text, seconds)) return std::nullopt;
        const auto days = static_cast<long long>(std::floor(seconds / 86400.0));
        return Date{std::chrono::days{days}};
    }
    std::string_view date = text.substr(0, text.find_first_of(" T"));
    std::array<std::string_view, 3> parts;
    std::size_t n = 0;
    while (n < 3) {
        const auto pos = date.find_first_of("-/");
        parts[n++] = date.substr(0, pos);
        if (pos == std::string_view::npos) break;
        date.remove_prefix(pos + 1);
    }
    if (n != 3 || !std::all_of(parts.begin(), parts.end(), all_digits)) return std::nullopt;
    std::array<int, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
        std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), v[i]);
    }
    const int y = fmt == DateFormat::YearFirst ? v[0] : v[2];
    const int m = fmt == DateFormat::YearFirst ? v[1] : v[0];
    const int d = fmt == DateFormat::YearFirst ? v[2] : v[1];
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

bool getline_clean(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

ColumnTarget target_from_name(std::string_view name) {
    const std::string t = lower(name);
    if (t == "timestamp") return {ColumnTarget::Kind::Timestamp};
    if (t == "label") return {ColumnTarget::Kind::Label};
    if (auto m = parse_metric(name)) return {ColumnTarget::Kind::Metric, *m};
    throw ConfigError("unknown column target '" + std::string(name) + "' in schema profile");
}

}  // namespace

SchemaProfile::SchemaProfile(std::string name, std::map<std::string, ColumnTarget> synonyms)
    : name_(std::move(name)) {
    for (auto& [key, target] : synonyms) synonyms_.emplace(lower(key), target);
}

SchemaProfile SchemaProfile::kamei() {
    std::map<std::string, ColumnTarget> columns;
    for (MetricId m : kAllMetrics) {
        columns[lower(metric_name(m))] = {ColumnTarget::Kind::Metric, m};
    }
    columns["entrophy"] = {ColumnTarget::Kind::Metric, MetricId::ENTROPY};
    columns["nm"] = {ColumnTarget::Kind::Metric, MetricId::ND};
    columns["pd"] = {ColumnTarget::Kind::Metric, MetricId::AGE};
    columns["npt"] = {ColumnTarget::Kind::Metric, MetricId::NUC};
    for (const char* ts : {"commitdate", "commit_date", "author_date", "date", "timestamp"}) {
        columns[ts] = {ColumnTarget::Kind::Timestamp};
    }
    for (const char* lbl : {"bug", "bugs", "contains_bug", "buggy", "defective", "label"}) {
        columns[lbl] = {ColumnTarget::Kind::Label};
    }
    return SchemaProfile("kamei", std::move(columns));
}

SchemaProfile SchemaProfile::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schema profile " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema profile " + path.string() + ": " + e.what());
    }
    if (!doc.contains("columns") || !doc["columns"].is_object()) {
        throw ConfigError("schema profile " + path.string() + " lacks a \"columns\" object");
    }
    std::map<std::string, ColumnTarget> columns;
    for (const auto& [header, target] : doc["columns"].items()) {
        columns[header] = target_from_name(target.get<std::string>());
    }
    return SchemaProfile(doc.value("name", path.stem().string()), std::move(columns));
}

SchemaProfile SchemaProfile::resolve(std::string_view name_or_path) {
    if (lower(name_or_path) == "kamei") return kamei();
    const std::filesystem::path path(name_or_path);
    if (std::filesystem::exists(path)) return from_json_file(path);
    throw ConfigError("unknown schema profile '" + std::string(name_or_path) + "'");
}

std::optional<ColumnTarget> SchemaProfile::lookup(std::string_view header) const {
    const auto it = synonyms_.find(lower(trim(header)));
    if (it == synonyms_.end()) return std::nullopt;
    return it->second;
}

Dataset read_csv(std::istream& in, std::string project, const SchemaProfile& profile) {
    std::string line;
    std::size_t line_no = 0;
    do {
        if (!getline_clean(in, line)) throw EmptyDatasetError("dataset '" + project + "' is empty");
        ++line_no;
    } while (trim(line).empty());
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    const auto header = detail::split_csv_line(line, line_no);
    std::optional<std::size_t> ts_col, label_col;
    std::array<std::optional<std::size_t>, kMetricCount> metric_col{};
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto target = profile.lookup(header[c]);
        if (!target) continue;
        switch (target->kind) {
            case ColumnTarget::Kind::Timestamp: ts_col = ts_col.value_or(c); break;
            case ColumnTarget::Kind::Label: label_col = label_col.value_or(c); break;
            case ColumnTarget::Kind::Metric:
                metric_col[index_of(target->metric)] = metric_col[index_of(target->metric)].value_or(c);
                break;
        }
    }
    const std::string where = "profile " + profile.name();
    if (!ts_col) throw SchemaError("TIMESTAMP", where);
    for (MetricId m : kAllMetrics) {
        if (!metric_col[index_of(m)]) throw SchemaError(std::string(metric_name(m)), where);
    }
    if (!label_col) throw SchemaError("LABEL", where);

    std::vector<ChangeRecord> records;
    std::optional<DateFormat> date_format;
    while (getline_clean(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = detail::split_csv_line(line, line_no);
        if (fields.size() != header.size()) {
            throw RowError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                        std::to_string(fields.size()));
        }
        ChangeRecord r;
        const std::string& ts = fields[*ts_col];
        if (!date_format) {
            date_format = detect_date_format(ts);
            if (!date_format) throw RowError(line_no, "unrecognised timestamp '" + ts + "'");
        }
        const auto date = parse_date(ts, *date_format);
        if (!date) throw RowError(line_no, "unparsable timestamp '" + ts + "'");
        r.committed = *date;

        for (MetricId m : kAllMetrics) {
            const std::string& cell = fields[*metric_col[index_of(m)]];
            double v = 0.0;
            bool flag = false;
            if (parse_double(cell, v)) {
                r.metric(m) = v;
            } else if (m == MetricId::FIX && parse_bool(cell, flag)) {
                r.metric(m) = flag ? 1.0 : 0.0;
            } else {
                throw RowError(line_no, "unparsable " + std::string(metric_name(m)) + " value '" + cell + "'");
            }
        }
        if (!parse_bool(fields[*label_col], r.defective)) {
            throw RowError(line_no, "unparsable label '" + fields[*label_col] + "'");
        }
        try {
            validate_record(r);
        } catch (const Error& e) {
            throw RowError(line_no, e.what());
        }
        records.push_back(r);
    }
    if (records.empty()) throw EmptyDatasetError("dataset '" + project + "' has no data rows");
    return Dataset(std::move(project), std::move(records));
}

Dataset load_csv(const std::filesystem::path& path, const SchemaProfile& profile) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return read_csv(in, path.stem().string(), profile);
}

std::string format_number(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const Dataset& ds) {
    out << "commitdate";
    for (MetricId m : kAllMetrics) out << ',' << lower(metric_name(m));
    out << ",bug\n";
    for (const ChangeRecord& r : ds.records()) {
        const std::chrono::year_month_day ymd{r.committed};
        char date[16];
        std::snprintf(date, sizeof date, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        out << date;
        for (MetricId m : kAllMetrics) out << ',' << format_number(r.metric(m));
        out << ',' << (r.defective ? 1 : 0) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(out, ds);
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace jitdp

namespace jitdp::detail {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw RowError(line_no, "unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

std::string quote_csv(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace jitdp::detail

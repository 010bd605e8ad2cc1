#pragma once

// File loaders. JSONL and CSV adapters share a FieldMap so corpora with
// different column layouts go through one code path; rejected rows are
// counted per reason and reported, never silently dropped.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtst/schema.hpp"

namespace mtst {

using json = nlohmann::ordered_json;

enum class FileFormat { jsonl, csv };

struct FieldMap {
    std::string id = "id";
    std::string text = "text";
    std::string lang = "lang";
    std::string labels = "labels";          // multi-label: list of names (JSONL) or 'a|b' (CSV)
    std::string main_label = "main_label";  // name, or list of annotator names (JSONL)
    char csv_label_sep = '|';
};

struct RejectReport {
    size_t total = 0;
    size_t accepted = 0;
    size_t rejected = 0;
    std::map<std::string, size_t> reasons;

    void reject(const std::string& reason) {
        ++rejected;
        ++reasons[reason];
    }
    json to_json() const {
        json r;
        r["total"] = total;
        r["accepted"] = accepted;
        r["rejected"] = rejected;
        r["reasons"] = json::object();
        for (const auto& [k, v] : reasons) r["reasons"][k] = v;
        return r;
    }
};

struct LoadOptions {
    double reject_budget = 0.01;  // fraction of rows allowed to fail
    bool clean = true;            // run clean_text on the text field
    MappingRules mapping;
};

namespace detail {

// RFC-4180-ish: quoted fields, doubled quotes, embedded separators.
inline bool split_csv_row(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
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
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return !quoted;  // unterminated quote -> malformed
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<uint8_t> names_to_vector(const std::vector<std::string>& names, const LabelSchema& schema) {
    std::vector<uint8_t> vec(schema.num_multi(), 0);
    for (const auto& n : names) {
        int idx = schema.multi_index(n);
        if (idx < 0) throw std::invalid_argument("unknown multi-label '" + n + "'");
        vec[static_cast<size_t>(idx)] = 1;
    }
    return vec;
}

}  // namespace detail

// Parses one JSONL object into a Sample. Throws invalid_argument on schema
// problems; the caller converts that into a reject entry.
inline Sample sample_from_json(const json& row, const FieldMap& fm, const LabelSchema& schema,
                               const MappingRules& rules, size_t row_number) {
    Sample s;
    if (!row.contains(fm.text) || !row[fm.text].is_string())
        throw std::invalid_argument("missing text field");
    s.text = row[fm.text].get<std::string>();
    s.id = row.contains(fm.id) ? row[fm.id].is_string() ? row[fm.id].get<std::string>()
                                                        : row[fm.id].dump()
                               : "row-" + std::to_string(row_number);
    if (row.contains(fm.lang) && row[fm.lang].is_string()) s.lang = row[fm.lang].get<std::string>();
    if (row.contains(fm.labels)) {
        const auto& lab = row[fm.labels];
        if (!lab.is_array()) throw std::invalid_argument("labels field is not a list");
        std::vector<std::string> names;
        for (const auto& x : lab) names.push_back(x.get<std::string>());
        s.multi_label = detail::names_to_vector(names, schema);
    }
    if (row.contains(fm.main_label)) {
        const auto& ml = row[fm.main_label];
        if (ml.is_array()) {
            std::vector<std::string> annotations;
            for (const auto& x : ml) annotations.push_back(x.get<std::string>());
            s.main_label = map_main_label(annotations, rules, schema);
        } else if (ml.is_number_integer()) {
            s.main_label = ml.get<int>();
        } else {
            s.main_label = map_main_label({ml.get<std::string>()}, rules, schema);
        }
    }
    return s;
}

inline std::vector<Sample> load_dataset(const std::string& path, FileFormat format, const FieldMap& fm,
                                        const LabelSchema& schema, RejectReport& report,
                                        const LoadOptions& opts = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    std::vector<Sample> out;
    std::string line;
    size_t row_number = 0;

    std::vector<std::string> header;
    if (format == FileFormat::csv) {
        if (!std::getline(in, line)) throw std::runtime_error("csv file has no header row: " + path);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!detail::split_csv_row(line, header)) throw std::runtime_error("malformed csv header: " + path);
    }
    auto column = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    const int col_id = format == FileFormat::csv ? column(fm.id) : -1;
    const int col_text = format == FileFormat::csv ? column(fm.text) : -1;
    const int col_lang = format == FileFormat::csv ? column(fm.lang) : -1;
    const int col_labels = format == FileFormat::csv ? column(fm.labels) : -1;
    const int col_main = format == FileFormat::csv ? column(fm.main_label) : -1;
    if (format == FileFormat::csv && col_text < 0)
        throw std::runtime_error("csv header lacks text column '" + fm.text + "'");

    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row_number;
        ++report.total;
        try {
            Sample s;
            if (format == FileFormat::jsonl) {
                s = sample_from_json(json::parse(line), fm, schema, opts.mapping, row_number);
            } else {
                if (!detail::split_csv_row(line, fields)) throw std::invalid_argument("malformed csv row");
                if (fields.size() != header.size()) throw std::invalid_argument("csv column count");
                auto cell = [&](int c) -> const std::string& {
                    static const std::string empty;
                    return c >= 0 ? fields[static_cast<size_t>(c)] : empty;
                };
                s.text = cell(col_text);
                s.id = cell(col_id).empty() ? "row-" + std::to_string(row_number) : cell(col_id);
                if (!cell(col_lang).empty()) s.lang = cell(col_lang);
                if (col_labels >= 0 && !cell(col_labels).empty())
                    s.multi_label =
                        detail::names_to_vector(detail::split_on(cell(col_labels), fm.csv_label_sep), schema);
                if (col_main >= 0 && !cell(col_main).empty())
                    s.main_label = map_main_label({cell(col_main)}, opts.mapping, schema);
            }
            if (opts.clean) s.text = clean_text(s.text);
            auto violations = validate(s, schema);
            if (!violations.empty()) throw std::invalid_argument(violations.front());
            out.push_back(std::move(s));
            ++report.accepted;
        } catch (const std::exception& e) {
            report.reject(e.what());
        }
    }
    if (report.total > 0 &&
        static_cast<double>(report.rejected) > opts.reject_budget * static_cast<double>(report.total)) {
        throw std::runtime_error(path + ": rejected " + std::to_string(report.rejected) + " of " +
                                 std::to_string(report.total) + " rows, over the reject budget");
    }
    return out;
}

inline void write_jsonl(const std::string& path, const std::vector<Sample>& samples,
                        const LabelSchema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    for (const auto& s : samples) {
        json row;
        row["id"] = s.id;
        row["text"] = s.text;
        row["lang"] = s.lang;
        if (s.multi_label) {
            json names = json::array();
            for (size_t k = 0; k < s.multi_label->size(); ++k)
                if ((*s.multi_label)[k]) names.push_back(schema.multi_labels[k]);
            row["labels"] = names;
        }
        if (s.main_label) row["main_label"] = schema.main_labels[static_cast<size_t>(*s.main_label)];
        if (s.provenance == Provenance::pseudo) row["provenance"] = "pseudo";
        out << row.dump() << '\n';
    }
}

}  // namespace mtst

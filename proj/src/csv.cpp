#include "tvmg/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tvmg/errors.hpp"

namespace tvmg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_cell(const std::string& cell, const std::string& where) {
    if (cell.empty()) return std::nan("");
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw data_error("non-numeric value '" + cell + "' in " + where);
    }
    if (pos != cell.size()) throw data_error("non-numeric value '" + cell + "' in " + where);
    return v;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw data_error("empty file: " + path);
    return lines;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

RawRecords read_long_csv(const std::string& path) {
    const auto lines = read_lines(path);
    const auto header = split_csv_line(lines[0]);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw data_error(path + ": missing required column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t unit_col = col("unit");
    const std::size_t group_col = col("group");
    const std::size_t time_col = col("time");

    RawRecords records;
    records.rows.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_csv_line(lines[li]);
        if (fields.size() != header.size()) {
            throw data_error(path + ": line " + std::to_string(li + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        }
        RawRecords::Row row;
        row.unit = fields[unit_col];
        row.group = fields[group_col];
        try {
            row.time = std::stoi(fields[time_col]);
        } catch (const std::exception&) {
            throw data_error(path + ": bad time label '" + fields[time_col] + "'");
        }
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == unit_col || c == group_col || c == time_col) continue;
            const double v = parse_cell(fields[c], path + " line " + std::to_string(li + 1));
            if (std::isfinite(v)) row.values[header[c]] = v;
        }
        records.rows.push_back(std::move(row));
    }
    return records;
}

WideTable read_wide_csv(const std::string& path) {
    const auto lines = read_lines(path);
    const auto header = split_csv_line(lines[0]);
    if (header.size() < 2) throw data_error(path + ": wide CSV needs a label column and data");

    WideTable table;
    table.series_names.assign(header.begin() + 1, header.end());
    const std::size_t n_series = table.series_names.size();
    table.values.resize(static_cast<Eigen::Index>(lines.size() - 1),
                        static_cast<Eigen::Index>(n_series));
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = split_csv_line(lines[li]);
        if (fields.size() != header.size()) {
            throw data_error(path + ": line " + std::to_string(li + 1) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        }
        table.row_labels.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            table.values(static_cast<Eigen::Index>(li - 1), static_cast<Eigen::Index>(c - 1)) =
                parse_cell(fields[c], path + " line " + std::to_string(li + 1));
        }
    }
    return table;
}

std::map<std::string, int> read_tcode_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::map<std::string, int> codes;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto fields = split_csv_line(lines[li]);
        if (li == 0 && !fields.empty() && fields[0] == "series") continue;  // optional header
        if (fields.size() != 2) {
            throw data_error(path + ": expected 'series,tcode' rows");
        }
        try {
            codes[fields[0]] = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw data_error(path + ": bad tcode '" + fields[1] + "' for " + fields[0]);
        }
    }
    if (codes.empty()) throw data_error(path + ": no tcode rows");
    return codes;
}

int year_of_label(const std::string& label) {
    std::size_t pos = 0;
    int year;
    try {
        year = std::stoi(label, &pos);
    } catch (const std::exception&) {
        throw data_error("unparseable time label: '" + label + "'");
    }
    if (pos != label.size()) {
        // Accept "1997Q3" style suffixes only.
        if (label[pos] != 'Q' && label[pos] != 'q') {
            throw data_error("unparseable time label: '" + label + "'");
        }
    }
    return year;
}

}  // namespace tvmg

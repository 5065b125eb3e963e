#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "tvmg/panel.hpp"

namespace tvmg {

/// Long-format panel CSV: header row with required columns `unit,group,time`;
/// every remaining column numeric or empty (empty = missing). UTF-8, '.'
/// decimal separator, no quoting.
RawRecords read_long_csv(const std::string& path);

/// Wide table: first column holds row labels (e.g. "1992Q1" or "1992"), one
/// column per named series. Empty cells become NaN.
struct WideTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> series_names;
    Eigen::MatrixXd values;  // rows x series
};

WideTable read_wide_csv(const std::string& path);

/// Two-column CSV `series,tcode` mapping series names to transformation codes.
std::map<std::string, int> read_tcode_csv(const std::string& path);

/// Splits a "1997Q3"-style or plain-year label into its year; throws on
/// unparseable labels.
int year_of_label(const std::string& label);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tvmg

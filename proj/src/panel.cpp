#include "tvmg/panel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "tvmg/errors.hpp"

namespace tvmg {

void Panel::validate() const {
    const int n = n_units();
    const int t = n_times();
    const int p = n_vars();
    if (n < 1) throw data_error("panel: need at least one unit");
    if (t < 3) throw data_error("panel: need at least three time points");
    if (p < 1) throw data_error("panel: need at least one regressor");
    if (static_cast<int>(unit_groups.size()) != n) {
        throw data_error("panel: group labels must match unit count");
    }
    std::unordered_set<std::string> seen(unit_ids.begin(), unit_ids.end());
    if (static_cast<int>(seen.size()) != n) throw data_error("panel: unit ids must be unique");
    for (int k = 1; k < t; ++k) {
        if (time_labels[k] <= time_labels[k - 1]) {
            throw data_error("panel: time labels must be strictly increasing");
        }
    }
    if (y.rows() != n || y.cols() != t) throw data_error("panel: outcome shape mismatch");
    if (static_cast<int>(x.size()) != n) throw data_error("panel: regressor shape mismatch");
    for (int i = 0; i < n; ++i) {
        if (x[i].rows() != t || x[i].cols() != p) {
            throw data_error("panel: regressor shape mismatch for unit " + unit_ids[i]);
        }
        if (!y.row(i).allFinite() || !x[i].allFinite()) {
            throw data_error("panel: non-finite cell for unit " + unit_ids[i]);
        }
    }
}

double symmetric_pct_change(double prev, double curr) {
    if (!std::isfinite(prev) || !std::isfinite(curr) || prev < 0.0 || curr < 0.0) {
        throw data_error("symmetric_pct_change: inputs must be finite and nonnegative");
    }
    if (prev == 0.0 && curr == 0.0) return 0.0;
    return (curr - prev) / (0.5 * (curr + prev));
}

std::vector<double> lag_ratio(const std::vector<double>& numerator,
                              const std::vector<double>& denominator) {
    if (numerator.size() != denominator.size()) {
        throw data_error("lag_ratio: series must be aligned on time");
    }
    if (numerator.size() < 2) throw data_error("lag_ratio: need at least two observations");
    std::vector<double> out(numerator.size() - 1);
    for (std::size_t t = 1; t < numerator.size(); ++t) {
        const double den = denominator[t - 1];
        out[t - 1] = (den == 0.0) ? std::nan("") : numerator[t] / den;
    }
    return out;
}

BuildReport build_panel(const RawRecords& records, const std::string& outcome,
                        const std::vector<std::string>& regressors) {
    if (records.rows.empty()) throw data_error("build_panel: no records");
    if (regressors.empty()) throw data_error("build_panel: need at least one regressor");

    // Collect the time grid and index rows by (unit, time).
    std::set<int> time_set;
    std::vector<std::string> unit_order;
    std::unordered_map<std::string, std::string> group_of;
    std::unordered_map<std::string, std::unordered_map<int, const RawRecords::Row*>> by_unit;
    for (const auto& row : records.rows) {
        time_set.insert(row.time);
        auto& unit_rows = by_unit[row.unit];
        if (unit_rows.empty()) unit_order.push_back(row.unit);
        if (!unit_rows.emplace(row.time, &row).second) {
            throw data_error("build_panel: duplicate (unit,time) pair: " + row.unit);
        }
        group_of[row.unit] = row.group;
    }
    const std::vector<int> times(time_set.begin(), time_set.end());
    const int t_count = static_cast<int>(times.size());

    auto cell_value = [](const RawRecords::Row& row, const std::string& name) {
        auto it = row.values.find(name);
        if (it == row.values.end()) return std::nan("");
        return it->second;
    };

    BuildReport report;
    std::vector<std::string> kept;
    for (const auto& unit : unit_order) {
        const auto& rows = by_unit[unit];
        bool complete = rows.size() == static_cast<std::size_t>(t_count);
        for (int k = 0; complete && k < t_count; ++k) {
            auto it = rows.find(times[k]);
            if (it == rows.end()) {
                complete = false;
                break;
            }
            if (!std::isfinite(cell_value(*it->second, outcome))) complete = false;
            for (const auto& reg : regressors) {
                if (!std::isfinite(cell_value(*it->second, reg))) complete = false;
            }
        }
        if (complete) {
            kept.push_back(unit);
        } else {
            report.dropped_units.push_back(unit);
        }
    }
    report.n_retained = static_cast<int>(kept.size());
    report.n_dropped = static_cast<int>(report.dropped_units.size());
    if (kept.empty()) {
        throw data_error("build_panel: no unit has complete observations of '" + outcome +
                         "' and all regressors");
    }

    Panel& panel = report.panel;
    panel.unit_ids = kept;
    panel.time_labels = times;
    panel.var_names = regressors;
    const int n = static_cast<int>(kept.size());
    const int p = static_cast<int>(regressors.size());
    panel.unit_groups.resize(n);
    panel.y.resize(n, t_count);
    panel.x.assign(n, Eigen::MatrixXd(t_count, p));
    for (int i = 0; i < n; ++i) {
        panel.unit_groups[i] = group_of[kept[i]];
        const auto& rows = by_unit[kept[i]];
        for (int k = 0; k < t_count; ++k) {
            const RawRecords::Row& row = *rows.at(times[k]);
            panel.y(i, k) = cell_value(row, outcome);
            for (int j = 0; j < p; ++j) {
                panel.x[i](k, j) = cell_value(row, regressors[j]);
            }
        }
    }
    panel.validate();
    return report;
}

}  // namespace tvmg

#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace tvmg {

/// Balanced unit-by-time panel. Immutable after construction; safe to share
/// across threads. Every cell of `y` and `x` is present and finite.
struct Panel {
    std::vector<std::string> unit_ids;     // N, unique
    std::vector<std::string> unit_groups;  // N, group label per unit (firm, county, ...)
    std::vector<int> time_labels;          // T, strictly increasing
    Eigen::MatrixXd y;                     // N x T outcome
    std::vector<Eigen::MatrixXd> x;        // N matrices of T x p regressors (no intercept)
    std::vector<std::string> var_names;    // p

    int n_units() const { return static_cast<int>(unit_ids.size()); }
    int n_times() const { return static_cast<int>(time_labels.size()); }
    int n_vars() const { return static_cast<int>(var_names.size()); }

    /// Throws data_error if any invariant fails (balance, finiteness,
    /// T >= 3, N >= 1, p >= 1, unique units, increasing times).
    void validate() const;
};

/// Long-format observations prior to balancing. A missing value is an absent
/// key or a NaN. (unit, time) pairs must be unique.
struct RawRecords {
    struct Row {
        std::string unit;
        std::string group;
        int time = 0;
        std::map<std::string, double> values;
    };
    std::vector<Row> rows;
};

/// Symmetric percentage change (curr - prev) / ((curr + prev)/2), bounded in
/// [-2, 2]. Both inputs must be finite and nonnegative; 0/0 is defined as 0.
double symmetric_pct_change(double prev, double curr);

/// out[t] = num[t] / den[t-1] for t = 1..T-1. A zero lagged denominator marks
/// the cell missing (NaN) so that build_panel drops it.
std::vector<double> lag_ratio(const std::vector<double>& numerator,
                              const std::vector<double>& denominator);

struct BuildReport {
    Panel panel;
    int n_retained = 0;
    int n_dropped = 0;
    std::vector<std::string> dropped_units;
};

/// Variable-specific balanced sample: keeps exactly the units with a finite
/// observation of the outcome and every requested regressor at every time
/// label appearing in `records`. Throws data_error when nothing survives.
BuildReport build_panel(const RawRecords& records, const std::string& outcome,
                        const std::vector<std::string>& regressors);

}  // namespace tvmg

#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "tvmg/kernel.hpp"
#include "tvmg/mean_group.hpp"
#include "tvmg/panel.hpp"

namespace tvmg {

/// Leave-one-group-out influence diagnostics on one designated slope column.
struct LofoReport {
    std::vector<double> mdr;              // per t: max_f |beta^(-f) - beta| / SE(beta)
    std::vector<double> sfr;              // per t: share of groups flipping the slope sign
    std::vector<std::string> group_ids;   // F excluded groups, sorted
    Eigen::MatrixXd deviations;           // F x T slope deviations from the full path
    int slope_col = 1;                    // column of CoefficientPath::beta the ratios use
    std::vector<int> time_labels;
};

/// Recomputes the mean-group path once per group, excluding all of the
/// group's units. `path` must come from the same panel/spec. Throws
/// data_error with fewer than 2 distinct groups and estimation_error when an
/// exclusion leaves no usable unit at some time.
LofoReport lofo(const Panel& panel, const CoefficientPath& path, const KernelSpec& spec,
                int slope_col = 1);

/// Before/after interaction test around a break time. `post = pre + delta`
/// by construction; inference uses the cross-unit dispersion of the
/// unit-level shift estimates and normal critical values.
struct ShiftTestResult {
    std::string var;
    double pre = 0.0;
    double post = 0.0;
    double delta = 0.0;
    double se = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double p_value = 0.0;
    int n_used = 0;  // units where the interaction design is full rank
};

/// Per regressor column: unit-level OLS of y on [1, x, x*post] where
/// post(t) = 1 for time labels >= break_time (the break year belongs to the
/// post period), then mean-group aggregation of the interaction coefficient.
std::vector<ShiftTestResult> shift_test(const Panel& panel, int break_time, double level);

}  // namespace tvmg

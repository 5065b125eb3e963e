#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "tvmg/local_wls.hpp"
#include "tvmg/panel.hpp"

namespace tvmg {

/// Mean-group coefficient paths with cross-sectional covariance and normal
/// confidence bands. Column 0 is the intercept path. At times where only one
/// unit fit survives, se/ci are NaN (bands undefined, flagged via n_eff).
struct CoefficientPath {
    Eigen::MatrixXd beta;                 // T x (p+1) mean-group estimates
    std::vector<Eigen::MatrixXd> sigma_e; // T cross-sectional covariances, (p+1)x(p+1)
    Eigen::MatrixXd se;                   // T x (p+1): sqrt(diag(sigma_e)/n_eff)
    Eigen::MatrixXd ci_lo, ci_hi;         // T x (p+1)
    std::vector<int> n_eff;               // units with ok status per time
    double level = 0.9;
    std::vector<std::string> var_names;   // p+1, [0] = "intercept"
    std::vector<int> time_labels;

    int n_times() const { return static_cast<int>(n_eff.size()); }
    int n_coefs() const { return static_cast<int>(beta.cols()); }
};

/// Local fits for every unit of the panel, in panel order.
std::vector<UnitFit> fit_all_units(const Panel& panel, const KernelSpec& spec);

/// Cross-sectional aggregation of precomputed unit fits (deterministic
/// reduction in unit order). Throws estimation_error naming the time index
/// when no unit fit survives somewhere.
CoefficientPath aggregate_mean_group(const std::vector<UnitFit>& fits, double level,
                                     const std::vector<std::string>& var_names,
                                     const std::vector<int>& time_labels);

/// Two-stage estimator: kernel-weighted local OLS per unit, then per-time
/// cross-sectional averaging, with bands beta +/- z * sqrt(diag(Sigma)/n_eff).
CoefficientPath tvmg_estimate(const Panel& panel, const KernelSpec& spec, double level);

/// Static benchmark: full-sample OLS with intercept per unit, mean-group
/// average across units, t = coef / (sd / sqrt(N)). Zero cross-unit
/// dispersion makes the t-value infinite (surfaced as +/-inf).
struct StaticMgResult {
    std::string var;
    double coef = 0.0;
    double t_value = 0.0;
    int n_units = 0;
    int n_excluded = 0;  // units dropped for singular designs
};

std::vector<StaticMgResult> static_mg_ols(const Panel& panel);

/// Maximal consecutive runs of time indices where the band excludes zero,
/// split at sign changes of the mean-group estimate.
struct SignificanceInterval {
    int start = 0;    // inclusive time index
    int end = 0;      // inclusive time index
    int direction = 0;  // +1 or -1
    int length() const { return end - start + 1; }
};

struct SignificanceReport {
    std::vector<std::string> var_names;                    // p+1 incl. intercept
    std::vector<std::vector<SignificanceInterval>> intervals;  // per variable
    std::vector<int> time_labels;
};

SignificanceReport significance_periods(const CoefficientPath& path);

/// Drops intervals shorter than min_len time points.
SignificanceReport duration_filter(const SignificanceReport& report, int min_len);

}  // namespace tvmg

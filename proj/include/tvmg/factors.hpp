#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace tvmg {

/// Stationarity transformation code, 1..7:
///   1 level, 2 first difference, 3 second difference, 4 log,
///   5 log difference, 6 second log difference, 7 difference of growth rates.
struct TCode {
    int code;
    explicit TCode(int c);
};

/// Applies the transformation; the output is shorter by the differencing
/// order (0 for codes 1 and 4, 1 for 2/5, 2 for 3/6/7). Log codes require a
/// strictly positive series; code 7 requires nonzero lagged values. NaN
/// inputs propagate (missing stays missing).
std::vector<double> apply_tcode(const std::vector<double>& series, TCode tcode);

/// Per-year arithmetic mean of a quarterly series. Every year present must
/// contribute exactly 4 observations; years come out sorted ascending.
struct AnnualSeries {
    std::vector<int> years;
    std::vector<double> values;
};

AnnualSeries annualize_quarterly(const std::vector<int>& year_labels,
                                 const std::vector<double>& values);

/// Principal components of the column-standardized data (correlation-matrix
/// PCA). Loadings are orthonormal with a deterministic sign convention: the
/// largest-magnitude entry of each column is positive.
struct FactorSet {
    Eigen::VectorXd means, sds;  // per input column
    Eigen::MatrixXd loadings;    // p x k
    Eigen::MatrixXd scores;      // T x k
    Eigen::VectorXd explained;   // k shares of total variance, non-increasing
};

FactorSet extract_pcs(const Eigen::MatrixXd& data, int k);

}  // namespace tvmg

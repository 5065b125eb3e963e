#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tvmg/kernel.hpp"

namespace tvmg {

/// Reciprocal-condition threshold below which a weighted Gram matrix is
/// treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// Full time path of one unit's local coefficients. Column 0 is the
/// time-varying intercept; columns 1..p follow the panel's regressor order.
/// Rows with ok[t] == 0 are NaN.
struct UnitFit {
    Eigen::MatrixXd beta;     // T x (p+1)
    std::vector<std::uint8_t> ok;

    int n_ok() const;
};

/// argmin_b sum_j w_j (y_j - x_j' b)^2 via the weighted normal equations,
/// solved through an eigendecomposition of the weighted Gram matrix.
/// Throws estimation_error when fewer than q rows carry positive weight or
/// the Gram matrix has reciprocal condition below kSingularRcond.
Eigen::VectorXd solve_weighted_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w);

/// Kernel-weighted local regressions of y on [1, X] at every time index.
/// Singular local systems mark the row, never abort the path.
UnitFit fit_unit_path(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                      const KernelSpec& spec);

}  // namespace tvmg

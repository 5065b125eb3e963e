#pragma once

#include <vector>

#include "tvmg/kernel.hpp"
#include "tvmg/panel.hpp"

namespace tvmg {

struct CvResult {
    std::vector<double> grid;    // alpha values, in input order
    std::vector<double> scores;  // aggregate held-out SSE per alpha (+inf = failed)
    double best_alpha = 0.0;
    double best_h = 0.0;
};

/// The default search grid {0.3, 0.35, ..., 0.8, 0.85}.
std::vector<double> default_alpha_grid();

/// Leave-one-unit-out cross-validation over H = T^alpha. For each alpha and
/// each held-out unit i, y_it is predicted from the unit's own regressors and
/// the mean-group coefficient path (intercept included) computed without unit
/// i; the score is the total squared prediction error over all (i, t). Ties
/// break toward the smallest alpha.
CvResult loo_cv_bandwidth(const Panel& panel, const std::vector<double>& grid,
                          KernelKind kind = KernelKind::gaussian);

}  // namespace tvmg

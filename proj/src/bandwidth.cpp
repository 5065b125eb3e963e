#include "tvmg/bandwidth.hpp"

#include <cmath>
#include <limits>

#include "tvmg/errors.hpp"
#include "tvmg/local_wls.hpp"
#include "tvmg/mean_group.hpp"

namespace tvmg {

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    for (int i = 0; i < 12; ++i) grid.push_back(0.30 + 0.05 * i);
    return grid;
}

CvResult loo_cv_bandwidth(const Panel& panel, const std::vector<double>& grid,
                          KernelKind kind) {
    panel.validate();
    if (grid.empty()) throw data_error("loo_cv_bandwidth: empty alpha grid");
    for (double a : grid) {
        if (!(a > 0.0 && a < 1.0)) throw data_error("loo_cv_bandwidth: alpha must be in (0,1)");
    }
    const int n = panel.n_units();
    if (n < 2) throw data_error("loo_cv_bandwidth: need at least 2 units");
    const int t_count = panel.n_times();
    const int p = panel.n_vars();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    CvResult result;
    result.grid = grid;
    result.scores.assign(grid.size(), kInf);

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const KernelSpec spec(kind, bandwidth_from_alpha(t_count, grid[gi]));
        const auto fits = fit_all_units(panel, spec);

        // Per-time sums over ok units; leave-one-out means follow by subtraction.
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(t_count, p + 1);
        std::vector<int> count(static_cast<std::size_t>(t_count), 0);
        for (const auto& fit : fits) {
            for (int t = 0; t < t_count; ++t) {
                if (!fit.ok[static_cast<std::size_t>(t)]) continue;
                sum.row(t) += fit.beta.row(t);
                ++count[static_cast<std::size_t>(t)];
            }
        }

        double sse = 0.0;
        long cells = 0;
        for (int i = 0; i < n; ++i) {
            for (int t = 0; t < t_count; ++t) {
                const bool own_ok = fits[static_cast<std::size_t>(i)].ok[static_cast<std::size_t>(t)] != 0;
                const int reduced = count[static_cast<std::size_t>(t)] - (own_ok ? 1 : 0);
                if (reduced == 0) continue;  // nothing left to predict from
                Eigen::RowVectorXd mg = sum.row(t);
                if (own_ok) mg -= fits[static_cast<std::size_t>(i)].beta.row(t);
                mg /= reduced;
                double pred = mg[0];
                for (int k = 0; k < p; ++k) pred += mg[k + 1] * panel.x[i](t, k);
                const double err = panel.y(i, t) - pred;
                sse += err * err;
                ++cells;
            }
        }
        if (cells > 0) result.scores[gi] = sse;
    }

    // argmin with smallest-alpha tie-break
    bool found = false;
    double best_score = kInf;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double s = result.scores[gi];
        if (!std::isfinite(s)) continue;
        if (!found || s < best_score || (s == best_score && grid[gi] < result.best_alpha)) {
            found = true;
            best_score = s;
            result.best_alpha = grid[gi];
        }
    }
    if (!found) {
        throw estimation_error("loo_cv_bandwidth: every alpha in the grid failed");
    }
    result.best_h = bandwidth_from_alpha(t_count, result.best_alpha);
    return result;
}

}  // namespace tvmg

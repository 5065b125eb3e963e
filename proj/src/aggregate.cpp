#include "tvmg/aggregate.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "tvmg/errors.hpp"
#include "tvmg/mathutil.hpp"

namespace tvmg {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

UnitFit tv_ols_series(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                      const KernelSpec& spec) {
    if (y.size() < X.cols() + 2) {
        throw data_error("tv_ols_series: series too short for the regressor count");
    }
    return fit_unit_path(y, X, spec);
}

int mbb_block_length(int n_times, double c) {
    if (n_times < 1) throw data_error("mbb_block_length: empty series");
    if (!(c > 0.0)) throw data_error("mbb_block_length: block scale must be positive");
    const int len = static_cast<int>(std::floor(c * std::cbrt(static_cast<double>(n_times))));
    if (len < 1) throw data_error("mbb_block_length: block length fell below 1");
    if (len > n_times) throw data_error("mbb_block_length: block length exceeds series length");
    return len;
}

BootstrapBands mbb_bands(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                         const KernelSpec& spec, double c, int n_reps, double level,
                         std::uint64_t seed) {
    if (n_reps < 100) throw data_error("mbb_bands: need at least 100 replications");
    if (!(level > 0.0 && level < 1.0)) throw data_error("confidence level must be in (0,1)");
    const int t_count = static_cast<int>(y.size());
    const int q = static_cast<int>(X.cols()) + 1;
    const int block_len = mbb_block_length(t_count, c);
    const int n_blocks = t_count - block_len + 1;  // overlapping block starts
    const int m = t_count / block_len;

    BootstrapBands bands;
    bands.n_reps = n_reps;
    bands.block_len = block_len;
    bands.level = level;
    bands.seed = seed;
    bands.beta_hat = tv_ols_series(y, X, spec).beta;
    bands.lo.setConstant(t_count, q, kNaN);
    bands.hi.setConstant(t_count, q, kNaN);

    // Independent substreams per replication, all derived from the master seed.
    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> rep_seeds(static_cast<std::size_t>(n_reps));
    for (auto& s : rep_seeds) s = master();

    // paths[t][k] collects the replicated estimates that survived at (t, k)
    std::vector<std::vector<std::vector<double>>> paths(
        static_cast<std::size_t>(t_count),
        std::vector<std::vector<double>>(static_cast<std::size_t>(q)));

    Eigen::VectorXd y_star(t_count);
    Eigen::MatrixXd x_star(t_count, X.cols());
    for (int b = 0; b < n_reps; ++b) {
        std::mt19937_64 rng(rep_seeds[static_cast<std::size_t>(b)]);
        std::uniform_int_distribution<int> start_dist(0, n_blocks - 1);
        int filled = 0;
        const int draws = m * block_len < t_count ? m + 1 : m;
        for (int d = 0; d < draws && filled < t_count; ++d) {
            const int start = start_dist(rng);
            const int take = std::min(block_len, t_count - filled);
            y_star.segment(filled, take) = y.segment(start, take);
            x_star.middleRows(filled, take) = X.middleRows(start, take);
            filled += take;
        }
        const UnitFit fit = tv_ols_series(y_star, x_star, spec);
        for (int t = 0; t < t_count; ++t) {
            if (!fit.ok[static_cast<std::size_t>(t)]) {
                bands.n_failed_cells += q;
                continue;
            }
            for (int k = 0; k < q; ++k) {
                paths[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)].push_back(
                    fit.beta(t, k));
            }
        }
    }

    const double alpha = 1.0 - level;
    for (int t = 0; t < t_count; ++t) {
        for (int k = 0; k < q; ++k) {
            auto& values = paths[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
            if (values.empty()) continue;  // left NaN, failure already counted
            std::sort(values.begin(), values.end());
            bands.lo(t, k) = sample_quantile(values, alpha / 2.0);
            bands.hi(t, k) = sample_quantile(values, 1.0 - alpha / 2.0);
        }
    }
    return bands;
}

NormalBands normal_bands(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                         const KernelSpec& spec, const UnitFit& fit, double level) {
    if (!(level > 0.0 && level < 1.0)) throw data_error("confidence level must be in (0,1)");
    const int t_count = static_cast<int>(y.size());
    const int q = static_cast<int>(X.cols()) + 1;
    if (fit.beta.rows() != t_count || fit.beta.cols() != q) {
        throw data_error("normal_bands: fit does not match the series");
    }
    const double z = normal_critical_value(level);

    Eigen::MatrixXd design(t_count, q);
    design.col(0).setOnes();
    design.rightCols(X.cols()) = X;

    NormalBands bands;
    bands.lo.setConstant(t_count, q, kNaN);
    bands.hi.setConstant(t_count, q, kNaN);
    bands.se.setConstant(t_count, q, kNaN);
    for (int t = 0; t < t_count; ++t) {
        if (!fit.ok[static_cast<std::size_t>(t)]) continue;
        const Eigen::VectorXd w = weights_for_time(t_count, t, spec);
        const Eigen::VectorXd resid = y - design * fit.beta.row(t).transpose();
        const double wsum = w.sum();
        const double sigma2 = w.dot(resid.cwiseAbs2()) / wsum;

        const Eigen::MatrixXd gram = design.transpose() * w.asDiagonal() * design;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        if (q <= 3) es.computeDirect(gram);
        else es.compute(gram);
        const auto& evals = es.eigenvalues();
        if (!(evals(0) > kSingularRcond * evals(evals.size() - 1))) continue;
        const Eigen::MatrixXd gram_inv = es.eigenvectors() *
                                         evals.cwiseInverse().asDiagonal() *
                                         es.eigenvectors().transpose();
        for (int k = 0; k < q; ++k) {
            const double se = std::sqrt(std::max(0.0, sigma2 * gram_inv(k, k)));
            bands.se(t, k) = se;
            bands.lo(t, k) = fit.beta(t, k) - z * se;
            bands.hi(t, k) = fit.beta(t, k) + z * se;
        }
    }
    return bands;
}

}  // namespace tvmg

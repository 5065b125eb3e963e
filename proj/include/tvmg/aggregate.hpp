#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "tvmg/kernel.hpp"
#include "tvmg/local_wls.hpp"

namespace tvmg {

/// Time-varying regression of a single series on [1, X] with the same local
/// weighted-least-squares machinery used per unit in the panel case.
/// Requires T >= q + 2 where q is the regressor count.
UnitFit tv_ols_series(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                      const KernelSpec& spec);

/// Block length rule l = floor(c * T^(1/3)).
int mbb_block_length(int n_times, double c);

/// Pointwise percentile bands from a moving-block bootstrap. The point path
/// is NOT clamped into the bands; percentile bands may exclude it.
struct BootstrapBands {
    Eigen::MatrixXd beta_hat;  // T x (q+1) point path (NaN at singular t)
    Eigen::MatrixXd lo, hi;    // T x (q+1) percentile bands
    int n_reps = 0;            // B
    int block_len = 0;         // l
    double level = 0.9;
    std::uint64_t seed = 0;
    long n_failed_cells = 0;   // replication cells dropped for singular fits
};

/// Overlapping blocks of length l; each replication concatenates
/// m = floor(T/l) blocks sampled with replacement, tops up with one extra
/// sampled block when m*l < T, truncates to exactly T, and re-estimates the
/// time-varying path. Bands are per-(t, coefficient) empirical quantiles
/// over the surviving replications. Deterministic in `seed` (mt19937_64 with
/// per-replication substreams).
BootstrapBands mbb_bands(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                         const KernelSpec& spec, double c, int n_reps, double level,
                         std::uint64_t seed);

/// Normal comparison bands beta_t +/- z * SE(beta_t), where SE uses the
/// kernel-weighted residual variance at t times the diagonal of the inverse
/// weighted Gram matrix (local homoskedastic estimate).
struct NormalBands {
    Eigen::MatrixXd lo, hi, se;  // T x (q+1); NaN at singular t
};

NormalBands normal_bands(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                         const KernelSpec& spec, const UnitFit& fit, double level);

}  // namespace tvmg

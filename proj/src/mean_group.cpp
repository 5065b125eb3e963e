#include "tvmg/mean_group.hpp"

#include <cmath>
#include <limits>

#include "tvmg/errors.hpp"
#include "tvmg/mathutil.hpp"

namespace tvmg {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<UnitFit> fit_all_units(const Panel& panel, const KernelSpec& spec) {
    std::vector<UnitFit> fits;
    fits.reserve(panel.unit_ids.size());
    for (int i = 0; i < panel.n_units(); ++i) {
        fits.push_back(fit_unit_path(panel.y.row(i).transpose(), panel.x[i], spec));
    }
    return fits;
}

CoefficientPath aggregate_mean_group(const std::vector<UnitFit>& fits, double level,
                                     const std::vector<std::string>& var_names,
                                     const std::vector<int>& time_labels) {
    if (fits.empty()) throw data_error("aggregate_mean_group: no unit fits");
    if (!(level > 0.0 && level < 1.0)) throw data_error("confidence level must be in (0,1)");
    const int t_count = static_cast<int>(fits[0].beta.rows());
    const int q = static_cast<int>(fits[0].beta.cols());
    const double z = normal_critical_value(level);

    CoefficientPath path;
    path.level = level;
    path.time_labels = time_labels;
    path.var_names.reserve(static_cast<std::size_t>(q));
    path.var_names.emplace_back("intercept");
    path.var_names.insert(path.var_names.end(), var_names.begin(), var_names.end());
    path.beta.setZero(t_count, q);
    path.se.setConstant(t_count, q, kNaN);
    path.ci_lo.setConstant(t_count, q, kNaN);
    path.ci_hi.setConstant(t_count, q, kNaN);
    path.sigma_e.assign(static_cast<std::size_t>(t_count), Eigen::MatrixXd::Zero(q, q));
    path.n_eff.assign(static_cast<std::size_t>(t_count), 0);

    for (int t = 0; t < t_count; ++t) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(q);
        int n_eff = 0;
        for (const auto& fit : fits) {
            if (!fit.ok[static_cast<std::size_t>(t)]) continue;
            sum += fit.beta.row(t).transpose();
            ++n_eff;
        }
        if (n_eff == 0) {
            throw estimation_error("no usable unit fit at time index " + std::to_string(t));
        }
        const Eigen::VectorXd mean = sum / n_eff;
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(q, q);
        for (const auto& fit : fits) {
            if (!fit.ok[static_cast<std::size_t>(t)]) continue;
            const Eigen::VectorXd dev = fit.beta.row(t).transpose() - mean;
            sigma += dev * dev.transpose();
        }
        sigma /= n_eff;

        path.beta.row(t) = mean.transpose();
        path.sigma_e[static_cast<std::size_t>(t)] = sigma;
        path.n_eff[static_cast<std::size_t>(t)] = n_eff;
        if (n_eff >= 2) {
            for (int k = 0; k < q; ++k) {
                const double se = std::sqrt(sigma(k, k) / n_eff);
                path.se(t, k) = se;
                path.ci_lo(t, k) = mean[k] - z * se;
                path.ci_hi(t, k) = mean[k] + z * se;
            }
        }
    }
    return path;
}

CoefficientPath tvmg_estimate(const Panel& panel, const KernelSpec& spec, double level) {
    panel.validate();
    return aggregate_mean_group(fit_all_units(panel, spec), level, panel.var_names,
                                panel.time_labels);
}

std::vector<StaticMgResult> static_mg_ols(const Panel& panel) {
    panel.validate();
    const int p = panel.n_vars();
    const int t_count = panel.n_times();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(t_count);

    std::vector<Eigen::VectorXd> coefs;  // per ok unit, slopes only
    int n_excluded = 0;
    for (int i = 0; i < panel.n_units(); ++i) {
        Eigen::MatrixXd design(t_count, p + 1);
        design.col(0).setOnes();
        design.rightCols(p) = panel.x[i];
        try {
            const Eigen::VectorXd b =
                solve_weighted_ls(design, panel.y.row(i).transpose(), ones);
            coefs.push_back(b.tail(p));
        } catch (const estimation_error&) {
            ++n_excluded;
        }
    }
    if (coefs.empty()) throw estimation_error("static_mg_ols: every unit regression is singular");

    const int n = static_cast<int>(coefs.size());
    std::vector<StaticMgResult> results(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        double mean = 0.0;
        for (const auto& b : coefs) mean += b[k];
        mean /= n;
        double ss = 0.0;
        for (const auto& b : coefs) ss += (b[k] - mean) * (b[k] - mean);
        const double sd = n >= 2 ? std::sqrt(ss / (n - 1)) : kNaN;

        auto& r = results[static_cast<std::size_t>(k)];
        r.var = panel.var_names[static_cast<std::size_t>(k)];
        r.coef = mean;
        r.n_units = n;
        r.n_excluded = n_excluded;
        // dispersion at rounding-noise scale counts as zero
        if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
            // zero (or undefined) cross-unit dispersion: t-value degenerates
            r.t_value = mean == 0.0 ? kNaN
                                    : std::copysign(std::numeric_limits<double>::infinity(), mean);
        } else {
            r.t_value = mean / (sd / std::sqrt(static_cast<double>(n)));
        }
    }
    return results;
}

SignificanceReport significance_periods(const CoefficientPath& path) {
    SignificanceReport report;
    report.var_names = path.var_names;
    report.time_labels = path.time_labels;
    report.intervals.resize(path.var_names.size());

    const int t_count = path.n_times();
    for (int k = 0; k < path.n_coefs(); ++k) {
        auto& runs = report.intervals[static_cast<std::size_t>(k)];
        int run_start = -1;
        int run_sign = 0;
        for (int t = 0; t <= t_count; ++t) {
            int sign = 0;
            if (t < t_count) {
                const double lo = path.ci_lo(t, k);
                const double hi = path.ci_hi(t, k);
                if (std::isfinite(lo) && std::isfinite(hi)) {
                    if (lo > 0.0) sign = 1;
                    else if (hi < 0.0) sign = -1;
                }
            }
            if (sign != run_sign) {
                if (run_sign != 0) {
                    runs.push_back({run_start, t - 1, run_sign});
                }
                run_start = sign != 0 ? t : -1;
            }
            run_sign = sign;
        }
    }
    return report;
}

SignificanceReport duration_filter(const SignificanceReport& report, int min_len) {
    if (min_len < 1) throw data_error("duration_filter: min_len must be >= 1");
    SignificanceReport out;
    out.var_names = report.var_names;
    out.time_labels = report.time_labels;
    out.intervals.resize(report.intervals.size());
    for (std::size_t k = 0; k < report.intervals.size(); ++k) {
        for (const auto& iv : report.intervals[k]) {
            if (iv.length() >= min_len) out.intervals[k].push_back(iv);
        }
    }
    return out;
}

}  // namespace tvmg

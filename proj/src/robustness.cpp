#include "tvmg/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tvmg/errors.hpp"
#include "tvmg/local_wls.hpp"
#include "tvmg/mathutil.hpp"

namespace tvmg {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

LofoReport lofo(const Panel& panel, const CoefficientPath& path, const KernelSpec& spec,
                int slope_col) {
    panel.validate();
    if (slope_col < 0 || slope_col >= path.n_coefs()) {
        throw data_error("lofo: slope column out of range");
    }
    const int t_count = panel.n_times();
    if (path.n_times() != t_count) throw data_error("lofo: path does not match panel");

    std::map<std::string, std::vector<int>> members;  // group -> unit indices, sorted keys
    for (int i = 0; i < panel.n_units(); ++i) members[panel.unit_groups[i]].push_back(i);
    if (members.size() < 2) throw data_error("lofo: need at least 2 distinct groups");

    const auto fits = fit_all_units(panel, spec);
    Eigen::VectorXd slope_sum = Eigen::VectorXd::Zero(t_count);
    std::vector<int> count(static_cast<std::size_t>(t_count), 0);
    for (const auto& fit : fits) {
        for (int t = 0; t < t_count; ++t) {
            if (!fit.ok[static_cast<std::size_t>(t)]) continue;
            slope_sum[t] += fit.beta(t, slope_col);
            ++count[static_cast<std::size_t>(t)];
        }
    }

    LofoReport report;
    report.slope_col = slope_col;
    report.time_labels = panel.time_labels;
    report.mdr.assign(static_cast<std::size_t>(t_count), 0.0);
    report.sfr.assign(static_cast<std::size_t>(t_count), 0.0);
    report.group_ids.reserve(members.size());
    for (const auto& [group, _] : members) report.group_ids.push_back(group);
    const auto f_count = static_cast<int>(members.size());
    report.deviations.setZero(f_count, t_count);

    // Deviations at rounding-noise scale are zero influence; without this
    // floor an identical-unit panel turns into a 0/0 ratio.
    Eigen::VectorXd noise_floor(t_count);
    for (int t = 0; t < t_count; ++t) {
        double scale = 1.0;
        for (const auto& fit : fits) {
            if (!fit.ok[static_cast<std::size_t>(t)]) continue;
            scale = std::max(scale, std::abs(fit.beta(t, slope_col)));
        }
        noise_floor[t] = 1e-12 * scale;
    }

    int f = 0;
    for (const auto& [group, units] : members) {
        for (int t = 0; t < t_count; ++t) {
            double excluded_sum = 0.0;
            int excluded = 0;
            for (int i : units) {
                if (!fits[static_cast<std::size_t>(i)].ok[static_cast<std::size_t>(t)]) continue;
                excluded_sum += fits[static_cast<std::size_t>(i)].beta(t, slope_col);
                ++excluded;
            }
            const int reduced = count[static_cast<std::size_t>(t)] - excluded;
            if (reduced == 0) {
                throw estimation_error("lofo: excluding group '" + group +
                                       "' leaves no unit at time index " + std::to_string(t));
            }
            const double reduced_mean = (slope_sum[t] - excluded_sum) / reduced;
            const double full_mean = path.beta(t, slope_col);
            const double dev = reduced_mean - full_mean;
            report.deviations(f, t) = std::abs(dev) <= noise_floor[t] ? 0.0 : dev;
            if (std::abs(dev) > noise_floor[t] && sign_of(reduced_mean) != sign_of(full_mean)) {
                report.sfr[static_cast<std::size_t>(t)] += 1.0;
            }
        }
        ++f;
    }

    for (int t = 0; t < t_count; ++t) {
        report.sfr[static_cast<std::size_t>(t)] /= f_count;
        const double max_dev = report.deviations.col(t).cwiseAbs().maxCoeff();
        if (max_dev == 0.0) {
            report.mdr[static_cast<std::size_t>(t)] = 0.0;
        } else {
            const double se = path.se(t, slope_col);
            report.mdr[static_cast<std::size_t>(t)] =
                (std::isfinite(se) && se > 0.0)
                    ? max_dev / se
                    : std::numeric_limits<double>::infinity();
        }
    }
    return report;
}

std::vector<ShiftTestResult> shift_test(const Panel& panel, int break_time, double level) {
    panel.validate();
    if (!(level > 0.0 && level < 1.0)) throw data_error("confidence level must be in (0,1)");
    if (break_time <= panel.time_labels.front() || break_time > panel.time_labels.back()) {
        throw data_error("shift_test: break time must lie strictly inside the sample");
    }
    const int t_count = panel.n_times();
    Eigen::VectorXd post(t_count);
    for (int t = 0; t < t_count; ++t) post[t] = panel.time_labels[t] >= break_time ? 1.0 : 0.0;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(t_count);
    const double z = normal_critical_value(level);

    std::vector<ShiftTestResult> results;
    for (int k = 0; k < panel.n_vars(); ++k) {
        std::vector<double> pre_coefs, deltas;
        for (int i = 0; i < panel.n_units(); ++i) {
            Eigen::MatrixXd design(t_count, 3);
            design.col(0).setOnes();
            design.col(1) = panel.x[i].col(k);
            design.col(2) = panel.x[i].col(k).cwiseProduct(post);
            try {
                const Eigen::VectorXd b =
                    solve_weighted_ls(design, panel.y.row(i).transpose(), ones);
                pre_coefs.push_back(b[1]);
                deltas.push_back(b[2]);
            } catch (const estimation_error&) {
                // interaction model not identifiable for this unit
            }
        }
        const int n_used = static_cast<int>(deltas.size());
        if (n_used == 0) {
            throw estimation_error("shift_test: interaction model unidentifiable for every unit"
                                   " of variable " + panel.var_names[static_cast<std::size_t>(k)]);
        }

        ShiftTestResult r;
        r.var = panel.var_names[static_cast<std::size_t>(k)];
        r.n_used = n_used;
        double pre_mean = 0.0, post_mean = 0.0, delta_mean = 0.0;
        for (int i = 0; i < n_used; ++i) {
            pre_mean += pre_coefs[static_cast<std::size_t>(i)];
            delta_mean += deltas[static_cast<std::size_t>(i)];
            post_mean += pre_coefs[static_cast<std::size_t>(i)] + deltas[static_cast<std::size_t>(i)];
        }
        r.pre = pre_mean / n_used;
        r.post = post_mean / n_used;
        r.delta = delta_mean / n_used;
        if (n_used >= 2) {
            double ss = 0.0;
            for (double d : deltas) ss += (d - r.delta) * (d - r.delta);
            const double sd = std::sqrt(ss / (n_used - 1));
            r.se = sd / std::sqrt(static_cast<double>(n_used));
            if (r.se > 0.0) {
                r.p_value = normal_two_sided_p(r.delta / r.se);
            } else {
                r.p_value = r.delta == 0.0 ? 1.0 : 0.0;
            }
            r.ci_lo = r.delta - z * r.se;
            r.ci_hi = r.delta + z * r.se;
        } else {
            // single identifiable unit: dispersion-based inference undefined
            r.se = kNaN;
            r.p_value = kNaN;
            r.ci_lo = kNaN;
            r.ci_hi = kNaN;
        }
        results.push_back(r);
    }
    return results;
}

}  // namespace tvmg

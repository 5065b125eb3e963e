#include "tvmg/factors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>

#include "tvmg/errors.hpp"

namespace tvmg {

TCode::TCode(int c) : code(c) {
    if (c < 1 || c > 7) throw data_error("tcode must be in 1..7, got " + std::to_string(c));
}

namespace {

std::vector<double> diff(const std::vector<double>& s) {
    std::vector<double> out(s.size() - 1);
    for (std::size_t t = 1; t < s.size(); ++t) out[t - 1] = s[t] - s[t - 1];
    return out;
}

std::vector<double> log_of(const std::vector<double>& s) {
    std::vector<double> out(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (std::isnan(s[t])) {
            out[t] = s[t];
        } else if (s[t] > 0.0) {
            out[t] = std::log(s[t]);
        } else {
            throw data_error("log transform needs strictly positive values; offending index " +
                             std::to_string(t));
        }
    }
    return out;
}

}  // namespace

std::vector<double> apply_tcode(const std::vector<double>& series, TCode tcode) {
    const int order = (tcode.code == 1 || tcode.code == 4)   ? 0
                      : (tcode.code == 2 || tcode.code == 5) ? 1
                                                             : 2;
    if (static_cast<int>(series.size()) <= order) {
        throw data_error("series too short for tcode " + std::to_string(tcode.code));
    }
    switch (tcode.code) {
        case 1: return series;
        case 2: return diff(series);
        case 3: return diff(diff(series));
        case 4: return log_of(series);
        case 5: return diff(log_of(series));
        case 6: return diff(diff(log_of(series)));
        case 7: {
            std::vector<double> growth(series.size() - 1);
            for (std::size_t t = 1; t < series.size(); ++t) {
                if (series[t - 1] == 0.0) {
                    throw data_error("growth-rate transform hit a zero value at index " +
                                     std::to_string(t - 1));
                }
                growth[t - 1] = series[t] / series[t - 1] - 1.0;
            }
            return diff(growth);
        }
    }
    return {};
}

AnnualSeries annualize_quarterly(const std::vector<int>& year_labels,
                                 const std::vector<double>& values) {
    if (year_labels.size() != values.size() || values.empty()) {
        throw data_error("annualize_quarterly: labels and values must align");
    }
    std::map<int, std::pair<double, int>> acc;  // year -> (sum, count)
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto& [sum, count] = acc[year_labels[i]];
        sum += values[i];
        ++count;
    }
    AnnualSeries out;
    for (const auto& [year, sc] : acc) {
        if (sc.second != 4) {
            throw data_error("annualize_quarterly: year " + std::to_string(year) + " has " +
                             std::to_string(sc.second) + " quarters, expected 4");
        }
        out.years.push_back(year);
        out.values.push_back(sc.first / 4.0);
    }
    return out;
}

FactorSet extract_pcs(const Eigen::MatrixXd& data, int k) {
    const auto t_count = data.rows();
    const auto p = data.cols();
    if (t_count < 2) throw data_error("extract_pcs: need at least 2 rows");
    if (k < 1 || k > p) throw data_error("extract_pcs: k must be in 1..p");

    FactorSet fs;
    fs.means = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - fs.means.transpose();
    fs.sds.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double var = centered.col(j).squaredNorm() / static_cast<double>(t_count - 1);
        if (!(var > 0.0) || !std::isfinite(var)) {
            throw data_error("extract_pcs: column " + std::to_string(j) +
                             " has zero or undefined variance");
        }
        fs.sds[j] = std::sqrt(var);
        centered.col(j) /= fs.sds[j];
    }

    const Eigen::MatrixXd corr = centered.transpose() * centered / static_cast<double>(t_count - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(corr);
    const Eigen::VectorXd evals = es.eigenvalues();  // ascending
    const double trace = corr.trace();

    fs.loadings.resize(p, k);
    fs.explained.resize(k);
    for (int j = 0; j < k; ++j) {
        const Eigen::Index src = p - 1 - j;  // descending eigenvalue order
        Eigen::VectorXd v = es.eigenvectors().col(src);
        Eigen::Index imax;
        v.cwiseAbs().maxCoeff(&imax);
        if (v[imax] < 0.0) v = -v;
        fs.loadings.col(j) = v;
        fs.explained[j] = std::max(0.0, evals[src]) / trace;
    }
    fs.scores = centered * fs.loadings;
    return fs;
}

}  // namespace tvmg

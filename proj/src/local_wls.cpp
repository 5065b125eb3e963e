#include "tvmg/local_wls.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "tvmg/errors.hpp"

namespace tvmg {

int UnitFit::n_ok() const {
    int n = 0;
    for (auto flag : ok) n += flag != 0;
    return n;
}

namespace {

// Solve A b = rhs for symmetric PSD A, rejecting ill-conditioned systems.
Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (gram.rows() <= 3) {
        es.computeDirect(gram);
    } else {
        es.compute(gram);
    }
    const auto& evals = es.eigenvalues();  // ascending
    const double lmax = evals(evals.size() - 1);
    const double lmin = evals(0);
    if (!(lmax > 0.0) || !(lmin > kSingularRcond * lmax)) {
        throw estimation_error("weighted Gram matrix is singular (rcond below 1e-12)");
    }
    return es.eigenvectors() * (es.eigenvectors().transpose() * rhs).cwiseQuotient(evals);
}

}  // namespace

Eigen::VectorXd solve_weighted_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w) {
    const Eigen::Index n = X.rows();
    const Eigen::Index q = X.cols();
    if (y.size() != n || w.size() != n) {
        throw data_error("solve_weighted_ls: dimension mismatch");
    }
    Eigen::Index positive = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (w[j] < 0.0 || !std::isfinite(w[j])) {
            throw data_error("solve_weighted_ls: weights must be nonnegative and finite");
        }
        positive += w[j] > 0.0;
    }
    if (positive < q) {
        throw estimation_error("solve_weighted_ls: fewer positive-weight rows than parameters");
    }
    const Eigen::MatrixXd xw = X.transpose() * w.asDiagonal();
    return solve_gram(xw * X, xw * y);
}

UnitFit fit_unit_path(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                      const KernelSpec& spec) {
    const Eigen::Index t_count = y.size();
    if (X.rows() != t_count) throw data_error("fit_unit_path: dimension mismatch");
    const Eigen::Index q = X.cols() + 1;

    Eigen::MatrixXd design(t_count, q);
    design.col(0).setOnes();
    design.rightCols(X.cols()) = X;

    UnitFit fit;
    fit.beta.setConstant(t_count, q, std::numeric_limits<double>::quiet_NaN());
    fit.ok.assign(static_cast<std::size_t>(t_count), 0);
    for (Eigen::Index t = 0; t < t_count; ++t) {
        const Eigen::VectorXd w = weights_for_time(static_cast<int>(t_count),
                                                   static_cast<int>(t), spec);
        try {
            fit.beta.row(t) = solve_weighted_ls(design, y, w).transpose();
            fit.ok[static_cast<std::size_t>(t)] = 1;
        } catch (const estimation_error&) {
            // singular local system: leave the row flagged
        }
    }
    return fit;
}

}  // namespace tvmg

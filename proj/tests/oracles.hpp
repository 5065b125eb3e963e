// Test-only reference implementations, kept independent of the library's
// solver path: plain Gauss-Jordan on the explicitly formed normal equations.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

// Invert via Gauss-Jordan with partial pivoting. No Eigen decompositions on
// purpose: this must stay an independent route from the library solver.
inline Eigen::MatrixXd invert(Eigen::MatrixXd a) {
    const auto n = a.rows();
    Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (std::abs(a(pivot, col)) < 1e-300) {
            throw std::runtime_error("oracle: singular matrix");
        }
        a.row(col).swap(a.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const double d = a(col, col);
        a.row(col) /= d;
        inv.row(col) /= d;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            a.row(r) -= f * a.row(col);
            inv.row(r) -= f * inv.row(col);
        }
    }
    return inv;
}

// (X' W X)^{-1} X' W y with W = diag(w), assembled entry by entry.
inline Eigen::VectorXd weighted_ls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& w) {
    const auto n = x.rows();
    const auto q = x.cols();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(q, q);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index a = 0; a < q; ++a) {
            rhs[a] += w[j] * x(j, a) * y[j];
            for (Eigen::Index b = 0; b < q; ++b) {
                gram(a, b) += w[j] * x(j, a) * x(j, b);
            }
        }
    }
    return invert(gram) * rhs;
}

// Local kernel-weighted path re-derived from first principles (weight
// formula inlined rather than taken from the library).
inline Eigen::MatrixXd tv_path(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                               double bandwidth, bool gaussian = true) {
    const auto t_count = y.size();
    Eigen::MatrixXd design(t_count, x.cols() + 1);
    design.col(0).setOnes();
    design.rightCols(x.cols()) = x;
    Eigen::MatrixXd beta(t_count, design.cols());
    for (Eigen::Index t = 0; t < t_count; ++t) {
        Eigen::VectorXd w(t_count);
        for (Eigen::Index j = 0; j < t_count; ++j) {
            const double u = std::abs(static_cast<double>(j - t)) / bandwidth;
            w[j] = gaussian ? std::exp(-0.5 * u * u) : (u <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0);
        }
        beta.row(t) = weighted_ls(design, y, w).transpose();
    }
    return beta;
}

inline double max_rel_err(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < got.size(); ++i) {
        const double scale = std::max(1.0, std::abs(want[i]));
        worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
    }
    return worst;
}

}  // namespace oracle

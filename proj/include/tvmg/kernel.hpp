#pragma once

#include <Eigen/Core>
#include <string>

namespace tvmg {

enum class KernelKind { gaussian, epanechnikov, uniform };

KernelKind kernel_kind_from_string(const std::string& name);
std::string to_string(KernelKind kind);

/// Kernel used for time-distance weighting together with its bandwidth.
/// Weights are left unnormalized: the weighted least-squares solution is
/// invariant to a common positive rescaling.
struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double bandwidth = 1.0;

    KernelSpec() = default;
    KernelSpec(KernelKind k, double h);
};

/// K(u) for scaled distance u >= 0.
///   gaussian:      exp(-u^2/2)
///   epanechnikov:  (3/4)(1-u^2) for u <= 1, else 0
///   uniform:       1 for u <= 1, else 0
double kernel_eval(KernelKind kind, double u);

/// Bandwidth rule H = T^alpha.
double bandwidth_from_alpha(int n_times, double alpha);

/// Weight of every observation j = 0..T-1 when estimating at time index t
/// (0-based): w[j] = K(|j - t| / H).
Eigen::VectorXd weights_for_time(int n_times, int t, const KernelSpec& spec);

}  // namespace tvmg

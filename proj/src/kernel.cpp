#include "tvmg/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "tvmg/errors.hpp"

namespace tvmg {

KernelKind kernel_kind_from_string(const std::string& name) {
    if (name == "gaussian") return KernelKind::gaussian;
    if (name == "epanechnikov") return KernelKind::epanechnikov;
    if (name == "uniform") return KernelKind::uniform;
    throw data_error("unknown kernel kind: " + name);
}

std::string to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::gaussian: return "gaussian";
        case KernelKind::epanechnikov: return "epanechnikov";
        case KernelKind::uniform: return "uniform";
    }
    return "?";
}

KernelSpec::KernelSpec(KernelKind k, double h) : kind(k), bandwidth(h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw data_error("kernel bandwidth must be positive and finite");
    }
}

double kernel_eval(KernelKind kind, double u) {
    if (u < 0.0 || !std::isfinite(u)) {
        throw data_error("kernel_eval: distance must be nonnegative and finite");
    }
    switch (kind) {
        case KernelKind::gaussian:
            return std::exp(-0.5 * u * u);
        case KernelKind::epanechnikov:
            return u <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
        case KernelKind::uniform:
            return u <= 1.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

double bandwidth_from_alpha(int n_times, double alpha) {
    if (n_times < 2) throw data_error("bandwidth_from_alpha: need at least 2 time points");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw data_error("bandwidth_from_alpha: alpha must be in (0,1)");
    }
    return std::pow(static_cast<double>(n_times), alpha);
}

Eigen::VectorXd weights_for_time(int n_times, int t, const KernelSpec& spec) {
    if (t < 0 || t >= n_times) {
        throw data_error("weights_for_time: time index out of range");
    }
    Eigen::VectorXd w(n_times);
    for (int j = 0; j < n_times; ++j) {
        w[j] = kernel_eval(spec.kind, std::abs(j - t) / spec.bandwidth);
    }
    return w;
}

}  // namespace tvmg

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "tvmg/panel.hpp"

namespace tvmg {

/// Smooth deterministic path over normalized time tau in [0, 1]:
///   constant: a
///   linear:   a + (b - a) * tau
///   sine:     a + b * sin(2*pi*freq*tau)
struct PathSpec {
    enum class Kind { constant, linear, sine };
    Kind kind = Kind::constant;
    double a = 0.0;
    double b = 0.0;
    double freq = 1.0;

    double value(double tau) const;

    /// Parses "constant:0.5", "linear:0,1" or "sine:0.5,1.0,1.0".
    static PathSpec parse(const std::string& text);
    std::string describe() const;
};

/// Stationary AR(1): x_t = mean + rho*(x_{t-1} - mean) + innovations scaled
/// so the marginal standard deviation equals sd.
struct Ar1Spec {
    double rho = 0.0;
    double sd = 1.0;
    double mean = 0.0;
};

/// Random-coefficient panel generator: beta_it = beta0(t) + unit deviation,
/// with smooth per-unit deviation paths, AR(1) regressors and AR(1) noise.
struct PanelDgpSpec {
    int n_units = 0;
    int n_times = 0;
    std::vector<PathSpec> beta0;   // one per regressor
    PathSpec intercept;            // common intercept path, default 0
    double e_sd = 0.0;             // sd of the constant part of unit deviations
    double e_smooth = 0.0;         // scale of the slowly drifting deviation part
    double unit_effect_sd = 0.0;   // sd of time-constant unit level shifts
    std::vector<Ar1Spec> x_process;  // one per regressor
    struct {
        double rho = 0.0;
        double innovation_sd = 0.0;
    } u_process;
    std::uint64_t seed = 0;
    int first_time = 1;            // label of the first period
    int n_groups = 0;              // 0 = one group per unit

    void validate() const;
};

struct SimulatedPanel {
    Panel panel;
    Eigen::MatrixXd true_beta0;      // T x p mean coefficient paths
    Eigen::VectorXd true_intercept;  // T common intercept path
};

SimulatedPanel simulate_panel(const PanelDgpSpec& spec);

/// Single-firm simulator: activity and financial state paths are exogenous;
/// abatement investment solves a quadratic-cost first-order condition with a
/// fixed marginal continuation value, and emissions intensity follows a
/// linear decay law truncated at zero.
struct FirmFrameworkParams {
    double intensity_decay = 0.1;     // rho in (0,1)
    double abatement_effect = 1.0;    // chi > 0
    double adjustment_cost = 1.0;     // kappa > 0
    double wedge_base = 0.0;          // psi_0
    double wedge_leverage = 1.0;      // psi_d > 0
    double wedge_tightness = 1.0;     // psi_xi > 0
    double liquidity_gain = 1.0;      // mu > 0
    double discount = 0.95;           // delta in (0,1)
    double marginal_value = -1.0;     // fixed E[V_m], must be negative
    double m0 = 1.0;                  // initial emissions intensity

    // exogenous paths, each of length T
    std::vector<double> demand;      // A_t (recorded, not used by the FOC)
    std::vector<double> shadow_cost; // lambda_t (recorded, not used by the FOC)
    std::vector<double> liquidity;   // c_t
    std::vector<double> leverage;    // d_t
    std::vector<double> tightness;   // xi_t
    std::vector<double> green_share; // omega_t in [0, 1]
    std::vector<double> activity;    // q_t
    std::vector<double> intensity_shocks;  // optional, length T-1; empty = zeros

    void validate(int n_times) const;
};

struct FirmPath {
    std::vector<double> intensity;       // m_t
    std::vector<double> activity;        // q_t
    std::vector<double> green_invest;    // G_t
    std::vector<double> invest;          // I_t = G_t / omega_t (NaN when omega = 0)
    std::vector<double> emissions;       // m_t * q_t
    std::vector<double> dlog_emissions;  // length T-1, NaN when undefined
};

FirmPath simulate_firm(const FirmFrameworkParams& params, int n_times);

}  // namespace tvmg

#include "tvmg/dgp.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tvmg/errors.hpp"

namespace tvmg {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

double PathSpec::value(double tau) const {
    switch (kind) {
        case Kind::constant: return a;
        case Kind::linear: return a + (b - a) * tau;
        case Kind::sine: return a + b * std::sin(kTwoPi * freq * tau);
    }
    return 0.0;
}

PathSpec PathSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            try {
                args.push_back(std::stod(piece));
            } catch (const std::exception&) {
                throw data_error("bad path spec: '" + text + "'");
            }
        }
    }
    PathSpec spec;
    if (name == "constant" && args.size() == 1) {
        spec.kind = Kind::constant;
        spec.a = args[0];
    } else if (name == "linear" && args.size() == 2) {
        spec.kind = Kind::linear;
        spec.a = args[0];
        spec.b = args[1];
    } else if (name == "sine" && args.size() == 3) {
        spec.kind = Kind::sine;
        spec.a = args[0];
        spec.b = args[1];
        spec.freq = args[2];
    } else {
        throw data_error("bad path spec: '" + text +
                         "' (expected constant:a | linear:a,b | sine:mean,amp,freq)");
    }
    return spec;
}

std::string PathSpec::describe() const {
    std::stringstream ss;
    switch (kind) {
        case Kind::constant: ss << "constant:" << a; break;
        case Kind::linear: ss << "linear:" << a << "," << b; break;
        case Kind::sine: ss << "sine:" << a << "," << b << "," << freq; break;
    }
    return ss.str();
}

void PanelDgpSpec::validate() const {
    if (n_units < 1 || n_times < 3) {
        throw data_error("panel dgp: need n_units >= 1 and n_times >= 3");
    }
    if (beta0.empty()) throw data_error("panel dgp: need at least one coefficient path");
    if (x_process.size() != beta0.size()) {
        throw data_error("panel dgp: one AR(1) spec per regressor required");
    }
    for (const auto& ar : x_process) {
        if (!(ar.rho > -1.0 && ar.rho < 1.0)) throw data_error("panel dgp: AR coefficient in (-1,1)");
        if (ar.sd < 0.0) throw data_error("panel dgp: AR sd must be >= 0");
    }
    if (!(u_process.rho > -1.0 && u_process.rho < 1.0)) {
        throw data_error("panel dgp: AR coefficient in (-1,1)");
    }
    if (u_process.innovation_sd < 0.0 || e_sd < 0.0 || unit_effect_sd < 0.0) {
        throw data_error("panel dgp: standard deviations must be >= 0");
    }
    if (n_groups < 0 || n_groups > n_units) {
        throw data_error("panel dgp: n_groups must be in 0..n_units");
    }
}

SimulatedPanel simulate_panel(const PanelDgpSpec& spec) {
    spec.validate();
    const int n = spec.n_units;
    const int t_count = spec.n_times;
    const int p = static_cast<int>(spec.beta0.size());

    SimulatedPanel sim;
    sim.true_beta0.resize(t_count, p);
    sim.true_intercept.resize(t_count);
    for (int t = 0; t < t_count; ++t) {
        const double tau = static_cast<double>(t) / (t_count - 1);
        sim.true_intercept[t] = spec.intercept.value(tau);
        for (int k = 0; k < p; ++k) sim.true_beta0(t, k) = spec.beta0[static_cast<std::size_t>(k)].value(tau);
    }

    // Unit-level randomness comes off the master stream in unit order; each
    // unit then gets its own substream for the time-series draws, so results
    // do not depend on how the per-unit work is scheduled.
    std::mt19937_64 master(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    struct UnitParams {
        Eigen::VectorXd e_level;   // p
        Eigen::VectorXd e_amp;     // p
        Eigen::VectorXd e_phase;   // p
        double level_shift;
        std::uint64_t stream_seed;
    };
    std::vector<UnitParams> units(static_cast<std::size_t>(n));
    for (auto& u : units) {
        u.e_level.resize(p);
        u.e_amp.resize(p);
        u.e_phase.resize(p);
        for (int k = 0; k < p; ++k) {
            u.e_level[k] = spec.e_sd * gauss(master);
            u.e_amp[k] = spec.e_sd * gauss(master);
            u.e_phase[k] = unif(master);
        }
        u.level_shift = spec.unit_effect_sd * gauss(master);
        u.stream_seed = master();
    }

    Panel& panel = sim.panel;
    panel.time_labels.resize(static_cast<std::size_t>(t_count));
    for (int t = 0; t < t_count; ++t) panel.time_labels[static_cast<std::size_t>(t)] = spec.first_time + t;
    panel.var_names.resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) panel.var_names[static_cast<std::size_t>(k)] = "x" + std::to_string(k + 1);
    panel.y.resize(n, t_count);
    panel.x.assign(static_cast<std::size_t>(n), Eigen::MatrixXd(t_count, p));
    panel.unit_ids.resize(static_cast<std::size_t>(n));
    panel.unit_groups.resize(static_cast<std::size_t>(n));
    const int groups = spec.n_groups == 0 ? n : spec.n_groups;

    for (int i = 0; i < n; ++i) {
        const auto& u = units[static_cast<std::size_t>(i)];
        std::mt19937_64 rng(u.stream_seed);
        std::normal_distribution<double> noise(0.0, 1.0);

        panel.unit_ids[static_cast<std::size_t>(i)] = "u" + std::to_string(i + 1);
        panel.unit_groups[static_cast<std::size_t>(i)] = "g" + std::to_string(i % groups + 1);

        // regressors: stationary AR(1) per column
        for (int k = 0; k < p; ++k) {
            const auto& ar = spec.x_process[static_cast<std::size_t>(k)];
            double x = ar.mean + ar.sd * noise(rng);
            panel.x[i](0, k) = x;
            const double innov_sd = ar.sd * std::sqrt(1.0 - ar.rho * ar.rho);
            for (int t = 1; t < t_count; ++t) {
                x = ar.mean + ar.rho * (x - ar.mean) + innov_sd * noise(rng);
                panel.x[i](t, k) = x;
            }
        }

        // noise: AR(1) with given innovation sd, stationary start
        Eigen::VectorXd u_path(t_count);
        {
            const double rho = spec.u_process.rho;
            const double sd = spec.u_process.innovation_sd;
            double value = sd > 0.0 ? sd / std::sqrt(1.0 - rho * rho) * noise(rng) : 0.0;
            u_path[0] = value;
            for (int t = 1; t < t_count; ++t) {
                value = rho * value + sd * noise(rng);
                u_path[t] = value;
            }
        }

        for (int t = 0; t < t_count; ++t) {
            const double tau = static_cast<double>(t) / (t_count - 1);
            double y = sim.true_intercept[t] + u.level_shift + u_path[t];
            for (int k = 0; k < p; ++k) {
                const double dev = u.e_level[k] +
                                   spec.e_smooth * u.e_amp[k] *
                                       std::sin(kTwoPi * (tau + u.e_phase[k]));
                y += (sim.true_beta0(t, k) + dev) * panel.x[i](t, k);
            }
            panel.y(i, t) = y;
        }
    }
    panel.validate();
    return sim;
}

void FirmFrameworkParams::validate(int n_times) const {
    if (n_times < 2) throw data_error("firm simulator: need at least 2 periods");
    if (!(intensity_decay > 0.0 && intensity_decay < 1.0)) {
        throw data_error("firm simulator: intensity decay must be in (0,1)");
    }
    if (!(abatement_effect > 0.0) || !(adjustment_cost > 0.0) || !(liquidity_gain > 0.0)) {
        throw data_error("firm simulator: chi, kappa and mu must be positive");
    }
    if (!(wedge_leverage > 0.0) || !(wedge_tightness > 0.0)) {
        throw data_error("firm simulator: wedge slopes must be positive");
    }
    if (!(discount > 0.0 && discount < 1.0)) {
        throw data_error("firm simulator: discount factor must be in (0,1)");
    }
    if (!(marginal_value < 0.0)) {
        throw data_error("firm simulator: marginal continuation value must be negative");
    }
    if (m0 < 0.0) throw data_error("firm simulator: initial intensity must be >= 0");
    const std::size_t t_len = static_cast<std::size_t>(n_times);
    for (const auto* path : {&demand, &shadow_cost, &liquidity, &leverage, &tightness,
                             &green_share, &activity}) {
        if (path->size() != t_len) {
            throw data_error("firm simulator: every exogenous path must have length T");
        }
    }
    for (double w : green_share) {
        if (!(w >= 0.0 && w <= 1.0)) throw data_error("firm simulator: green share must be in [0,1]");
    }
    if (!intensity_shocks.empty() && intensity_shocks.size() != t_len - 1) {
        throw data_error("firm simulator: intensity shocks must have length T-1 (or be empty)");
    }
}

FirmPath simulate_firm(const FirmFrameworkParams& params, int n_times) {
    params.validate(n_times);
    const auto t_len = static_cast<std::size_t>(n_times);

    FirmPath path;
    path.intensity.resize(t_len);
    path.activity = params.activity;
    path.green_invest.resize(t_len);
    path.invest.resize(t_len);
    path.emissions.resize(t_len);
    path.dlog_emissions.assign(t_len - 1, kNaN);

    double m = params.m0;
    for (std::size_t t = 0; t < t_len; ++t) {
        path.intensity[t] = m;
        const double wedge = params.wedge_base + params.wedge_leverage * params.leverage[t] +
                             params.wedge_tightness * params.tightness[t];
        const double g = (params.liquidity_gain * params.liquidity[t] -
                          params.discount * params.abatement_effect * params.marginal_value) /
                         (params.adjustment_cost + wedge);
        path.green_invest[t] = std::max(0.0, g);
        path.invest[t] = params.green_share[t] > 0.0
                             ? path.green_invest[t] / params.green_share[t]
                             : kNaN;
        path.emissions[t] = m * params.activity[t];

        if (t + 1 < t_len) {
            const double shock = params.intensity_shocks.empty() ? 0.0
                                                                 : params.intensity_shocks[t];
            m = std::max(0.0, (1.0 - params.intensity_decay) * m -
                                  params.abatement_effect * path.green_invest[t] + shock);
        }
    }
    for (std::size_t t = 1; t < t_len; ++t) {
        if (path.emissions[t] > 0.0 && path.emissions[t - 1] > 0.0) {
            path.dlog_emissions[t - 1] =
                std::log(path.emissions[t]) - std::log(path.emissions[t - 1]);
        }
    }
    return path;
}

}  // namespace tvmg

// Batch front-end: ingestion, estimation, diagnostics and report emission.
// Every output CSV gets a JSON metadata sidecar; randomized subcommands
// require an explicit seed so identical invocations give identical files.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvmg/aggregate.hpp"
#include "tvmg/bandwidth.hpp"
#include "tvmg/csv.hpp"
#include "tvmg/dgp.hpp"
#include "tvmg/errors.hpp"
#include "tvmg/factors.hpp"
#include "tvmg/kernel.hpp"
#include "tvmg/mathutil.hpp"
#include "tvmg/mean_group.hpp"
#include "tvmg/panel.hpp"
#include "tvmg/robustness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string csv_num(double x) { return std::isfinite(x) ? tvmg::fmt_num(x) : ""; }

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tvmg::data_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(tvmg::fnv1a64(ss.str())));
    return buf;
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

// One run's provenance, attached next to each CSV as <name>.meta.json.
struct Metadata {
    std::string command;
    json extra = json::object();
    std::map<std::string, std::string> input_digests;

    json to_json() const {
        json j;
        j["tool"] = "tvmg";
        j["version"] = kVersion;
        j["command"] = command;
        j["generated_at"] = timestamp_utc();
        j["inputs"] = input_digests;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        return j;
    }
};

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tvmg::data_error("cannot write file: " + path.string());
    out << content;
}

void write_csv(const fs::path& dir, const std::string& name, const std::string& content,
               const Metadata& meta) {
    write_file(dir / name, content);
    write_file(dir / (name + ".meta.json"), meta.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// shared option blocks

struct PanelArgs {
    std::string input;
    std::string outcome;
    std::vector<std::string> regressors;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", input, "long-format panel CSV (unit,group,time,...)")
            ->required();
        cmd->add_option("--outcome", outcome, "outcome column name")->required();
        cmd->add_option("--regressors", regressors, "regressor column names")
            ->required()
            ->delimiter(',');
    }

    tvmg::BuildReport load(Metadata& meta) const {
        meta.input_digests[input] = file_digest(input);
        const auto records = tvmg::read_long_csv(input);
        auto report = tvmg::build_panel(records, outcome, regressors);
        meta.extra["outcome"] = outcome;
        meta.extra["regressors"] = regressors;
        meta.extra["units_retained"] = report.n_retained;
        meta.extra["units_dropped"] = report.n_dropped;
        return report;
    }
};

struct BandwidthArgs {
    std::string kernel = "gaussian";
    double alpha = -1.0;
    double bandwidth = -1.0;
    bool use_cv = false;

    void attach(CLI::App* cmd, bool allow_cv = true) {
        cmd->add_option("--kernel", kernel, "gaussian | epanechnikov | uniform")
            ->default_val("gaussian");
        auto* a = cmd->add_option("--alpha", alpha, "bandwidth exponent: H = T^alpha")
                      ->check(CLI::Range(0.0, 1.0).description("(0,1)"));
        auto* h = cmd->add_option("--bandwidth", bandwidth, "fixed bandwidth H")
                      ->check(CLI::PositiveNumber);
        a->excludes(h);
        if (allow_cv) {
            auto* cv = cmd->add_flag("--cv", use_cv,
                                     "select H by leave-one-unit-out cross-validation");
            cv->excludes(a);
            cv->excludes(h);
        }
    }

    // panel_for_cv may be null when --cv is not offered
    tvmg::KernelSpec resolve(int n_times, const tvmg::Panel* panel_for_cv,
                             Metadata& meta) const {
        const tvmg::KernelKind kind = tvmg::kernel_kind_from_string(kernel);
        meta.extra["kernel"] = kernel;
        double h;
        if (use_cv) {
            if (panel_for_cv == nullptr) {
                throw tvmg::data_error("--cv is not available for this subcommand");
            }
            const auto cv = tvmg::loo_cv_bandwidth(*panel_for_cv, tvmg::default_alpha_grid(), kind);
            h = cv.best_h;
            meta.extra["bandwidth_mode"] = "cv";
            meta.extra["alpha"] = cv.best_alpha;
        } else if (bandwidth > 0.0) {
            h = bandwidth;
            meta.extra["bandwidth_mode"] = "fixed-H";
        } else {
            const double a = alpha > 0.0 ? alpha : 0.5;  // rule-of-thumb default
            h = tvmg::bandwidth_from_alpha(n_times, a);
            meta.extra["bandwidth_mode"] = "fixed-alpha";
            meta.extra["alpha"] = a;
        }
        meta.extra["bandwidth"] = h;
        return tvmg::KernelSpec(kind, h);
    }
};

// ---------------------------------------------------------------------------
// subcommand bodies

std::string coefficients_csv(const tvmg::CoefficientPath& path) {
    std::ostringstream out;
    out << "time,var,beta,se,ci_lo,ci_hi,n_eff\n";
    for (int t = 0; t < path.n_times(); ++t) {
        for (int k = 0; k < path.n_coefs(); ++k) {
            out << path.time_labels[t] << ',' << path.var_names[k] << ','
                << csv_num(path.beta(t, k)) << ',' << csv_num(path.se(t, k)) << ','
                << csv_num(path.ci_lo(t, k)) << ',' << csv_num(path.ci_hi(t, k)) << ','
                << path.n_eff[t] << '\n';
        }
    }
    return out.str();
}

json coefficients_json(const tvmg::CoefficientPath& path) {
    json rows = json::array();
    auto cell = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    for (int t = 0; t < path.n_times(); ++t) {
        for (int k = 0; k < path.n_coefs(); ++k) {
            rows.push_back({{"time", path.time_labels[t]},
                            {"var", path.var_names[k]},
                            {"beta", cell(path.beta(t, k))},
                            {"se", cell(path.se(t, k))},
                            {"ci_lo", cell(path.ci_lo(t, k))},
                            {"ci_hi", cell(path.ci_hi(t, k))},
                            {"n_eff", path.n_eff[t]}});
        }
    }
    return {{"level", path.level}, {"rows", rows}};
}

std::string significance_csv(const tvmg::SignificanceReport& report) {
    std::ostringstream out;
    out << "var,start,end,length,direction\n";
    for (std::size_t k = 0; k < report.var_names.size(); ++k) {
        for (const auto& iv : report.intervals[k]) {
            out << report.var_names[k] << ',' << report.time_labels[iv.start] << ','
                << report.time_labels[iv.end] << ',' << iv.length() << ','
                << (iv.direction > 0 ? "positive" : "negative") << '\n';
        }
    }
    return out.str();
}

void run_tvmg(const PanelArgs& panel_args, const BandwidthArgs& bw, double level,
              int min_duration, const fs::path& out_dir) {
    Metadata meta;
    meta.command = "tvmg";
    meta.extra["level"] = level;
    const auto report = panel_args.load(meta);
    const auto spec = bw.resolve(report.panel.n_times(), &report.panel, meta);
    const auto path = tvmg::tvmg_estimate(report.panel, spec, level);
    auto significance = tvmg::significance_periods(path);
    if (min_duration > 1) significance = tvmg::duration_filter(significance, min_duration);
    meta.extra["min_duration"] = min_duration;

    write_csv(out_dir, "coefficients.csv", coefficients_csv(path), meta);
    write_file(out_dir / "coefficients.json", coefficients_json(path).dump(2) + "\n");
    write_csv(out_dir, "significance.csv", significance_csv(significance), meta);
}

void run_static_ols(const PanelArgs& panel_args, const fs::path& out_dir) {
    Metadata meta;
    meta.command = "static-ols";
    const auto report = panel_args.load(meta);
    const auto results = tvmg::static_mg_ols(report.panel);
    std::ostringstream out;
    out << "var,coef,t_value,n_units,n_excluded\n";
    for (const auto& r : results) {
        out << r.var << ',' << csv_num(r.coef) << ',' << csv_num(r.t_value) << ','
            << r.n_units << ',' << r.n_excluded << '\n';
    }
    write_csv(out_dir, "static_ols.csv", out.str(), meta);
}

void run_cv_bandwidth(const PanelArgs& panel_args, const std::string& kernel,
                      std::vector<double> grid, const fs::path& out_dir) {
    Metadata meta;
    meta.command = "cv-bandwidth";
    const auto report = panel_args.load(meta);
    if (grid.empty()) grid = tvmg::default_alpha_grid();
    const auto kind = tvmg::kernel_kind_from_string(kernel);
    const auto cv = tvmg::loo_cv_bandwidth(report.panel, grid, kind);
    meta.extra["kernel"] = kernel;
    meta.extra["alpha"] = cv.best_alpha;
    meta.extra["bandwidth"] = cv.best_h;

    std::ostringstream out;
    out << "alpha,H,score,best\n";
    for (std::size_t i = 0; i < cv.grid.size(); ++i) {
        const double h = tvmg::bandwidth_from_alpha(report.panel.n_times(), cv.grid[i]);
        out << tvmg::fmt_num(cv.grid[i]) << ',' << tvmg::fmt_num(h) << ','
            << (std::isfinite(cv.scores[i]) ? tvmg::fmt_num(cv.scores[i]) : "inf") << ','
            << (cv.grid[i] == cv.best_alpha ? 1 : 0) << '\n';
    }
    write_csv(out_dir, "cv_bandwidth.csv", out.str(), meta);
}

void run_lofo(const PanelArgs& panel_args, const BandwidthArgs& bw, double level,
              const fs::path& out_dir) {
    Metadata meta;
    meta.command = "lofo";
    meta.extra["level"] = level;
    const auto report = panel_args.load(meta);
    const auto spec = bw.resolve(report.panel.n_times(), &report.panel, meta);
    const auto path = tvmg::tvmg_estimate(report.panel, spec, level);
    const auto lofo_report = tvmg::lofo(report.panel, path, spec);
    meta.extra["slope_var"] = path.var_names[lofo_report.slope_col];
    meta.extra["groups"] = lofo_report.group_ids.size();

    std::ostringstream out;
    out << "time,mdr,sfr\n";
    for (std::size_t t = 0; t < lofo_report.mdr.size(); ++t) {
        out << lofo_report.time_labels[t] << ',' << csv_num(lofo_report.mdr[t]) << ','
            << csv_num(lofo_report.sfr[t]) << '\n';
    }
    write_csv(out_dir, "lofo.csv", out.str(), meta);
}

void run_shift_test(const PanelArgs& panel_args, int break_year, double level,
                    const fs::path& out_dir) {
    Metadata meta;
    meta.command = "shift-test";
    meta.extra["break_year"] = break_year;
    meta.extra["level"] = level;
    const auto report = panel_args.load(meta);
    const auto results = tvmg::shift_test(report.panel, break_year, level);

    std::ostringstream out;
    out << "var,pre,post,delta,se,ci_lo,ci_hi,p,n_used\n";
    for (const auto& r : results) {
        out << r.var << ',' << csv_num(r.pre) << ',' << csv_num(r.post) << ','
            << csv_num(r.delta) << ',' << csv_num(r.se) << ',' << csv_num(r.ci_lo) << ','
            << csv_num(r.ci_hi) << ',' << csv_num(r.p_value) << ',' << r.n_used << '\n';
    }
    write_csv(out_dir, "shift_test.csv", out.str(), meta);
}

void run_aggregate_tv(const std::string& input, const std::string& outcome,
                      const std::vector<std::string>& regressors, const BandwidthArgs& bw,
                      const std::string& bands, double level, int n_reps, double block_scale,
                      std::optional<std::uint64_t> seed, const fs::path& out_dir) {
    Metadata meta;
    meta.command = "aggregate-tv";
    meta.extra["level"] = level;
    meta.input_digests[input] = file_digest(input);

    const auto table = tvmg::read_wide_csv(input);
    auto col_index = [&](const std::string& name) {
        for (std::size_t j = 0; j < table.series_names.size(); ++j) {
            if (table.series_names[j] == name) return static_cast<Eigen::Index>(j);
        }
        throw tvmg::data_error(input + ": no column named '" + name + "'");
    };
    const Eigen::Index t_count = table.values.rows();
    Eigen::VectorXd y = table.values.col(col_index(outcome));
    Eigen::MatrixXd x(t_count, static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        x.col(static_cast<Eigen::Index>(j)) = table.values.col(col_index(regressors[j]));
    }
    if (!y.allFinite() || !x.allFinite()) {
        throw tvmg::data_error("aggregate-tv: series contain missing values");
    }

    const auto spec = bw.resolve(static_cast<int>(t_count), nullptr, meta);

    const auto fit = tvmg::tv_ols_series(y, x, spec);
    std::vector<std::string> coef_names{"intercept"};
    coef_names.insert(coef_names.end(), regressors.begin(), regressors.end());

    const bool want_mbb = bands == "mbb" || bands == "both";
    const bool want_normal = bands == "normal" || bands == "both";
    if (!want_mbb && !want_normal) {
        throw tvmg::data_error("aggregate-tv: --bands must be mbb, normal or both");
    }
    if (want_mbb && !seed.has_value()) {
        throw tvmg::data_error("aggregate-tv: --seed is required for the bootstrap");
    }

    std::ostringstream out;
    out << "time,coef,beta,lo,hi,method,B,block_len,seed\n";
    auto emit = [&](const Eigen::MatrixXd& lo, const Eigen::MatrixXd& hi,
                    const std::string& method, int b, int block_len,
                    const std::string& seed_text) {
        for (Eigen::Index t = 0; t < t_count; ++t) {
            for (std::size_t k = 0; k < coef_names.size(); ++k) {
                const auto kk = static_cast<Eigen::Index>(k);
                out << tvmg::year_of_label(table.row_labels[static_cast<std::size_t>(t)]) << ','
                    << coef_names[k] << ',' << csv_num(fit.beta(t, kk)) << ','
                    << csv_num(lo(t, kk)) << ',' << csv_num(hi(t, kk)) << ',' << method << ','
                    << b << ',' << block_len << ',' << seed_text << '\n';
            }
        }
    };
    if (want_mbb) {
        const auto mbb = tvmg::mbb_bands(y, x, spec, block_scale, n_reps, level, *seed);
        meta.extra["B"] = n_reps;
        meta.extra["block_len"] = mbb.block_len;
        meta.extra["block_scale"] = block_scale;
        meta.extra["seed"] = *seed;
        meta.extra["rng"] = "mt19937_64";
        meta.extra["failed_cells"] = mbb.n_failed_cells;
        emit(mbb.lo, mbb.hi, "mbb", n_reps, mbb.block_len, std::to_string(*seed));
    }
    if (want_normal) {
        const auto nb = tvmg::normal_bands(y, x, spec, fit, level);
        emit(nb.lo, nb.hi, "normal", 0, 0, "");
    }
    write_csv(out_dir, "aggregate_bands.csv", out.str(), meta);
}

// transform + annualize pipeline shared by `transform` and `pca`
struct AnnualPanel {
    std::vector<int> years;
    std::vector<std::string> series;
    Eigen::MatrixXd values;
    std::vector<std::pair<std::string, std::string>> dropped;  // series, reason
};

AnnualPanel transform_and_annualize(const tvmg::WideTable& table,
                                    const std::map<std::string, int>& tcodes) {
    AnnualPanel out;
    std::vector<int> years_per_row;
    years_per_row.reserve(table.row_labels.size());
    for (const auto& label : table.row_labels) {
        years_per_row.push_back(tvmg::year_of_label(label));
    }

    struct Candidate {
        std::string name;
        std::map<int, double> by_year;
    };
    std::vector<Candidate> kept;
    for (std::size_t j = 0; j < table.series_names.size(); ++j) {
        const auto& name = table.series_names[j];
        const auto code_it = tcodes.find(name);
        if (code_it == tcodes.end()) {
            out.dropped.emplace_back(name, "no tcode");
            continue;
        }
        std::vector<double> raw(table.values.rows());
        for (Eigen::Index t = 0; t < table.values.rows(); ++t) {
            raw[static_cast<std::size_t>(t)] = table.values(t, static_cast<Eigen::Index>(j));
        }
        std::vector<double> transformed;
        try {
            transformed = tvmg::apply_tcode(raw, tvmg::TCode(code_it->second));
        } catch (const tvmg::data_error& e) {
            out.dropped.emplace_back(name, e.what());
            continue;
        }
        // transformed series aligns with the tail of the label vector
        const std::size_t offset = raw.size() - transformed.size();
        std::map<int, std::pair<double, int>> acc;
        for (std::size_t t = 0; t < transformed.size(); ++t) {
            auto& [sum, cnt] = acc[years_per_row[t + offset]];
            sum += transformed[t];
            ++cnt;
        }
        Candidate cand{name, {}};
        bool missing = false;
        for (const auto& [year, sc] : acc) {
            if (sc.second != 4) continue;  // partial year at the differenced edge
            const double mean = sc.first / 4.0;
            if (!std::isfinite(mean)) {
                missing = true;
                break;
            }
            cand.by_year[year] = mean;
        }
        if (missing) {
            out.dropped.emplace_back(name, "missing values after transformation");
        } else if (cand.by_year.empty()) {
            out.dropped.emplace_back(name, "no complete year after transformation");
        } else {
            kept.push_back(std::move(cand));
        }
    }
    if (kept.empty()) throw tvmg::data_error("no series survived transformation");

    // common years = intersection over retained series
    std::map<int, int> year_votes;
    for (const auto& cand : kept) {
        for (const auto& [year, _] : cand.by_year) ++year_votes[year];
    }
    for (const auto& [year, votes] : year_votes) {
        if (votes == static_cast<int>(kept.size())) out.years.push_back(year);
    }
    if (out.years.empty()) throw tvmg::data_error("retained series share no common year");

    out.values.resize(static_cast<Eigen::Index>(out.years.size()),
                      static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        out.series.push_back(kept[j].name);
        for (std::size_t t = 0; t < out.years.size(); ++t) {
            out.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) =
                kept[j].by_year.at(out.years[t]);
        }
    }
    return out;
}

AnnualPanel load_annual_panel(const std::string& input, const std::string& tcode_path,
                              Metadata& meta) {
    meta.input_digests[input] = file_digest(input);
    meta.input_digests[tcode_path] = file_digest(tcode_path);
    const auto table = tvmg::read_wide_csv(input);
    const auto tcodes = tvmg::read_tcode_csv(tcode_path);
    auto annual = transform_and_annualize(table, tcodes);
    meta.extra["pipeline_order"] = "tcode,annualize,standardize";
    meta.extra["series_retained"] = annual.series.size();
    meta.extra["series_dropped"] = annual.dropped.size();
    json dropped = json::array();
    for (const auto& [name, reason] : annual.dropped) {
        dropped.push_back({{"series", name}, {"reason", reason}});
    }
    meta.extra["dropped"] = dropped;
    meta.extra["year_start"] = annual.years.front();
    meta.extra["year_end"] = annual.years.back();
    return annual;
}

void run_transform(const std::string& input, const std::string& tcode_path,
                   const fs::path& out_dir) {
    Metadata meta;
    meta.command = "transform";
    const auto annual = load_annual_panel(input, tcode_path, meta);
    std::ostringstream out;
    out << "year";
    for (const auto& name : annual.series) out << ',' << name;
    out << '\n';
    for (std::size_t t = 0; t < annual.years.size(); ++t) {
        out << annual.years[t];
        for (Eigen::Index j = 0; j < annual.values.cols(); ++j) {
            out << ',' << csv_num(annual.values(static_cast<Eigen::Index>(t), j));
        }
        out << '\n';
    }
    write_csv(out_dir, "transformed.csv", out.str(), meta);
}

void run_pca(const std::string& input, const std::string& tcode_path, int k,
             const fs::path& out_dir) {
    Metadata meta;
    meta.command = "pca";
    meta.extra["k"] = k;
    const auto annual = load_annual_panel(input, tcode_path, meta);
    const auto fs_set = tvmg::extract_pcs(annual.values, k);

    std::ostringstream scores;
    scores << "time";
    for (int j = 1; j <= k; ++j) scores << ",pc" << j;
    scores << '\n';
    for (std::size_t t = 0; t < annual.years.size(); ++t) {
        scores << annual.years[t];
        for (int j = 0; j < k; ++j) {
            scores << ',' << tvmg::fmt_num(fs_set.scores(static_cast<Eigen::Index>(t), j));
        }
        scores << '\n';
    }
    write_csv(out_dir, "pc_scores.csv", scores.str(), meta);

    std::ostringstream loadings;
    loadings << "series";
    for (int j = 1; j <= k; ++j) loadings << ",pc" << j;
    loadings << '\n';
    for (std::size_t s = 0; s < annual.series.size(); ++s) {
        loadings << annual.series[s];
        for (int j = 0; j < k; ++j) {
            loadings << ',' << tvmg::fmt_num(fs_set.loadings(static_cast<Eigen::Index>(s), j));
        }
        loadings << '\n';
    }
    write_csv(out_dir, "pc_loadings.csv", loadings.str(), meta);

    std::ostringstream explained;
    explained << "component,share\n";
    for (int j = 0; j < k; ++j) {
        explained << "pc" << (j + 1) << ',' << tvmg::fmt_num(fs_set.explained[j]) << '\n';
    }
    write_csv(out_dir, "pc_explained.csv", explained.str(), meta);
}

// key = value configuration for the simulator; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tvmg::data_error("cannot open config: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (!blank) {
                throw tvmg::data_error(path + ": line " + std::to_string(line_no) +
                                       " is not 'key = value'");
            }
            continue;
        }
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

tvmg::PanelDgpSpec parse_dgp_config(const std::map<std::string, std::string>& kv) {
    tvmg::PanelDgpSpec spec;
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    auto get_num = [&](const std::string& key, double fallback) {
        const auto v = get(key);
        if (!v) return fallback;
        try {
            return std::stod(*v);
        } catch (const std::exception&) {
            throw tvmg::data_error("config: bad number for " + key + ": '" + *v + "'");
        }
    };
    spec.n_units = static_cast<int>(get_num("n_units", 0));
    spec.n_times = static_cast<int>(get_num("n_times", 0));
    spec.first_time = static_cast<int>(get_num("first_time", 1));
    spec.n_groups = static_cast<int>(get_num("n_groups", 0));
    spec.e_sd = get_num("e_sd", 0.0);
    spec.e_smooth = get_num("e_smooth", 0.0);
    spec.unit_effect_sd = get_num("unit_effect_sd", 0.0);
    spec.u_process.rho = get_num("u_rho", 0.0);
    spec.u_process.innovation_sd = get_num("u_sd", 0.0);
    spec.seed = static_cast<std::uint64_t>(get_num("seed", 0.0));
    if (const auto v = get("intercept")) spec.intercept = tvmg::PathSpec::parse(*v);

    for (int k = 1;; ++k) {
        const auto beta = get("beta." + std::to_string(k));
        if (!beta) break;
        spec.beta0.push_back(tvmg::PathSpec::parse(*beta));
        tvmg::Ar1Spec ar;
        if (const auto x = get("x." + std::to_string(k))) {
            std::stringstream ss(*x);
            std::string piece;
            std::vector<double> nums;
            while (std::getline(ss, piece, ',')) {
                try {
                    nums.push_back(std::stod(piece));
                } catch (const std::exception&) {
                    throw tvmg::data_error("config: bad AR spec x." + std::to_string(k));
                }
            }
            if (nums.size() != 3) {
                throw tvmg::data_error("config: x." + std::to_string(k) +
                                       " must be 'rho,sd,mean'");
            }
            ar = {nums[0], nums[1], nums[2]};
        }
        spec.x_process.push_back(ar);
    }
    return spec;
}

void run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                  const fs::path& out_dir) {
    Metadata meta;
    meta.command = "simulate";
    meta.input_digests[config_path] = file_digest(config_path);
    auto spec = parse_dgp_config(read_config(config_path));
    if (seed.has_value()) spec.seed = *seed;
    if (spec.seed == 0 && !seed.has_value()) {
        throw tvmg::data_error("simulate: a seed is required (config 'seed' or --seed)");
    }
    meta.extra["seed"] = spec.seed;
    meta.extra["rng"] = "mt19937_64";
    meta.extra["n_units"] = spec.n_units;
    meta.extra["n_times"] = spec.n_times;

    const auto sim = tvmg::simulate_panel(spec);
    std::ostringstream out;
    out << "unit,group,time,y";
    for (const auto& name : sim.panel.var_names) out << ',' << name;
    out << '\n';
    for (int i = 0; i < sim.panel.n_units(); ++i) {
        for (int t = 0; t < sim.panel.n_times(); ++t) {
            out << sim.panel.unit_ids[i] << ',' << sim.panel.unit_groups[i] << ','
                << sim.panel.time_labels[t] << ',' << tvmg::fmt_num(sim.panel.y(i, t));
            for (int k = 0; k < sim.panel.n_vars(); ++k) {
                out << ',' << tvmg::fmt_num(sim.panel.x[i](t, k));
            }
            out << '\n';
        }
    }
    write_csv(out_dir, "panel.csv", out.str(), meta);

    std::ostringstream truth;
    truth << "time,intercept";
    for (const auto& name : sim.panel.var_names) truth << ',' << name;
    truth << '\n';
    for (int t = 0; t < sim.panel.n_times(); ++t) {
        truth << sim.panel.time_labels[t] << ',' << tvmg::fmt_num(sim.true_intercept[t]);
        for (int k = 0; k < sim.panel.n_vars(); ++k) {
            truth << ',' << tvmg::fmt_num(sim.true_beta0(t, k));
        }
        truth << '\n';
    }
    write_csv(out_dir, "true_coefficients.csv", truth.str(), meta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-varying mean-group panel toolkit"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    PanelArgs tvmg_panel, static_panel, cv_panel, lofo_panel, shift_panel;
    BandwidthArgs tvmg_bw, lofo_bw, agg_bw;
    double tvmg_level = 0.90, lofo_level = 0.90, shift_level = 0.90, agg_level = 0.90;
    int min_duration = 1;

    auto* cmd_tvmg = app.add_subcommand("tvmg", "panel coefficient paths + significance report");
    tvmg_panel.attach(cmd_tvmg);
    tvmg_bw.attach(cmd_tvmg);
    cmd_tvmg->add_option("--level", tvmg_level, "confidence level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_tvmg->add_option("--min-duration", min_duration,
                         "drop significant runs shorter than this many periods")
        ->capture_default_str();

    auto* cmd_static = app.add_subcommand("static-ols", "static mean-group OLS benchmark");
    static_panel.attach(cmd_static);

    std::string cv_kernel = "gaussian";
    std::vector<double> cv_grid;
    auto* cmd_cv = app.add_subcommand("cv-bandwidth", "leave-one-unit-out bandwidth selection");
    cv_panel.attach(cmd_cv);
    cmd_cv->add_option("--kernel", cv_kernel)->default_val("gaussian");
    cmd_cv->add_option("--grid", cv_grid, "alpha grid (default 0.3..0.85 step 0.05)")
        ->delimiter(',');

    auto* cmd_lofo = app.add_subcommand("lofo", "leave-one-group-out influence diagnostics");
    lofo_panel.attach(cmd_lofo);
    lofo_bw.attach(cmd_lofo);
    cmd_lofo->add_option("--level", lofo_level)->capture_default_str();

    int break_year = 0;
    auto* cmd_shift = app.add_subcommand("shift-test", "before/after coefficient-shift test");
    shift_panel.attach(cmd_shift);
    cmd_shift->add_option("--break-year", break_year, "first year of the post period")
        ->required();
    cmd_shift->add_option("--level", shift_level)->capture_default_str();

    std::string agg_input, agg_outcome, agg_bands = "mbb";
    std::vector<std::string> agg_regressors;
    int agg_reps = 500;
    double block_scale = 1.0;
    std::optional<std::uint64_t> agg_seed;
    auto* cmd_agg = app.add_subcommand("aggregate-tv",
                                       "single-series time-varying regression with bands");
    cmd_agg->add_option("--input", agg_input, "wide CSV: time column + named series")->required();
    cmd_agg->add_option("--outcome", agg_outcome)->required();
    cmd_agg->add_option("--regressors", agg_regressors)->required()->delimiter(',');
    agg_bw.attach(cmd_agg, /*allow_cv=*/false);
    cmd_agg->add_option("--bands", agg_bands, "mbb | normal | both")->capture_default_str();
    cmd_agg->add_option("--level", agg_level)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd_agg->add_option("--B", agg_reps, "bootstrap replications")->capture_default_str();
    cmd_agg->add_option("--block-scale", block_scale, "c in block length floor(c*T^(1/3))")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_agg->add_option("--seed", agg_seed, "bootstrap seed (required for mbb)");

    std::string pca_input, pca_tcodes;
    int pca_k = 1;
    auto* cmd_pca = app.add_subcommand("pca", "tcode + annualize + principal components");
    cmd_pca->add_option("--input", pca_input, "wide quarterly CSV")->required();
    cmd_pca->add_option("--tcodes", pca_tcodes, "series,tcode CSV")->required();
    cmd_pca->add_option("-k,--components", pca_k, "number of components")->capture_default_str();

    std::string tr_input, tr_tcodes;
    auto* cmd_tr = app.add_subcommand("transform", "tcode + annualize, emit annual wide CSV");
    cmd_tr->add_option("--input", tr_input, "wide quarterly CSV")->required();
    cmd_tr->add_option("--tcodes", tr_tcodes, "series,tcode CSV")->required();

    std::string sim_config;
    std::optional<std::uint64_t> sim_seed;
    auto* cmd_sim = app.add_subcommand("simulate", "synthetic panel generator");
    cmd_sim->add_option("--config", sim_config, "key = value spec file")->required();
    cmd_sim->add_option("--seed", sim_seed, "overrides the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const fs::path out(out_dir);
        if (cmd_tvmg->parsed()) {
            run_tvmg(tvmg_panel, tvmg_bw, tvmg_level, min_duration, out);
        } else if (cmd_static->parsed()) {
            run_static_ols(static_panel, out);
        } else if (cmd_cv->parsed()) {
            run_cv_bandwidth(cv_panel, cv_kernel, cv_grid, out);
        } else if (cmd_lofo->parsed()) {
            run_lofo(lofo_panel, lofo_bw, lofo_level, out);
        } else if (cmd_shift->parsed()) {
            run_shift_test(shift_panel, break_year, shift_level, out);
        } else if (cmd_agg->parsed()) {
            run_aggregate_tv(agg_input, agg_outcome, agg_regressors, agg_bw, agg_bands,
                             agg_level, agg_reps, block_scale, agg_seed, out);
        } else if (cmd_pca->parsed()) {
            run_pca(pca_input, pca_tcodes, pca_k, out);
        } else if (cmd_tr->parsed()) {
            run_transform(tr_input, tr_tcodes, out);
        } else if (cmd_sim->parsed()) {
            run_simulate(sim_config, sim_seed, out);
        }
    } catch (const tvmg::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const tvmg::estimation_error& e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

// End-to-end checks of the command-line tool. Invoked by ctest with the
// binary path as argv[1]; runs each subcommand against generated fixtures in
// a scratch directory and inspects exit codes and emitted files.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "[ok] " << what << '\n';
    } else {
        std::cout << "[FAIL] " << what << '\n';
        ++failures;
    }
}

std::string g_binary;
fs::path g_dir;

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >" + (g_dir / "stdout.txt").string() +
                            " 2>" + (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

void write_fixture_config(const fs::path& path) {
    std::ofstream out(path);
    out << "# synthetic panel for the pipeline smoke tests\n"
           "n_units = 24\n"
           "n_times = 31\n"
           "first_time = 1993\n"
           "n_groups = 6\n"
           "e_sd = 0.15\n"
           "unit_effect_sd = 0.3\n"
           "u_rho = 0.2\n"
           "u_sd = 0.25\n"
           "seed = 7\n"
           "intercept = constant:0.1\n"
           "beta.1 = sine:0.4,0.8,1.0\n"
           "x.1 = 0.4,1.0,0.0\n";
}

void write_quarterly_fixture(const fs::path& data, const fs::path& codes) {
    std::ofstream out(data);
    out << "quarter,level_series,growth_series,trend_series\n";
    double base = 100.0;
    for (int year = 1990; year < 2002; ++year) {
        for (int q = 1; q <= 4; ++q) {
            const double t = (year - 1990) * 4 + q;
            base *= 1.005 + 0.002 * ((q % 2 == 0) ? 1 : -1);
            out << year << 'Q' << q << ',' << 5.0 + 0.1 * t + 0.3 * ((q * 7) % 5) << ','
                << base << ',' << t * t * 0.01 << '\n';
        }
    }
    std::ofstream tc(codes);
    tc << "series,tcode\nlevel_series,1\ngrowth_series,5\ntrend_series,2\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <tvmg-binary>\n";
        return 2;
    }
    g_binary = argv[1];
    g_dir = fs::temp_directory_path() / "tvmg_cli_tests";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    const fs::path config = g_dir / "dgp.conf";
    write_fixture_config(config);
    const fs::path sim_out = g_dir / "sim";

    // --- simulate, then estimate on the emitted panel (pipeline smoke)
    check(run("--out " + sim_out.string() + " simulate --config " + config.string()) == 0,
          "simulate exits 0");
    check(fs::exists(sim_out / "panel.csv"), "simulate writes panel.csv");
    check(fs::exists(sim_out / "panel.csv.meta.json"), "simulate writes a metadata sidecar");
    check(fs::exists(sim_out / "true_coefficients.csv"), "simulate writes the true paths");

    const std::string panel_csv = (sim_out / "panel.csv").string();
    const fs::path est_out = g_dir / "est";
    check(run("--out " + est_out.string() + " tvmg --input " + panel_csv +
              " --outcome y --regressors x1 --alpha 0.5") == 0,
          "tvmg exits 0");
    check(fs::exists(est_out / "coefficients.csv"), "tvmg writes coefficients.csv");
    check(fs::exists(est_out / "coefficients.json"), "tvmg writes the JSON mirror");
    check(fs::exists(est_out / "significance.csv"), "tvmg writes the significance report");
    {
        const std::string meta = slurp(est_out / "coefficients.csv.meta.json");
        check(meta.find("5.5677643628300215") != std::string::npos,
              "metadata records H = 31^0.5");
        const std::string coef = slurp(est_out / "coefficients.csv");
        check(count_lines(coef) == 1 + 31 * 2, "coefficients.csv has (time x var) rows");
        const std::string sig = slurp(est_out / "significance.csv");
        check(sig.rfind("var,start,end,length,direction", 0) == 0,
              "significance.csv header");
    }

    // --- seed override: same config, different --seed, different panel
    const fs::path sim_out2 = g_dir / "sim2";
    check(run("--out " + sim_out2.string() + " simulate --config " + config.string() +
              " --seed 8") == 0,
          "simulate accepts a --seed override");
    check(slurp(sim_out2 / "panel.csv") != slurp(sim_out / "panel.csv"),
          "different seeds give different panels");
    const fs::path sim_out3 = g_dir / "sim3";
    run("--out " + sim_out3.string() + " simulate --config " + config.string() + " --seed 8");
    check(slurp(sim_out3 / "panel.csv") == slurp(sim_out2 / "panel.csv"),
          "same seed gives byte-identical panels");

    // --- determinism: identical config + inputs -> byte-identical CSVs
    const fs::path est_out2 = g_dir / "est2";
    run("--out " + est_out2.string() + " tvmg --input " + panel_csv +
        " --outcome y --regressors x1 --alpha 0.5");
    check(slurp(est_out / "coefficients.csv") == slurp(est_out2 / "coefficients.csv"),
          "identical runs give byte-identical coefficients.csv");

    // --- two-regressor estimation through the same engine
    {
        std::ofstream out(g_dir / "dgp2.conf");
        out << "n_units = 16\nn_times = 20\nfirst_time = 2000\nn_groups = 4\n"
               "e_sd = 0.1\nu_sd = 0.2\nseed = 3\n"
               "beta.1 = sine:0.4,0.8,1.0\nx.1 = 0.4,1.0,0.0\n"
               "beta.2 = linear:-0.5,0.5\nx.2 = 0.2,1.5,1.0\n";
    }
    const fs::path sim2 = g_dir / "p2sim";
    const fs::path est_p2 = g_dir / "p2est";
    check(run("--out " + sim2.string() + " simulate --config " + (g_dir / "dgp2.conf").string()) == 0,
          "simulate handles two regressors");
    check(run("--out " + est_p2.string() + " tvmg --input " + (sim2 / "panel.csv").string() +
              " --outcome y --regressors x1,x2 --alpha 0.5") == 0,
          "tvmg estimates a two-regressor panel");
    {
        const std::string coef = slurp(est_p2 / "coefficients.csv");
        check(count_lines(coef) == 1 + 20 * 3, "two-regressor output has (time x 3 coef) rows");
        check(coef.find(",x2,") != std::string::npos, "second regressor rows present");
    }

    // --- static OLS
    const fs::path static_out = g_dir / "static";
    check(run("--out " + static_out.string() + " static-ols --input " + panel_csv +
              " --outcome y --regressors x1") == 0,
          "static-ols exits 0");
    check(slurp(static_out / "static_ols.csv").rfind("var,coef,t_value", 0) == 0,
          "static_ols.csv header");

    // --- cv-bandwidth with the default grid: 12 rows + header
    const fs::path cv_out = g_dir / "cv";
    check(run("--out " + cv_out.string() + " cv-bandwidth --input " + panel_csv +
              " --outcome y --regressors x1") == 0,
          "cv-bandwidth exits 0");
    {
        const std::string cv = slurp(cv_out / "cv_bandwidth.csv");
        check(count_lines(cv) == 13, "cv report lists 12 grid rows");
        check(cv.find(",1\n") != std::string::npos, "cv report marks a best row");
    }

    // --- lofo
    const fs::path lofo_out = g_dir / "lofo";
    check(run("--out " + lofo_out.string() + " lofo --input " + panel_csv +
              " --outcome y --regressors x1 --alpha 0.5") == 0,
          "lofo exits 0");
    check(slurp(lofo_out / "lofo.csv").rfind("time,mdr,sfr", 0) == 0, "lofo.csv header");

    // --- shift test
    const fs::path shift_out = g_dir / "shift";
    check(run("--out " + shift_out.string() + " shift-test --input " + panel_csv +
              " --outcome y --regressors x1 --break-year 2009") == 0,
          "shift-test exits 0");
    check(slurp(shift_out / "shift_test.csv").rfind("var,pre,post,delta", 0) == 0,
          "shift_test.csv header");

    // --- aggregate-tv on a small wide series file
    const fs::path wide = g_dir / "series.csv";
    {
        std::ofstream out(wide);
        out << "time,dy,pc1\n";
        double x = 0.3;
        for (int year = 1993; year <= 2023; ++year) {
            x = 0.6 * x + 0.25 * ((year * 2654435761u) % 1000 / 1000.0 - 0.5);
            out << year << ',' << 0.4 * x + 0.01 * (year - 2000) << ',' << x << '\n';
        }
    }
    const fs::path agg_out = g_dir / "agg";
    check(run("--out " + agg_out.string() + " aggregate-tv --input " + wide.string() +
              " --outcome dy --regressors pc1 --alpha 0.5 --bands both --B 200 --seed 11") == 0,
          "aggregate-tv exits 0");
    {
        const std::string bands = slurp(agg_out / "aggregate_bands.csv");
        check(bands.find(",mbb,") != std::string::npos, "mbb rows present");
        check(bands.find(",normal,") != std::string::npos, "normal rows present");
    }
    check(run("--out " + agg_out.string() + " aggregate-tv --input " + wide.string() +
              " --outcome dy --regressors pc1 --alpha 0.5 --bands mbb --B 200") == 3,
          "bootstrap without --seed is a data error (exit 3)");

    // --- transform + pca
    const fs::path qdata = g_dir / "fredq.csv";
    const fs::path qcodes = g_dir / "tcodes.csv";
    write_quarterly_fixture(qdata, qcodes);
    const fs::path tr_out = g_dir / "tr";
    check(run("--out " + tr_out.string() + " transform --input " + qdata.string() +
              " --tcodes " + qcodes.string()) == 0,
          "transform exits 0");
    {
        const std::string annual = slurp(tr_out / "transformed.csv");
        check(annual.rfind("year,", 0) == 0, "transformed.csv header");
        // differenced series lose 1990; intersection starts 1991
        check(annual.find("\n1991,") != std::string::npos, "annual rows start at 1991");
        check(annual.find("\n1990,") == std::string::npos, "partial first year dropped");
    }
    const fs::path pca_out = g_dir / "pca";
    check(run("--out " + pca_out.string() + " pca --input " + qdata.string() + " --tcodes " +
              qcodes.string() + " -k 2") == 0,
          "pca exits 0");
    check(slurp(pca_out / "pc_scores.csv").rfind("time,pc1,pc2", 0) == 0, "pc_scores header");
    check(fs::exists(pca_out / "pc_loadings.csv") && fs::exists(pca_out / "pc_explained.csv"),
          "pca writes loadings and explained shares");

    // --- failure paths: usage (2), data (3)
    check(run("tvmg --outcome y") == 2, "missing required flags is a usage error (exit 2)");
    check(run("--out " + (g_dir / "x").string() + " tvmg --input " + panel_csv +
              " --outcome y --regressors x1 --alpha 1.5") == 2,
          "alpha outside (0,1) is a usage error (exit 2)");
    check(run("--out " + (g_dir / "x").string() + " tvmg --input " + panel_csv +
              " --outcome y --regressors x1 --bandwidth -2") == 2,
          "nonpositive bandwidth is a usage error (exit 2)");
    check(run("no-such-command") == 2, "unknown subcommand is a usage error (exit 2)");
    {
        std::ofstream bad(g_dir / "bad.csv");
        bad << "unit,group,time,y,x1\nu1,g,1993,1.0,not_a_number\n";
    }
    const int bad_code = run("--out " + (g_dir / "bad_out").string() + " tvmg --input " +
                             (g_dir / "bad.csv").string() + " --outcome y --regressors x1");
    check(bad_code == 3, "malformed numeric cell is a data error (exit 3)");
    check(!fs::exists(g_dir / "bad_out" / "coefficients.csv"),
          "failed runs leave no partial outputs");

    // constant regressor: every local design is singular -> exit 4
    {
        std::ofstream sing(g_dir / "singular.csv");
        sing << "unit,group,time,y,x1\n";
        for (int u = 0; u < 2; ++u) {
            for (int t = 1993; t <= 1998; ++t) {
                sing << 'u' << u << ",g" << u << ',' << t << ',' << 0.1 * (t - 1993) << ",2.0\n";
            }
        }
    }
    check(run("--out " + (g_dir / "sing_out").string() + " tvmg --input " +
              (g_dir / "singular.csv").string() + " --outcome y --regressors x1") == 4,
          "degenerate estimation is a numeric error (exit 4)");

    std::cout << (failures == 0 ? "all cli checks passed\n"
                                : std::to_string(failures) + " cli checks failed\n");
    return failures == 0 ? 0 : 1;
}

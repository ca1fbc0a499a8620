// Command-line front end: solves the multiresolution oscillator problem,
// runs the coefficient predictions, and emits the table/figure data as
// CSV/JSON (and optional SVG charts).

#include "waveritz/analysis.hpp"
#include "waveritz/errors.hpp"
#include "waveritz/io.hpp"
#include "waveritz/oracle.hpp"
#include "waveritz/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace waveritz;

namespace {

struct RunConfig {
    int genus = 4;
    double omega = 1.0;
    double half_width = 8.0;
    int level = 2;
    int n_states = 6;
    std::string mode = "additive";
    std::string beta_convention = "normalized";
    int window = 3;
    double threshold = 1e-3;
    std::string out = ".";
    unsigned long seed = 12345;
    bool svg = false;

    void validate() const {
        if (genus < 1 || genus > 10) throw ParameterError("--genus must be in 1..10");
        if (omega <= 0) throw ParameterError("--omega must be positive");
        if (half_width <= 0) throw ParameterError("--halfwidth must be positive");
        if (level < 0 || level > 8) throw ParameterError("--M must be in 0..8");
        if (n_states < 1) throw ParameterError("--states must be positive");
        if (window < 3 || window % 2 == 0) throw ParameterError("--window must be odd and >= 3");
        if (threshold <= 0) throw ParameterError("--threshold must be positive");
    }
};

// key=value overrides for options not given on the command line; '#' starts
// a comment.
void apply_config_file(const std::string& path, CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        bool known = false;
        for (CLI::App* sub : app.get_subcommands()) { // parsed subcommands only
            CLI::Option* opt = sub->get_option_no_throw("--" + key);
            if (opt) {
                known = true;
                if (opt->count() == 0) opt->add_result(value)->run_callback();
            }
        }
        if (!known)
            throw FormatError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

Problem make_problem(const RunConfig& cfg) {
    fs::path cache = fs::path(cfg.out) / "cache";
    Problem prob;
    prob.model = ModelSystem::harmonic(cfg.omega);
    prob.fb = cached_filter(cfg.genus, cache);
    prob.ct = cached_connection_table(prob.fb, cache);
    prob.half_width = cfg.half_width;
    return prob;
}

void print_energies(const std::string& label, const std::vector<double>& e) {
    std::printf("%-10s", label.c_str());
    for (double v : e) std::printf(" %.15f", v);
    std::printf("\n");
}

int cmd_solve(const RunConfig& cfg) {
    Problem prob = make_problem(cfg);
    SpectralSolution sol = solve_level(prob, cfg.level, cfg.n_states);
    fs::path file = fs::path(cfg.out) / ("solution_M" + std::to_string(cfg.level) + ".json");
    save_solution(sol, prob, file);
    std::printf("# level M=%d, dimension %d, half-width %g\n", cfg.level,
                sol.layout.single_dim(), cfg.half_width);
    std::vector<double> e(sol.eigenvalues.begin(), sol.eigenvalues.begin() + cfg.n_states);
    print_energies("E[" + std::to_string(cfg.level) + "]", e);
    std::printf("# wrote %s\n", file.string().c_str());
    return 0;
}

// Reuse an existing solution document when it matches the configuration;
// otherwise solve on the fly.
SpectralSolution obtain_solution(const Problem& prob, const RunConfig& cfg,
                                 const fs::path& outdir) {
    fs::path file = outdir / ("solution_M" + std::to_string(cfg.level) + ".json");
    if (fs::exists(file)) {
        try {
            SpectralSolution sol = load_solution(file, prob);
            if (sol.level == cfg.level && sol.n_states >= cfg.n_states &&
                sol.layout.half_width == cfg.half_width &&
                sol.layout.support == prob.fb.support())
                return sol;
        } catch (const FormatError&) {
            // fall through to a fresh solve
        }
    }
    return solve_level(prob, cfg.level, cfg.n_states);
}

int cmd_predict(const RunConfig& cfg, bool secondary) {
    Problem prob = make_problem(cfg);
    PredictionMode mode = prediction_mode_from_string(cfg.mode);
    BetaConvention conv = cfg.beta_convention == "verbatim" ? BetaConvention::Verbatim
                                                            : BetaConvention::Normalized;
    fs::path outdir(cfg.out);
    SpectralSolution sol = obtain_solution(prob, cfg, outdir);
    for (int s = 0; s < cfg.n_states; ++s) {
        PredictionRecord rec = predict_level(prob, sol, s, mode);
        std::string stem = "predict_M" + std::to_string(cfg.level) + "_state" + std::to_string(s);
        save_prediction(rec, outdir / (stem + ".json"));
        write_csv(prediction_csv(rec), outdir / (stem + ".csv"));
        std::printf("state %d: E[%d]=%.15f Epred[%d]=%.15f (%s)\n", s, cfg.level,
                    rec.source_energy, cfg.level + 1, rec.predicted_energy,
                    to_string(mode).c_str());
        if (secondary) {
            PredictionRecord sec = secondary_predict(prob, rec, conv);
            std::vector<double> avg = smooth_average(sec.coeff, cfg.window);
            std::string stem2 = stem + "_secondary";
            save_prediction(sec, outdir / (stem2 + ".json"));
            write_csv(prediction_csv(sec, avg), outdir / (stem2 + ".csv"));
            ExactState ex = exact_state(s, cfg.omega);
            std::vector<double> dex =
                exact_wavelet_coefficients(ex, cfg.half_width, prob.fb, sec.target_wavelet_level);
            double rms_raw = 0, rms_avg = 0;
            size_t n = std::min(dex.size(), sec.coeff.size());
            for (size_t i = 0; i < n; ++i) {
                rms_raw += (sec.coeff[i] - dex[i]) * (sec.coeff[i] - dex[i]);
                rms_avg += (avg[i] - dex[i]) * (avg[i] - dex[i]);
            }
            rms_raw = std::sqrt(rms_raw / n);
            rms_avg = std::sqrt(rms_avg / n);
            std::printf("state %d secondary: Epred2=%.15f rms(beta-dexact)=%.3e rms(avg)=%.3e\n",
                        s, sec.predicted_energy, rms_raw, rms_avg);
        }
    }
    return 0;
}

int cmd_table(const RunConfig& cfg) {
    Problem prob = make_problem(cfg);
    PredictionMode mode = prediction_mode_from_string(cfg.mode);
    EnergyTable table = energy_table(prob, cfg.level, cfg.n_states, mode);
    write_csv(energy_table_csv(table), fs::path(cfg.out) / "energy_table.csv");
    for (size_t r = 0; r < table.rows.size(); ++r) print_energies(table.row_labels[r], table.rows[r]);
    return 0;
}

int cmd_scaling(const RunConfig& cfg, int m_min, int m_max, int state, const std::string& quantity) {
    Problem prob = make_problem(cfg);
    std::vector<ScalingFit> fits = scaling_series(prob, m_min, m_max, state);
    fs::path outdir(cfg.out);
    CsvTable summary;
    summary.header = {"quantity", "slope", "intercept", "residual_rms", "m_min", "m_max"};
    bool found = quantity.empty();
    for (const auto& f : fits) {
        if (!quantity.empty() && f.quantity != quantity) continue;
        found = true;
        write_csv(scaling_csv(f), outdir / ("scaling_" + f.quantity + ".csv"));
        summary.add_row({f.quantity, format_g15(f.slope), format_g15(f.intercept),
                         format_g15(f.residual_rms), std::to_string(m_min), std::to_string(m_max)});
        std::printf("%-12s slope %+.6f residual %.2e\n", f.quantity.c_str(), f.slope,
                    f.residual_rms);
        if (cfg.svg) {
            SvgSeries s{f.quantity, {}, {}};
            for (size_t i = 0; i < f.levels.size(); ++i) {
                s.x.push_back(f.levels[i]);
                s.y.push_back(std::abs(f.aggregate[i]));
            }
            write_svg_chart({s}, {"scaling of " + f.quantity, "M", f.quantity, false, true},
                            outdir / ("scaling_" + f.quantity + ".svg"));
        }
    }
    if (!found) throw ParameterError("unknown scaling quantity '" + quantity + "'");
    write_csv(summary, outdir / "scaling_summary.csv");
    return 0;
}

int cmd_figdata(const RunConfig& cfg, int fig) {
    Problem prob = make_problem(cfg);
    PredictionMode mode = prediction_mode_from_string(cfg.mode);
    BetaConvention conv = cfg.beta_convention == "verbatim" ? BetaConvention::Verbatim
                                                            : BetaConvention::Normalized;
    fs::path outdir(cfg.out);

    if (fig == 1 || fig == 2) {
        int m_lo = 1, m_hi = std::max(cfg.level, 3);
        CsvTable csv;
        csv.header = fig == 1 ? std::vector<std::string>{"M", "k", "x", "W", "W_kin", "W_pot"}
                              : std::vector<std::string>{"M", "k", "x", "R", "lambda", "alpha"};
        std::vector<SvgSeries> series;
        for (int m = m_lo; m <= m_hi; ++m) {
            SpectralSolution sol = solve_level(prob, m, 1);
            PredictionRecord rec = predict_level(prob, sol, 0, mode);
            SvgSeries sv{"M=" + std::to_string(m), {}, {}};
            for (size_t i = 0; i < rec.coeff.size(); ++i) {
                int k = rec.kmin + static_cast<int>(i);
                double x = std::ldexp(double(k), -m);
                if (fig == 1) {
                    auto [kin, pot] = wavelet_diagonal_parts(prob.model, prob.ct, prob.fb, m, k);
                    csv.add_row({double(m), double(k), x, rec.w[i], kin, pot});
                    sv.x.push_back(x);
                    sv.y.push_back(rec.w[i]);
                } else {
                    csv.add_row({double(m), double(k), x, rec.r[i], rec.lambda[i], rec.coeff[i]});
                    sv.x.push_back(x);
                    sv.y.push_back(std::abs(rec.r[i]));
                }
            }
            series.push_back(std::move(sv));
        }
        fs::path file = outdir / (fig == 1 ? "fig1_W.csv" : "fig2_prediction_terms.csv");
        write_csv(csv, file);
        if (cfg.svg)
            write_svg_chart(series,
                            {fig == 1 ? "wavelet diagonal W" : "|R| vs normalized shift",
                             "x = k/2^M", fig == 1 ? "W" : "|R|", false, true},
                            fs::path(file).replace_extension(".svg"));
        std::printf("# wrote %s\n", file.string().c_str());
        return 0;
    }
    if (fig == 3) {
        EnergyTable t = energy_table(prob, cfg.level, cfg.n_states, mode);
        CsvTable csv;
        csv.header = {"M", "state", "err_eig", "err_pred"};
        // row 0 is exact, then Epred[m] at 2m and E[m] at 2m+1
        for (int m = 1; m <= cfg.level; ++m) {
            for (int s = 0; s < cfg.n_states; ++s) {
                double exact = (s + 0.5) * cfg.omega;
                double eig = t.rows[2 * m + 1][s];
                double pred = t.rows[2 * m][s];
                csv.add_row({double(m), double(s), std::abs(eig - exact), std::abs(pred - exact)});
            }
        }
        write_csv(csv, outdir / "fig3_energy_errors.csv");
        if (cfg.svg) {
            std::vector<SvgSeries> series;
            for (int s = 0; s < cfg.n_states; ++s) {
                SvgSeries se{"state " + std::to_string(s), {}, {}};
                for (const auto& row : csv.rows)
                    if (std::stoi(row[1]) == s) {
                        se.x.push_back(std::stod(row[0]));
                        se.y.push_back(std::stod(row[2]));
                    }
                series.push_back(std::move(se));
            }
            write_svg_chart(series, {"energy errors vs level", "M", "|E - exact|", false, true},
                            outdir / "fig3_energy_errors.svg");
        }
        std::printf("# wrote fig3_energy_errors.csv\n");
        return 0;
    }
    if (fig == 4) {
        int m_hi = std::max(2, cfg.level);
        ErrorNormSeries series = error_vs_norm(prob, 1, m_hi, cfg.n_states, m_hi + 2, mode);
        write_csv(error_norm_csv(series), outdir / "fig4_error_vs_norm.csv");
        CsvTable slopes;
        slopes.header = {"state", "slope", "residual_rms"};
        for (int s = 0; s < cfg.n_states; ++s)
            slopes.add_row({double(s), series.slope_per_state[s], series.residual_per_state[s]});
        write_csv(slopes, outdir / "fig4_slopes.csv");
        if (cfg.svg) {
            std::vector<SvgSeries> sv;
            for (int s = 0; s < cfg.n_states; ++s) {
                SvgSeries se{"state " + std::to_string(s), {}, {}};
                for (const auto& p : series.points)
                    if (p.state == s) {
                        se.x.push_back(p.norm2_diff);
                        se.y.push_back(p.energy_err);
                    }
                sv.push_back(std::move(se));
            }
            write_svg_chart(sv, {"energy error vs norm difference", "||d||^2", "|dE|", true, true},
                            outdir / "fig4_error_vs_norm.svg");
        }
        std::printf("# wrote fig4_error_vs_norm.csv\n");
        return 0;
    }
    if (fig == 5) {
        int m = cfg.level;
        if (m < 2) throw ParameterError("--fig 5 needs --M >= 2");
        SpectralSolution sol_m = solve_level(prob, m, cfg.n_states);
        SpectralSolution sol_prev = solve_level(prob, m - 1, cfg.n_states);
        SpectralSolution sol_fine = solve_level(prob, m + 1, cfg.n_states);
        PredictionRecord alpha_rec = predict_level(prob, sol_m, 0, mode);
        PredictionRecord first = predict_level(prob, sol_prev, 0, mode);
        PredictionRecord beta_rec = secondary_predict(prob, first, conv);
        std::vector<double> beta_avg = smooth_average(beta_rec.coeff, cfg.window);
        ExactState ex = exact_state(0, cfg.omega);
        std::vector<double> dex = exact_wavelet_coefficients(ex, cfg.half_width, prob.fb, m);

        // d^eig: finest detail block of the level-(m+1) eigenvector, sign
        // aligned with the level-m state.
        const BasisLayout& fl = sol_fine.layout;
        const IndexWindow& win = fl.wavelet_windows.back();
        double overlap = 0.0;
        LevelVector up = prolong(sol_m.state_vector(0), prob.fb, m + 1);
        for (int r = 0; r < sol_fine.vectors_single.rows(); ++r)
            overlap += sol_fine.vectors_single(r, 0) * up.at(fl.single_window.kmin + r);
        double sign = overlap >= 0 ? 1.0 : -1.0;

        CsvTable csv;
        csv.header = {"k", "x", "d_exact", "d_eig", "alpha", "beta", "beta_avg"};
        for (int k = win.kmin; k <= win.kmax; ++k) {
            int i = k - win.kmin;
            double deig = sign * sol_fine.vectors_multilevel(fl.wavelet_offset(m) + i, 0);
            csv.add_row({double(k), std::ldexp(double(k), -m), dex[i], deig, alpha_rec.coeff[i],
                         beta_rec.coeff[i], beta_avg[i]});
        }
        fs::path file = outdir / ("fig5_coeffs_M" + std::to_string(m) + ".csv");
        write_csv(csv, file);
        if (cfg.svg) {
            std::vector<SvgSeries> sv(4);
            const char* names[] = {"d_exact", "d_eig", "alpha", "beta_avg"};
            int cols[] = {2, 3, 4, 6};
            for (int t = 0; t < 4; ++t) {
                sv[t].label = names[t];
                for (const auto& row : csv.rows) {
                    sv[t].x.push_back(std::stod(row[1]));
                    sv[t].y.push_back(std::stod(row[cols[t]]));
                }
            }
            write_svg_chart(sv, {"level-" + std::to_string(m) + " coefficients", "x = k/2^M",
                                 "coefficient", false, false},
                            fs::path(file).replace_extension(".svg"));
        }
        std::printf("# wrote %s\n", file.string().c_str());
        return 0;
    }
    throw ParameterError("--fig must be in 1..5");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiresolution wavelet eigensolver with coefficient prediction"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "key=value option file; flags win");
        sub->add_option("--genus", cfg.genus, "wavelet genus (vanishing moments)");
        sub->add_option("--omega", cfg.omega, "oscillator frequency (a.u.)");
        sub->add_option("--halfwidth", cfg.half_width, "domain half width (bohr)");
        sub->add_option("--M", cfg.level, "resolution level");
        sub->add_option("--states", cfg.n_states, "number of states");
        sub->add_option("--mode", cfg.mode, "prediction mode: additive|rayleigh|mixed");
        sub->add_option("--beta-convention", cfg.beta_convention,
                        "secondary convention: normalized|verbatim");
        sub->add_option("--window", cfg.window, "averaging window (odd)");
        sub->add_option("--threshold", cfg.threshold, "index selection threshold");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--seed", cfg.seed, "seed for randomized diagnostics");
        sub->add_flag("--svg", cfg.svg, "also emit SVG charts");
    };

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve the level-M eigenproblem");
    CLI::App* predict_cmd = app.add_subcommand("predict", "predict next-level coefficients");
    bool secondary = false;
    predict_cmd->add_flag("--secondary", secondary, "also run the secondary prediction");
    CLI::App* table_cmd = app.add_subcommand("table", "emit the interleaved energy table");
    CLI::App* scaling_cmd = app.add_subcommand("scaling", "per-level scaling of W, R, lambda, alpha");
    std::string quantity;
    int m_min = 1, m_max = 6, state = 0;
    scaling_cmd->add_option("--quantity", quantity, "one of W,Wkin,Wpot,R,lambda,alpha,alpha_weight");
    scaling_cmd->add_option("--m-min", m_min, "first level");
    scaling_cmd->add_option("--m-max", m_max, "last level");
    scaling_cmd->add_option("--state", state, "state index");
    CLI::App* figdata_cmd = app.add_subcommand("figdata", "emit figure data CSV");
    int fig = 1;
    figdata_cmd->add_option("--fig", fig, "figure number 1..5");
    for (CLI::App* sub : {solve_cmd, predict_cmd, table_cmd, scaling_cmd, figdata_cmd})
        add_common(sub);

    try {
        app.parse(argc, argv);
        if (!config_file.empty()) apply_config_file(config_file, app);
        cfg.validate();
        std::filesystem::create_directories(cfg.out);
        if (*solve_cmd) return cmd_solve(cfg);
        if (*predict_cmd) return cmd_predict(cfg, secondary);
        if (*table_cmd) return cmd_table(cfg);
        if (*scaling_cmd) return cmd_scaling(cfg, m_min, m_max, state, quantity);
        if (*figdata_cmd) return cmd_figdata(cfg, fig);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 1;
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help() << std::flush;
        return 1;
    } catch (const LayoutError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DegeneracyError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

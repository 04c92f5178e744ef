// Command-line front end: path simulation, kernel/covariance tables,
// statistics over CSV files, and the validation suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "config.hpp"
#include "ficogarch/cogarch.hpp"
#include "ficogarch/covariance.hpp"
#include "ficogarch/frac_subordinator.hpp"
#include "ficogarch/kernels.hpp"
#include "ficogarch/levy.hpp"
#include "ficogarch/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ficogarch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw spec_error("cannot open output file " + name + " under " + dir);
    return out;
}

void write_manifest(const std::string& dir, const json& j) {
    auto out = open_out(dir, "manifest.json");
    out << j.dump(2) << "\n";
}

json grid_json(const PathGrid& g) {
    return {{"t_start", g.t_start}, {"t_end", g.t_end()}, {"step", g.step},
            {"n_points", g.n_points}};
}

json levy_json(const LevySpec& s) {
    json j{{"drift", s.drift}, {"gaussian_var", s.gaussian_var}};
    if (s.jumps) {
        j["jump_rate"] = s.jumps->rate;
        if (std::holds_alternative<NormalJumps>(s.jumps->size)) {
            const auto& n = std::get<NormalJumps>(s.jumps->size);
            j["jump_dist"] = {{"type", "normal"}, {"mean", n.mean}, {"var", n.var}};
        } else if (std::holds_alternative<ExponentialJumps>(s.jumps->size)) {
            j["jump_dist"] = {{"type", "exponential"},
                              {"rate", std::get<ExponentialJumps>(s.jumps->size).rate}};
        } else {
            j["jump_dist"] = {{"type", "constant"},
                              {"value", std::get<ConstantJumps>(s.jumps->size).value}};
        }
    } else {
        j["jump_dist"] = {{"type", "none"}};
    }
    return j;
}

json kernel_json(const KernelSpec& k) {
    const char* fam = k.family == KernelFamily::MG      ? "mg"
                      : k.family == KernelFamily::MvN   ? "mvn"
                                                        : "modified_mvn";
    json j{{"family", fam}, {"d", k.d}};
    if (k.family == KernelFamily::ModifiedMvN) j["a"] = k.a;
    return j;
}

// --- CSV reading for the stats subcommands ---------------------------------

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw data_error("csv: no column named " + name);
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("csv: cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw data_error("csv: empty file " + path);
    std::stringstream hdr(line);
    std::string cell;
    while (std::getline(hdr, cell, ',')) t.columns.push_back(cell);
    t.data.resize(t.columns.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (!std::getline(row, cell, ',')) throw data_error("csv: ragged row in " + path);
            t.data[c].push_back(std::stod(cell));
        }
    }
    return t;
}

// --- shared driver/kernel flag bundles --------------------------------------

KernelSpec kernel_spec_from_cli(const std::string& family, double d, double a) {
    KernelSpec spec;
    if (family == "mg")
        spec.family = KernelFamily::MG;
    else if (family == "mvn")
        spec.family = KernelFamily::MvN;
    else if (family == "modified_mvn")
        spec.family = KernelFamily::ModifiedMvN;
    else
        throw spec_error("unknown kernel family " + family);
    spec.d = d;
    spec.a = a;
    return spec;
}

struct DriverFlags {
    double drift = 0.0;
    double gaussian_var = 0.0;
    double cp_rate = 0.0;
    std::string jump = "none";
    double jump_mean = 0.0;
    double jump_var = 1.0;
    double jump_rate = 1.0;
    double jump_value = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--drift", drift, "Levy drift");
        cmd->add_option("--gaussian-var", gaussian_var, "Brownian variance");
        cmd->add_option("--cp-rate", cp_rate, "compound-Poisson jump rate");
        cmd->add_option("--jump", jump, "jump-size law: none|normal|exponential|constant");
        cmd->add_option("--jump-mean", jump_mean, "normal jump mean");
        cmd->add_option("--jump-var", jump_var, "normal jump variance");
        cmd->add_option("--jump-rate", jump_rate, "exponential jump rate");
        cmd->add_option("--jump-value", jump_value, "constant jump size");
    }

    LevySpec spec() const {
        LevySpec s;
        s.drift = drift;
        s.gaussian_var = gaussian_var;
        if (jump != "none") {
            CompoundPoisson cp;
            cp.rate = cp_rate;
            if (jump == "normal")
                cp.size = NormalJumps{jump_mean, jump_var};
            else if (jump == "exponential")
                cp.size = ExponentialJumps{jump_rate};
            else if (jump == "constant")
                cp.size = ConstantJumps{jump_value};
            else
                throw spec_error("unknown jump law " + jump);
            s.jumps = cp;
        }
        return s;
    }
};

int run_validate(const std::string& suite, const std::string& budget, int criterion) {
    const bool full = budget == "full";
    std::vector<int> ids;
    if (criterion > 0) {
        ids = {criterion};
    } else {
        bool found = false;
        for (const auto& s : ficli::suites()) {
            if (s.name == suite) {
                ids = s.criteria;
                found = true;
                break;
            }
        }
        if (!found) {
            std::fprintf(stderr, "unknown suite '%s'\n", suite.c_str());
            return kExitUsage;
        }
    }
    bool all_pass = true;
    std::printf("validation suite '%s' (budget: %s)\n", criterion > 0 ? "criterion" : suite.c_str(),
                budget.c_str());
    for (int id : ids) {
        auto res = ficli::run_criterion(id, full);
        ficli::print_result(res);
        all_pass = all_pass && res.pass();
    }
    std::printf("%s\n", all_pass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional subordinator and continuous-time GARCH toolkit"};
    app.require_subcommand(1);

    // ---- simulate (volatility model from a config file) ----
    auto* sim = app.add_subcommand("simulate", "simulate the volatility/price model");
    std::string sim_config, sim_out = ".";
    std::uint64_t sim_seed = 1;
    std::size_t sim_paths = 1;
    double sim_step = 0.0, sim_horizon = 0.0, sim_tend = 0.0;
    sim->add_option("--config", sim_config, "model config file")->required();
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--seed", sim_seed, "base seed");
    sim->add_option("--paths", sim_paths, "number of paths");
    sim->add_option("--step", sim_step, "override grid step");
    sim->add_option("--t-end", sim_tend, "override horizon T");
    sim->add_option("--past-horizon", sim_horizon, "override past horizon");

    // ---- levy ----
    auto* lev = app.add_subcommand("levy", "simulate a raw Levy path");
    DriverFlags lev_flags;
    lev_flags.attach(lev);
    std::string lev_out = ".";
    std::uint64_t lev_seed = 1;
    double lev_t0 = 0.0, lev_t1 = 10.0, lev_step = 0.01;
    bool lev_two_sided = false, lev_qv = false;
    lev->add_option("--t-start", lev_t0, "grid start");
    lev->add_option("--t-end", lev_t1, "grid end");
    lev->add_option("--step", lev_step, "grid step");
    lev->add_option("--seed", lev_seed, "seed");
    lev->add_option("--out", lev_out, "output directory");
    lev->add_flag("--two-sided", lev_two_sided, "two-sided construction (grid must contain 0)");
    lev->add_flag("--quadratic-variation", lev_qv, "emit the squared-jump subordinator instead");

    // ---- fracsub ----
    auto* fsub = app.add_subcommand("fracsub", "fractional subordinator paths and moments");
    fsub->require_subcommand(1);
    auto* fsim = fsub->add_subcommand("simulate", "simulate driver and fractional path");
    auto* fmom = fsub->add_subcommand("moments", "quadrature vs Monte Carlo cumulants");
    struct {
        double d = -0.25, a = 1.0, t_end = 25.0, step = 0.01, horizon = 0.0;
        double cp_rate = 0.4, jump_var = 1.0;
        std::string scheme = "riemann";
        bool pathological = false;
        std::uint64_t seed = 1;
        std::string out = ".";
        double t = 1.0;
        int kmax = 2;
        std::size_t paths = 10000;
    } ff;
    for (auto* cmd : {fsim, fmom}) {
        cmd->add_option("--d", ff.d, "fractional parameter (negative)");
        cmd->add_option("--a", ff.a, "kernel shift");
        cmd->add_option("--step", ff.step, "grid step");
        cmd->add_option("--past-horizon", ff.horizon, "past truncation (default 200 a)");
        cmd->add_option("--cp-rate", ff.cp_rate, "driver jump rate");
        cmd->add_option("--jump-var", ff.jump_var, "driver normal jump variance");
        cmd->add_option("--seed", ff.seed, "base seed");
        cmd->add_option("--out", ff.out, "output directory");
    }
    fsim->add_option("--t-end", ff.t_end, "horizon T");
    fsim->add_option("--scheme", ff.scheme, "riemann|parts");
    fsim->add_flag("--pathological", ff.pathological,
                   "use the unmodified MvN kernel (demonstration only)");
    fmom->add_option("--t", ff.t, "evaluation time");
    fmom->add_option("--kmax", ff.kmax, "highest cumulant order");
    fmom->add_option("--paths", ff.paths, "Monte Carlo ensemble size");

    // ---- kernel ----
    auto* ker = app.add_subcommand("kernel", "kernel evaluation and norms");
    ker->require_subcommand(1);
    auto* keval = ker->add_subcommand("eval", "tabulate f(t, s) over s");
    auto* knorm = ker->add_subcommand("norm", "int |f(t,.)|^p ds");
    struct {
        std::string family = "modified_mvn";
        double d = -0.25, a = 1.0, t = 1.0;
        double s_min = -10.0, s_max = 1.0;
        std::size_t n = 200;
        double p = 2.0, tol = 1e-8;
    } kf;
    for (auto* cmd : {keval, knorm}) {
        cmd->add_option("--family", kf.family, "mg|mvn|modified_mvn");
        cmd->add_option("--d", kf.d, "fractional parameter");
        cmd->add_option("--a", kf.a, "shift (modified kernel)");
        cmd->add_option("--t", kf.t, "kernel time argument");
    }
    keval->add_option("--s-min", kf.s_min, "lower s");
    keval->add_option("--s-max", kf.s_max, "upper s");
    keval->add_option("--n", kf.n, "points");
    knorm->add_option("--p", kf.p, "exponent p");
    knorm->add_option("--tol", kf.tol, "absolute tolerance");

    // ---- cov ----
    auto* cov = app.add_subcommand("cov", "increment covariance tables");
    cov->require_subcommand(1);
    auto* ctab = cov->add_subcommand("table", "h, exact, asymptotic, ratio");
    struct {
        double a = 1.0, d = -0.25, r = 1.0, var_s1 = 1.0;
        std::size_t hmax = 100;
        std::string convention = "driver";
    } cf;
    ctab->add_option("--a", cf.a, "kernel shift");
    ctab->add_option("--d", cf.d, "fractional parameter");
    ctab->add_option("--r", cf.r, "increment length");
    ctab->add_option("--hmax", cf.hmax, "largest lag");
    ctab->add_option("--var-s1", cf.var_s1, "driver variance Var(S_1)");
    ctab->add_option("--variance-convention", cf.convention,
                     "driver|fractional scale of the asymptote");

    // ---- stats ----
    auto* st = app.add_subcommand("stats", "estimators over CSV files");
    st->require_subcommand(1);
    auto* sacf = st->add_subcommand("acf", "sample autocorrelation of a column");
    auto* sslope = st->add_subcommand("slope", "log-log least-squares slope");
    struct {
        std::string input, column = "value", xcol = "t", ycol = "value";
        std::size_t max_lag = 50;
    } sf;
    sacf->add_option("--input", sf.input, "input CSV")->required();
    sacf->add_option("--column", sf.column, "column name");
    sacf->add_option("--max-lag", sf.max_lag, "largest lag");
    sslope->add_option("--input", sf.input, "input CSV")->required();
    sslope->add_option("--x-column", sf.xcol, "x column name");
    sslope->add_option("--y-column", sf.ycol, "y column name");

    // ---- validate ----
    auto* val = app.add_subcommand("validate", "run the acceptance criteria");
    std::string val_suite = "all", val_budget = "quick";
    int val_criterion = 0;
    val->add_option("--suite", val_suite, "kernels|fracsub|covariance|ficogarch|all");
    val->add_option("--budget", val_budget, "quick|full")
        ->check(CLI::IsMember({"quick", "full"}));
    val->add_option("--criterion", val_criterion, "run a single criterion by number")
        ->check(CLI::Range(1, 14));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*lev) {
            auto spec = lev_flags.spec();
            const auto grid = PathGrid::from_range(lev_t0, lev_t1, lev_step);
            LevyPath lp = lev_two_sided ? two_sided(spec, grid, lev_seed)
                                        : simulate_levy(spec, grid, lev_seed);
            if (lev_qv) lp = quadratic_variation_discrete(lp);
            auto out = open_out(lev_out, "levy_path.csv");
            write_csv(lp.path, out);
            write_manifest(lev_out, {{"command", "levy"},
                                     {"seed", lev_seed},
                                     {"two_sided", lev_two_sided},
                                     {"quadratic_variation", lev_qv},
                                     {"grid", grid_json(grid)},
                                     {"driver", levy_json(spec)},
                                     {"n_jumps", lp.jumps.size()}});
            return kExitOk;
        }

        if (*fsim || *fmom) {
            FracSubConfig cfg;
            cfg.kernel = ff.pathological ? KernelSpec{KernelFamily::MvN, ff.d, 0.0}
                                         : KernelSpec{KernelFamily::ModifiedMvN, ff.d, ff.a};
            cfg.allow_pathological = ff.pathological;
            cfg.driver.jumps = CompoundPoisson{ff.cp_rate, NormalJumps{0.0, ff.jump_var}};
            cfg.use_quadratic_variation = true;
            cfg.grid = PathGrid::from_range(0.0, *fsim ? ff.t_end : std::max(ff.t, 1.0), ff.step);
            cfg.past_horizon = ff.horizon > 0.0 ? ff.horizon : 200.0 * std::max(ff.a, 1.0);
            cfg.scheme =
                ff.scheme == "parts" ? FracScheme::parts_integral : FracScheme::stochastic_riemann;

            if (*fsim) {
                FracPathEngine engine(cfg);
                auto real = engine.realize(ff.seed);
                auto out = open_out(ff.out, "fracsub_path.csv");
                out << "t,S,Sad\n";
                const std::size_t off = engine.extended_grid().n_points - cfg.grid.n_points;
                char buf[128];
                for (std::size_t k = 0; k < cfg.grid.n_points; ++k) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", cfg.grid.time(k),
                                  csv_num(real.driver.path.values[off + k]),
                                  csv_num(real.frac.values[k]));
                    out << buf;
                }
                write_manifest(ff.out,
                               {{"command", "fracsub simulate"},
                                {"seed", ff.seed},
                                {"grid", grid_json(cfg.grid)},
                                {"past_horizon", cfg.past_horizon},
                                {"kernel", kernel_json(cfg.kernel)},
                                {"driver", levy_json(cfg.driver)},
                                {"quadratic_variation", cfg.use_quadratic_variation},
                                {"scheme", ff.scheme},
                                {"truncation_tail_bound",
                                 truncation_tail_bound(cfg, cfg.grid.t_end())}});
            } else {
                std::printf("k,analytic,mc,mc_stderr\n");
                FracPathEngine engine(cfg);
                std::vector<double> vals(ff.paths);
                parallel_for(ff.paths, [&](std::size_t i) {
                    vals[i] = engine.path(ensemble_seed(ff.seed, i)).at_time(ff.t);
                });
                const auto m = moments_with_stderr(vals);
                for (int k = 1; k <= ff.kmax; ++k) {
                    const double analytic = frac_cumulant(cfg, k, ff.t);
                    double mc = 0.0, se = 0.0;
                    if (k == 1) {
                        mc = m.mean;
                        se = m.mean_se;
                    } else if (k == 2) {
                        mc = m.var;
                        se = m.var_se;
                    } else if (k == 3) {
                        // third cumulant = third central moment; asymptotic
                        // variance (mu6 - mu3^2 - 6 mu2 mu4 + 9 mu2^3) / n
                        double mu[7] = {0, 0, 0, 0, 0, 0, 0};
                        for (double v : vals) {
                            const double c = v - m.mean;
                            double p = 1.0;
                            for (int j = 1; j <= 6; ++j) {
                                p *= c;
                                mu[j] += p;
                            }
                        }
                        const double n = static_cast<double>(vals.size());
                        for (int j = 1; j <= 6; ++j) mu[j] /= n;
                        mc = mu[3];
                        se = std::sqrt(std::max(
                                 mu[6] - mu[3] * mu[3] - 6.0 * mu[2] * mu[4] +
                                     9.0 * mu[2] * mu[2] * mu[2],
                                 0.0) /
                             n);
                    } else {
                        throw spec_error("moments: cumulant orders above 3 are not supported");
                    }
                    std::printf("%d,%.12g,%.12g,%.12g\n", k, analytic, mc, se);
                }
            }
            return kExitOk;
        }

        if (*keval || *knorm) {
            KernelSpec spec = kernel_spec_from_cli(kf.family, kf.d, kf.a);
            if (*keval) {
                std::printf("s,f\n");
                for (std::size_t i = 0; i < kf.n; ++i) {
                    const double s =
                        kf.s_min + (kf.s_max - kf.s_min) * i / static_cast<double>(kf.n - 1);
                    try {
                        std::printf("%.17g,%.17g\n", s, kernel_value(spec, kf.t, s));
                    } catch (const singular_point_error&) {
                        // singular grid points are skipped
                    }
                }
            } else {
                std::printf("%.17g\n", kernel_norm(spec, kf.t, kf.p, kf.tol));
            }
            return kExitOk;
        }

        if (*ctab) {
            const auto conv = cf.convention == "fractional" ? VarianceConvention::fractional
                                                            : VarianceConvention::driver;
            std::printf("h,gamma_exact,gamma_asym,ratio\n");
            for (std::size_t h = 1; h <= cf.hmax; ++h) {
                const double ge =
                    increment_cov_exact(cf.a, cf.d, cf.var_s1, cf.r, static_cast<double>(h));
                const double ga = increment_cov_asymptotic(cf.a, cf.d, cf.var_s1, cf.r,
                                                           static_cast<double>(h), conv);
                std::printf("%zu,%.12g,%.12g,%.12g\n", h, ge, ga, ge / ga);
            }
            return kExitOk;
        }

        if (*sacf) {
            auto table = read_csv(sf.input);
            auto acf = sample_acf(table.data[table.column(sf.column)], sf.max_lag);
            std::printf("lag,acf\n");
            for (std::size_t k = 0; k < acf.size(); ++k) std::printf("%zu,%.12g\n", k, acf[k]);
            return kExitOk;
        }
        if (*sslope) {
            auto table = read_csv(sf.input);
            auto fit = loglog_slope(table.data[table.column(sf.xcol)],
                                    table.data[table.column(sf.ycol)]);
            std::printf("slope,stderr\n%.12g,%.12g\n", fit.slope, fit.stderr_);
            return kExitOk;
        }

        if (*sim) {
            auto cfg = ficli::Config::parse_file(sim_config);
            auto params = ficli::ficogarch_params_from(cfg);
            FicogarchRunConfig run;
            const double step = sim_step > 0.0 ? sim_step : cfg.get_num("simulation.step", 0.05);
            const double tend = sim_tend > 0.0 ? sim_tend : cfg.get_num("simulation.t_end", 100.0);
            run.grid = PathGrid::from_range(0.0, tend, step);
            run.past_horizon =
                sim_horizon > 0.0 ? sim_horizon : cfg.get_num("simulation.past_horizon", 0.0);
            run.init_window = cfg.get_num("simulation.init_window", 0.0);
            const std::uint64_t seed =
                sim->count("--seed")
                    ? sim_seed
                    : static_cast<std::uint64_t>(cfg.get_num("simulation.seed", 1.0));
            const std::size_t n_paths =
                sim->count("--paths")
                    ? sim_paths
                    : static_cast<std::size_t>(cfg.get_num("simulation.paths", 1.0));

            double trunc_bound = 0.0, sigma0_used = 0.0, window = 0.0, horizon = 0.0;
            for (std::size_t p = 0; p < n_paths; ++p) {
                auto res = ficogarch_1d1(params, run, ensemble_seed(seed, p));
                trunc_bound = res.truncation_bound;
                sigma0_used = res.sigma0_sq_used;
                window = res.init_window;
                horizon = res.past_horizon;
                std::string name = "ficogarch_path.csv";
                if (n_paths > 1) {
                    char nb[48];
                    std::snprintf(nb, sizeof nb, "ficogarch_path_%04zu.csv", p);
                    name = nb;
                }
                auto out = open_out(sim_out, name);
                out << "t,G,dG,sigma2,Sad,X\n";
                char buf[256];
                const auto& v = res.vol;
                for (std::size_t k = 0; k < v.grid.n_points; ++k) {
                    const double dg = k == 0 ? 0.0 : v.G[k] - v.G[k - 1];
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                                  v.grid.time(k), csv_num(v.G[k]), csv_num(dg),
                                  csv_num(v.sigma_sq[k]), csv_num(v.driver.values[k]),
                                  csv_num(v.X[k]));
                    out << buf;
                }
            }
            write_manifest(sim_out, {{"command", "simulate"},
                                     {"config", sim_config},
                                     {"seed", seed},
                                     {"paths", n_paths},
                                     {"grid", grid_json(run.grid)},
                                     {"past_horizon", horizon},
                                     {"init_window", window},
                                     {"sigma0_sq_used", sigma0_used},
                                     {"kernel", kernel_json(params.kernel)},
                                     {"driver", levy_json(params.driver)},
                                     {"stationary_init", !params.sigma0_sq.has_value()},
                                     {"truncation_tail_bound", trunc_bound},
                                     {"tolerances",
                                      {{"exp_integral", "trapezoid at the grid step"},
                                       {"moment_quadrature_rel", 1e-8}}}});
            return kExitOk;
        }

        if (*val) return run_validate(val_suite, val_budget, val_criterion);
    } catch (const spec_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const data_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidationFailure;
    }
    return kExitUsage;
}

#include "sqz/commands.hpp"

#include "sqz/error.hpp"
#include "sqz/output.hpp"
#include "sqz/rate_check.hpp"
#include "sqz/weak.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace sqz {

using nlohmann::json;

namespace {

// Worker count and destination do not affect results, so they stay out of the
// recorded config: output bytes are identical for any --threads or --out.
json provenance_config(const RunConfig& config)
{
    json cfg = to_json(config);
    cfg.erase("threads");
    cfg["output"].erase("path");
    return cfg;
}

std::string render(std::string_view command, const RunConfig& config, const Table& table)
{
    const json cfg = provenance_config(config);
    if (config.output.format == "json")
        return with_json_provenance(command, cfg, table.to_json());
    return with_csv_provenance(command, cfg, table.to_csv());
}

DensityMatrix initial_state(const EvolveSettings& e)
{
    if (e.initial == "excited")
        return DensityMatrix::excited();
    if (e.initial == "ground")
        return DensityMatrix::ground();
    if (e.initial == "mixed")
        return DensityMatrix::maximally_mixed();
    if (e.initial == "x")
        return BlochState{complex(0.5, 0.0), 0.0}.to_density();
    if (e.initial == "y")
        return BlochState{complex(0.0, -0.5), 0.0}.to_density();
    if (!e.bloch.inside_ball())
        throw Error(ErrorKind::InvalidParams, "evolve: Bloch vector lies outside the Bloch ball");
    return e.bloch.to_density();
}

json num(double x)
{
    return x;
}

} // namespace

std::string cmd_spectrum(const RunConfig& config)
{
    const auto& s = config.spectrum;
    config.bath.validate();
    Table t;
    t.columns = {"omega", "x", "N", "M_abs", "M_re", "M_im"};
    for (std::size_t i = 0; i < s.count; ++i) {
        const double f = s.count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(s.count - 1);
        const double x = s.x_min + f * (s.x_max - s.x_min);
        const double omega = config.bath.omega_L + x;
        const auto p = spectral_point(config.bath, omega);
        t.rows.push_back({num(omega), num(x), num(p.n_value), num(std::abs(p.m_value)), num(p.m_value.real()),
                          num(p.m_value.imag())});
    }
    return render("spectrum", config, t);
}

std::string cmd_evolve(const RunConfig& config)
{
    const auto shifts = config.shifts.resolve(config.bath, config.drive);
    const auto coeffs = effective_coefficients(config.bath, config.drive, shifts);
    const auto generator = build_liouvillian(config.bath, config.drive, coeffs);
    EvolveOptions opts;
    opts.rel_tol = config.tolerance;
    opts.samples = config.evolve.samples;
    const auto traj = evolve(generator, initial_state(config.evolve), config.evolve.t_start, config.evolve.t_end, opts);

    Table t;
    t.columns = {"t", "re_s_minus", "im_s_minus", "s_z", "trace_error"};
    for (const auto& s : traj.samples) {
        const auto b = s.state.to_bloch();
        t.rows.push_back({num(s.t), num(b.s_minus.real()), num(b.s_minus.imag()), num(b.s_z),
                          num(s.state.trace_error())});
    }
    return render("evolve", config, t);
}

json timescales_report(const RunConfig& config)
{
    const auto& bath = config.bath;
    const auto& drive = config.drive;
    const double n = config.schedule.n;
    const auto shifts = config.shifts.resolve(bath, drive);
    const auto c = effective_coefficients(bath, drive, shifts);
    const auto q = quadrature_rates(bath.gamma, c);
    const double g_pop = population_decay_rate(bath.gamma, c);
    const auto angular = angular_condition(bath, drive, shifts);
    const double margin = sufficient_condition_margin(bath, drive);

    json r;
    r["coefficients"] = {{"n_tilde", c.n_tilde},           {"m_tilde_re", c.m_tilde.real()},
                         {"m_tilde_im", c.m_tilde.imag()}, {"delta", c.delta},
                         {"beta_re", c.beta.real()},       {"beta_im", c.beta.imag()},
                         {"upsilon_re", c.upsilon.real()}, {"upsilon_im", c.upsilon.imag()}};
    r["shifts"] = {{"delta_N", shifts.delta_N}, {"delta_M", shifts.delta_M}};
    r["Gamma_dec"] = q.literal;
    r["Gamma_dec_effective"] = {q.effective[0], q.effective[1]};
    r["quadrature_cross_term"] = q.cross_term;
    r["Gamma_pop"] = g_pop;
    r["tau_dec"] = decoherence_time(bath.gamma, c, bath.omega_L, n);
    r["tau_zeno"] = zeno_time(bath.gamma, c, bath.omega_L, n);
    if (std::isfinite(n)) {
        const double window = n / bath.omega_L;
        r["tau_dec_exact"] = decay_time_exact(q.literal > 0.0 ? q.literal : 0.0, window);
        r["tau_zeno_exact"] = decay_time_exact(g_pop > 0.0 ? g_pop : 0.0, window);
    } else {
        r["tau_dec_exact"] = nullptr;
        r["tau_zeno_exact"] = nullptr;
    }
    r["ratio_derived"] = timescale_ratio(bath.gamma, c, bath.omega_L, n, ConditionMode::Derived);
    r["ratio_paper"] = timescale_ratio(bath.gamma, c, bath.omega_L, n, ConditionMode::Paper);
    r["cond_derived"] = sustainable_condition(c, ConditionMode::Derived);
    r["cond_paper"] = sustainable_condition(c, ConditionMode::Paper);
    r["mode"] = to_string(config.mode);
    r["sustainable"] = sustainable_condition(c, config.mode);
    r["theta"] = angular.theta;
    r["angular_lhs"] = angular.lhs;
    r["angular_holds"] = angular.holds;
    r["sufficient_margin"] = margin;
    r["zeno_dominant"] = zeno_dominant(margin);
    if (drive.Delta != 0.0) {
        const auto tt = tan_theta_asymptotic(bath, drive);
        r["tan_theta_asymptotic"] = tt.value;
        r["Omega_over_lambda"] = tt.omega_over_lambda;
    } else {
        r["tan_theta_asymptotic"] = nullptr;
        r["Omega_over_lambda"] = drive.Omega / bath.lambda();
    }
    return r;
}

std::string cmd_timescales(const RunConfig& config)
{
    const json report = timescales_report(config);
    if (config.output.format == "json")
        return with_json_provenance("timescales", provenance_config(config), report);
    Table t;
    t.columns = {"key", "value"};
    for (const auto& [k, v] : report.items()) {
        if (v.is_object()) {
            for (const auto& [k2, v2] : v.items())
                t.rows.push_back({k + "." + k2, v2});
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i)
                t.rows.push_back({k + "[" + std::to_string(i) + "]", v[i]});
        } else {
            t.rows.push_back({k, v});
        }
    }
    return with_csv_provenance("timescales", provenance_config(config), t.to_csv());
}

std::string cmd_sweep(const RunConfig& config)
{
    SweepOptions opts;
    opts.mode = config.mode;
    opts.shifts = config.shifts;
    opts.threads = config.threads;
    const auto rows = regime_sweep(config.sweep, opts);

    Table t;
    t.columns = {"gamma",    "epsilon",   "Delta",         "Omega",         "phi",
                 "omega_L",  "n",         "Gamma_dec",     "Gamma_pop",     "tau_dec",
                 "tau_zeno", "ratio_derived", "ratio_paper", "cond_derived", "cond_paper",
                 "angular_lhs", "sufficient_margin", "status"};
    for (const auto& r : rows) {
        const auto& p = r.point;
        const auto& v = r.verdict;
        t.rows.push_back({num(p.gamma), num(p.epsilon), num(p.Delta), num(p.Omega), num(p.phi), num(p.omega_L),
                          num(p.n), num(r.Gamma_dec), num(r.Gamma_pop), num(r.tau_dec), num(r.tau_zeno),
                          num(v.ratio_derived), num(v.ratio_paper), v.condition_derived, v.condition_paper,
                          num(v.angular_lhs), num(v.sufficient_margin), r.status});
    }
    return render("sweep", config, t);
}

std::string cmd_oracle(const RunConfig& config)
{
    const auto& o = config.oracle;

    Table davies;
    davies.columns = {"R", "Delta_E", "bandwidth", "dimension", "max_deviation", "unitarity_error", "weight_sum"};
    for (const auto& [R, dE] : o.davies) {
        const DaviesModel model{o.Gamma, R, dE};
        const DaviesSolver solver(model, o.dimension_cap);
        double unitarity = 0.0;
        for (int k = 0; k <= 4; ++k)
            unitarity = std::max(unitarity, solver.unitarity_error(o.t_max * k / 4.0));
        double wsum = 0.0;
        for (double w : solver.reference_weights())
            wsum += w;
        davies.rows.push_back({R, num(dE), num(R * dE), static_cast<long long>(model.dimension()),
                               num(solver.max_deviation(o.t_max, o.time_samples)), num(unitarity), num(wsum)});
    }

    Table rates;
    rates.columns = {"rate", "gamma", "epsilon", "Delta", "Omega", "phi", "omega_L", "analytic", "fitted",
                     "relative_error"};
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw_bath = [&] {
        SqueezedVacuumParams b;
        b.gamma = 0.5 + 1.5 * unit(rng);
        b.epsilon = 0.9 * b.gamma * unit(rng);
        b.phi = 2.0 * std::numbers::pi * unit(rng);
        b.omega_L = 5.0 + 45.0 * unit(rng);
        return b;
    };
    auto draw_delta = [&] { return (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 4.5 * unit(rng)); };

    for (int kind = 0; kind < 2; ++kind) {
        std::size_t done = 0;
        for (std::size_t attempt = 0; done < o.rate_draws && attempt < 100 * (o.rate_draws + 1); ++attempt) {
            const auto bath = draw_bath();
            const DriveParams drive{kind == 0 ? 0.0 : 20.0 * unit(rng), draw_delta()};
            const std::string label = kind == 0 ? "Gamma_pop" : "Gamma_dec";
            try {
                const auto shifts = kind == 0 ? SqueezingShifts::zero() : decoupling_shifts(bath, drive, unit(rng));
                // keep to draws whose Bloch generator is damped in every direction
                const auto c = evaluate_coefficients(bath, drive, shifts);
                if (c.n_tilde < 0.0 || relaxation_abscissa(build_liouvillian(bath, drive, c)) >= 0.0)
                    continue;
                const auto check = kind == 0 ? population_rate_check(bath, drive, shifts, config.tolerance * 0.1)
                                             : quadrature_rate_check(bath, drive, shifts, config.tolerance * 0.1);
                rates.rows.push_back({label, num(bath.gamma), num(bath.epsilon), num(drive.Delta), num(drive.Omega),
                                      num(bath.phi), num(bath.omega_L), num(check.analytic), num(check.fitted),
                                      num(check.relative_error())});
                ++done;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::UnphysicalCoefficients && e.kind() != ErrorKind::IllConditioned)
                    throw;
            }
        }
    }

    const json cfg = provenance_config(config);
    if (config.output.format == "json")
        return with_json_provenance("oracle", cfg, json{{"davies", davies.to_json()}, {"rates", rates.to_json()}});
    return with_csv_provenance("oracle", cfg,
                               "# section: davies\n" + davies.to_csv() + "# section: rates\n" + rates.to_csv());
}

// ---------------------------------------------------------------------------
// command line

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string format;
    std::string mode;
    int threads = -1;
    double tolerance = 0.0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonFlags& f)
{
    sub->add_option("--config", f.config_path, "Configuration file (JSON or INI-style key = value)");
    sub->add_option("--out", f.out, "Output path, '-' for stdout");
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--mode", f.mode, "Condition mode used for classification")->check(CLI::IsMember({"paper", "derived"}));
    sub->add_option("--threads", f.threads, "Worker threads for sweep (overrides SQZ_THREADS)")->check(CLI::NonNegativeNumber);
    sub->add_option("--tolerance", f.tolerance, "Integrator relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--set", f.overrides, "Override a config key, e.g. --set bath.gamma=2");
}

RunConfig resolve_config(const CommonFlags& f)
{
    json tree = json::object();
    if (!f.config_path.empty())
        tree = parse_config_text(read_file(f.config_path));
    if (!tree.is_object())
        throw ConfigError("configuration root must be an object");
    if (!tree.contains("threads")) {
        if (const char* env = std::getenv("SQZ_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || v < 0)
                throw ConfigError("SQZ_THREADS must be a non-negative integer");
            tree["threads"] = v;
        }
    }
    for (const auto& o : f.overrides)
        apply_override(tree, o);
    if (!f.out.empty())
        tree["output"]["path"] = f.out;
    if (!f.format.empty())
        tree["output"]["format"] = f.format;
    if (!f.mode.empty())
        tree["mode"] = f.mode;
    if (f.threads >= 0)
        tree["threads"] = f.threads;
    if (f.tolerance > 0.0)
        tree["tolerance"] = f.tolerance;
    return config_from_json(tree);
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out)
{
    if (config.output.path == "-" || config.output.path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(config.output.path, std::ios::binary);
    if (!f)
        throw std::ios_base::failure("cannot open '" + config.output.path + "' for writing");
    f << text;
    if (!f)
        throw std::ios_base::failure("write to '" + config.output.path + "' failed");
}

} // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Driven two-level atom in a finite-bandwidth squeezed vacuum: spectra, Bloch dynamics, "
                 "weak-measurement decoherence and Zeno timescales, regime sweeps."};
    app.require_subcommand(1);
    app.footer("Configuration keys and defaults:\n" + default_config_help());

    CommonFlags flags;
    struct Entry {
        const char* name;
        const char* help;
        std::string (*run)(const RunConfig&);
    };
    const Entry entries[] = {
        {"spectrum", "Tabulate N(omega) and M(omega) around the carrier", cmd_spectrum},
        {"evolve", "Integrate the master equation and export the Bloch trajectory", cmd_evolve},
        {"timescales", "Decay rates, weak-value timescales and coherence conditions", cmd_timescales},
        {"sweep", "Classify a parameter grid", cmd_sweep},
        {"oracle", "Davies-model convergence and fitted-vs-analytic rate checks", cmd_oracle},
    };
    std::vector<std::pair<CLI::App*, const Entry*>> subs;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, flags);
        subs.emplace_back(sub, &e);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    const Entry* chosen = nullptr;
    for (const auto& [sub, entry] : subs)
        if (sub->parsed())
            chosen = entry;

    RunConfig config;
    try {
        config = resolve_config(flags);
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    }

    std::string text;
    try {
        text = chosen->run(config);
    } catch (const Error& e) {
        const json report = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
        err << "computation error: " << e.what() << "\n";
        try {
            write_output(config, report.dump(2) + "\n", out);
        } catch (const std::exception&) {
        }
        return exit_computation;
    }

    try {
        write_output(config, text, out);
    } catch (const std::exception& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

} // namespace sqz

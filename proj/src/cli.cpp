#include "tempsde/cli.hpp"

#include "tempsde/report_io.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <functional>

namespace tempsde::cli {

namespace {

struct LoadedSeries {
    TemperatureSeries series;
    std::size_t leap_days_removed = 0;
};

LoadedSeries load_series(const std::string& path) {
    auto stripped = strip_leap_days_counted(read_csv_file(path));
    return {std::move(stripped.series), stripped.removed};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    return out;
}

// Maps the error taxonomy onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const EstimationError& e) {
        err << "estimation failure: " << e.what() << '\n';
        return kEstimationFailure;
    } catch (const std::domain_error& e) {
        err << "estimation failure: " << e.what() << '\n';
        return kEstimationFailure;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace

ModelParameters default_synthetic_parameters() {
    ModelParameters p;
    p.seasonal = {26.4, -7.58e-5, 1.75, 0.531, 0.0};
    p.kappa_t = 0.1872;
    p.vol = {0.877, 0.419, 0.989};
    return p;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

int run_describe(const DescribeArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto loaded = load_series(args.input);
        const auto& s = loaded.series;
        if (s.empty()) throw InputError("no observations in '" + args.input + "'");

        const auto temps = s.temperatures();
        const auto temp_summary = describe(temps);
        const auto temp_ad = try_normality(temps);
        std::optional<DescriptiveSummary> precip_summary;
        std::optional<NormalityTestResult> precip_ad;
        if (s.has_precip()) {
            const auto precip = s.precipitation();
            precip_summary = describe(precip);
            precip_ad = try_normality(precip);
        }

        Json doc{{"n_obs", s.size()},
                 {"start", s[0].date.iso()},
                 {"end", s[s.size() - 1].date.iso()},
                 {"leap_days_removed", loaded.leap_days_removed},
                 {"temperature", to_json(temp_summary)}};
        doc["temperature_normality"] = temp_ad ? to_json(*temp_ad) : Json(nullptr);
        doc["precipitation"] = precip_summary ? to_json(*precip_summary) : Json(nullptr);
        doc["precipitation_normality"] = precip_ad ? to_json(*precip_ad) : Json(nullptr);

        if (args.out_json) open_output(*args.out_json) << doc.dump(2) << '\n';
        if (args.json)
            out << doc.dump(2) << '\n';
        else
            out << format_describe_table(temp_summary, temp_ad, precip_summary, precip_ad);
        return kOk;
    });
}

int run_fit(const FitArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto loaded = load_series(args.input);
        const auto report = fit_full_model(loaded.series, loaded.leap_days_removed);
        write_report_file(args.out_report, report);
        const auto vol_path =
            args.vol_csv.value_or(sibling_path(args.out_report, "_monthly_vol.csv"));
        auto vol_out = open_output(vol_path);
        write_monthly_vol_csv(vol_out, report.monthly_vol);
        out << format_fit_tables(report);
        return kOk;
    });
}

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto report = read_report_file(args.report);
        SimulationConfig cfg;
        cfg.n_paths = args.n_paths;
        cfg.n_days = args.n_days.value_or(report.meta.n_obs);
        cfg.master_seed = args.seed;
        cfg.constant_vol_override = args.vol_override;
        cfg.t0_temp = args.t0;
        if (cfg.n_paths < 2) throw InputError("simulate needs --paths >= 2");
        if (args.threads) omp_set_num_threads(*args.threads);

        const auto ens =
            simulate_paths(report.seasonal, report.kappa.kappa_t, report.volatility, cfg);
        {
            auto csv = open_output(args.out);
            write_ensemble_summary_csv(csv, ens);
        }
        if (args.full_paths) {
            auto csv = open_output(sibling_path(args.out, "_paths.csv"));
            write_full_paths_csv(csv, ens);
        }
        out << "simulated " << ens.n_paths << " paths x " << ens.n_days << " days (seed "
            << args.seed << "); volatility floor hits " << ens.vol_floor_hits << "/"
            << ens.vol_updates << '\n';
        return kOk;
    });
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto loaded = load_series(args.input);
        auto report = fit_full_model(loaded.series, loaded.leap_days_removed);
        EvaluationOptions opts;
        opts.n_paths = args.n_paths;
        opts.seed = args.seed;
        if (opts.n_paths < 2) throw InputError("evaluate needs --paths >= 2");
        const auto metrics = evaluate_model(loaded.series, report, opts);

        Json doc = to_json(metrics);
        doc["n_paths"] = args.n_paths;
        doc["seed"] = args.seed;
        if (args.out_json) {
            report.metrics = metrics;
            report.meta.evaluation_seed = args.seed;
            report.meta.evaluation_paths = args.n_paths;
            write_report_file(*args.out_json, report);
        }
        out << doc.dump(2) << '\n';
        return kOk;
    });
}

int run_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ModelParameters params = default_synthetic_parameters();
        if (args.report) {
            const auto report = read_report_file(*args.report);
            params.seasonal = report.seasonal;
            params.kappa_t = report.kappa.kappa_t;
            params.vol = report.volatility;
        }
        if (args.years < 1) throw InputError("--years must be >= 1");
        const auto series =
            generate_synthetic_series(params.seasonal, params.kappa_t, params.vol,
                                      args.start_year, args.years, args.seed, args.vol_override);
        auto csv = open_output(args.out);
        write_csv(csv, series);
        out << "wrote " << series.size() << " days to " << args.out << '\n';
        return kOk;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Seasonal Ornstein-Uhlenbeck temperature model: fit, simulate, evaluate"};
    app.require_subcommand(1);

    DescribeArgs describe_args;
    auto* describe_cmd = app.add_subcommand("describe", "Descriptive statistics and normality");
    describe_cmd->add_option("--input", describe_args.input, "Daily CSV")->required();
    describe_cmd->add_option("--out", describe_args.out_json, "Write JSON summary here");
    describe_cmd->add_flag("--json", describe_args.json, "Print JSON instead of a table");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate all model parameters");
    fit_cmd->add_option("--input", fit_args.input, "Daily CSV")->required();
    fit_cmd->add_option("--out", fit_args.out_report, "Report JSON")->required();
    fit_cmd->add_option("--vol-csv", fit_args.vol_csv, "Monthly volatility CSV");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo ensemble from a report");
    sim_cmd->add_option("--report", sim_args.report, "Report JSON")->required();
    sim_cmd->add_option("--paths", sim_args.n_paths, "Number of paths");
    sim_cmd->add_option("--days", sim_args.n_days, "Days per path (default: report n_obs)");
    sim_cmd->add_option("--seed", sim_args.seed, "Master seed");
    sim_cmd->add_option("--out", sim_args.out, "Summary CSV")->required();
    sim_cmd->add_flag("--full-paths", sim_args.full_paths, "Also write the path matrix");
    sim_cmd->add_option("--vol-override", sim_args.vol_override, "Constant volatility");
    sim_cmd->add_option("--t0", sim_args.t0, "Initial temperature (default: seasonal mean)");
    sim_cmd->add_option("--threads", sim_args.threads, "OpenMP threads");

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "Fit, simulate and score the mean path");
    eval_cmd->add_option("--input", eval_args.input, "Daily CSV")->required();
    eval_cmd->add_option("--paths", eval_args.n_paths, "Number of paths");
    eval_cmd->add_option("--seed", eval_args.seed, "Master seed");
    eval_cmd->add_option("--out", eval_args.out_json, "Write the report with metrics here");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic daily series");
    synth_cmd->add_option("--report", synth_args.report, "Parameters from a report");
    synth_cmd->add_option("--years", synth_args.years, "Number of 365-day years");
    synth_cmd->add_option("--start-year", synth_args.start_year, "First calendar year");
    synth_cmd->add_option("--seed", synth_args.seed, "Seed");
    synth_cmd->add_option("--out", synth_args.out, "Output CSV")->required();
    synth_cmd->add_option("--vol-override", synth_args.vol_override, "Constant volatility");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    if (describe_cmd->parsed()) return run_describe(describe_args, out, err);
    if (fit_cmd->parsed()) return run_fit(fit_args, out, err);
    if (sim_cmd->parsed()) return run_simulate(sim_args, out, err);
    if (eval_cmd->parsed()) return run_evaluate(eval_args, out, err);
    return run_synth(synth_args, out, err);
}

} // namespace tempsde::cli

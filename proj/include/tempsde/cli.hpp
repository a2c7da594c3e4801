#pragma once

#include "tempsde/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tempsde::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kEstimationFailure = 3 };

/// Parameters used by `synth` when no report is given.
struct ModelParameters {
    SeasonalMeanParams seasonal;
    double kappa_t = 0.0;
    VolatilityModelParams vol;
};
ModelParameters default_synthetic_parameters();

struct DescribeArgs {
    std::string input;
    std::optional<std::string> out_json;
    bool json = false; // JSON instead of the text table on stdout
};

struct FitArgs {
    std::string input;
    std::string out_report;
    std::optional<std::string> vol_csv; // default: <report stem>_monthly_vol.csv
};

struct SimulateArgs {
    std::string report;
    std::size_t n_paths = 1000;
    std::optional<std::size_t> n_days; // default: report n_obs
    std::uint64_t seed = 0;
    std::string out;
    bool full_paths = false; // also write <out stem>_paths.csv
    std::optional<double> vol_override;
    std::optional<double> t0;
    std::optional<int> threads;
};

struct EvaluateArgs {
    std::string input;
    std::size_t n_paths = 1000;
    std::uint64_t seed = 0;
    std::optional<std::string> out_json;
};

struct SynthArgs {
    std::optional<std::string> report;
    int years = 24;
    int start_year = 2000;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<double> vol_override;
};

int run_describe(const DescribeArgs& args, std::ostream& out, std::ostream& err);
int run_fit(const FitArgs& args, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int run_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int run_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "dir/name.ext" -> "dir/name<suffix>"
std::string sibling_path(const std::string& path, const std::string& suffix);

} // namespace tempsde::cli

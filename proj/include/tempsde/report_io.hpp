#pragma once

#include "tempsde/pipeline.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace tempsde {

using Json = nlohmann::ordered_json;

Json to_json(const DescriptiveSummary& s);
Json to_json(const NormalityTestResult& r);
Json to_json(const FitMetrics& m);

/// Versioned report document. Field layout:
///   seasonal{a_t,b_t,c_t,psi,r2}, kappa_t, kappa_diagnostics{...},
///   daily_adjustment_fraction, vol{sigma_bar,sigma_sigma,kappa_sigma},
///   monthly_vol[{year,month,sigma,n_days}], metrics{rmse,mape_pct,r2}|null,
///   descriptive{...}, normality{...},
///   meta{n_obs,start,end,leap_days_removed,schema_version,...}
Json report_to_json(const FitReport& report);

/// Throws InputError on a missing field or an unsupported schema_version.
FitReport report_from_json(const Json& doc);

void write_report_file(const std::string& path, const FitReport& report);
FitReport read_report_file(const std::string& path);

/// `year,month,sigma`
void write_monthly_vol_csv(std::ostream& out, const MonthlyVolatilitySeries& vols);
/// `day,mean,sd,p05,p95`; sd and quantiles need at least two paths.
void write_ensemble_summary_csv(std::ostream& out, const SimulatedEnsemble& ensemble);
/// `day,path_0,...,path_{k-1}`
void write_full_paths_csv(std::ostream& out, const SimulatedEnsemble& ensemble);

/// Aligned text in the layout of the descriptive statistics table.
std::string format_describe_table(const DescriptiveSummary& temp,
                                  const std::optional<NormalityTestResult>& temp_ad,
                                  const std::optional<DescriptiveSummary>& precip,
                                  const std::optional<NormalityTestResult>& precip_ad);

/// Seasonal, volatility and mean-reversion parameter tables, plus metrics
/// when present.
std::string format_fit_tables(const FitReport& report);

} // namespace tempsde

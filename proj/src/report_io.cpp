#include "tempsde/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace tempsde {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

double read_double(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::optional<double> read_optional(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

CalendarDay read_date(const Json& j) {
    auto d = CalendarDay::parse(j.get<std::string>());
    if (!d) throw InputError("report: bad date '" + j.get<std::string>() + "'");
    return *d;
}

DescriptiveSummary summary_from_json(const Json& j) {
    DescriptiveSummary s;
    s.n = j.at("n").get<std::size_t>();
    s.mean = j.at("mean").get<double>();
    s.median = j.at("median").get<double>();
    s.sd = j.at("sd").get<double>();
    s.skewness = read_optional(j.at("skewness"));
    s.excess_kurtosis = read_optional(j.at("excess_kurtosis"));
    s.min = j.at("min").get<double>();
    s.max = j.at("max").get<double>();
    return s;
}

NormalityTestResult normality_from_json(const Json& j) {
    NormalityTestResult r;
    r.n = j.at("n").get<std::size_t>();
    r.a_squared = j.at("a_squared").get<double>();
    r.a_squared_adjusted = j.at("a_squared_adjusted").get<double>();
    r.p_value = j.at("p_value").get<double>();
    r.reject_at_5pct = j.at("reject_at_5pct").get<bool>();
    return r;
}

Json optional_normality(const std::optional<NormalityTestResult>& r) {
    return r ? to_json(*r) : Json(nullptr);
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_opt(const char* spec, const std::optional<double>& v) {
    return v ? fmt(spec, *v) : std::string("undefined");
}

} // namespace

Json to_json(const DescriptiveSummary& s) {
    return Json{{"n", s.n},
                {"mean", s.mean},
                {"median", s.median},
                {"sd", s.sd},
                {"skewness", optional_or_null(s.skewness)},
                {"excess_kurtosis", optional_or_null(s.excess_kurtosis)},
                {"min", s.min},
                {"max", s.max}};
}

Json to_json(const NormalityTestResult& r) {
    return Json{{"n", r.n},
                {"a_squared", r.a_squared},
                {"a_squared_adjusted", r.a_squared_adjusted},
                {"p_value", r.p_value},
                {"p_value_display", format_p_value(r.p_value)},
                {"reject_at_5pct", r.reject_at_5pct}};
}

Json to_json(const FitMetrics& m) {
    return Json{{"rmse", m.rmse}, {"mape_pct", m.mape_pct}, {"r2", m.r_squared}};
}

Json report_to_json(const FitReport& rep) {
    Json doc;
    doc["seasonal"] = Json{{"a_t", rep.seasonal.a_t},
                           {"b_t", rep.seasonal.b_t},
                           {"c_t", rep.seasonal.c_t},
                           {"psi", rep.seasonal.psi},
                           {"r2", number_or_null(rep.seasonal.r_squared_fit)}};
    doc["kappa_t"] = rep.kappa.kappa_t;
    doc["kappa_diagnostics"] = Json{{"g_at_kappa", rep.kappa.g_at_kappa},
                                    {"g_scale", rep.kappa.g_scale},
                                    {"ratio", rep.kappa.ratio},
                                    {"n_terms", rep.kappa.n_terms}};
    doc["daily_adjustment_fraction"] = rep.daily_adjustment_fraction();
    doc["vol"] = Json{{"sigma_bar", rep.volatility.sigma_bar},
                      {"sigma_sigma", rep.volatility.sigma_sigma},
                      {"kappa_sigma", rep.volatility.kappa_sigma}};

    Json months = Json::array();
    for (const auto& m : rep.monthly_vol.entries)
        months.push_back(
            Json{{"year", m.year}, {"month", m.month}, {"sigma", m.sigma}, {"n_days", m.n_days}});
    doc["monthly_vol"] = std::move(months);

    doc["metrics"] = rep.metrics ? to_json(*rep.metrics) : Json(nullptr);

    Json descriptive{{"temperature", to_json(rep.temperature_summary)}};
    descriptive["precipitation"] =
        rep.precipitation_summary ? to_json(*rep.precipitation_summary) : Json(nullptr);
    doc["descriptive"] = std::move(descriptive);
    doc["normality"] = Json{{"temperature", optional_normality(rep.temperature_normality)},
                            {"residuals", optional_normality(rep.residual_normality)}};

    Json meta{{"n_obs", rep.meta.n_obs},
              {"start", rep.meta.start.iso()},
              {"end", rep.meta.end.iso()},
              {"leap_days_removed", rep.meta.leap_days_removed},
              {"schema_version", rep.meta.schema_version}};
    meta["evaluation_seed"] =
        rep.meta.evaluation_seed ? Json(*rep.meta.evaluation_seed) : Json(nullptr);
    meta["evaluation_paths"] =
        rep.meta.evaluation_paths ? Json(*rep.meta.evaluation_paths) : Json(nullptr);
    doc["meta"] = std::move(meta);
    return doc;
}

FitReport report_from_json(const Json& doc) {
    try {
        FitReport rep;
        const auto& meta = doc.at("meta");
        rep.meta.schema_version = meta.at("schema_version").get<int>();
        if (rep.meta.schema_version != kReportSchemaVersion)
            throw InputError("unsupported report schema_version " +
                             std::to_string(rep.meta.schema_version));
        rep.meta.n_obs = meta.at("n_obs").get<std::size_t>();
        rep.meta.start = read_date(meta.at("start"));
        rep.meta.end = read_date(meta.at("end"));
        rep.meta.leap_days_removed = meta.at("leap_days_removed").get<std::size_t>();
        if (!meta.at("evaluation_seed").is_null())
            rep.meta.evaluation_seed = meta.at("evaluation_seed").get<std::uint64_t>();
        if (!meta.at("evaluation_paths").is_null())
            rep.meta.evaluation_paths = meta.at("evaluation_paths").get<std::size_t>();

        const auto& s = doc.at("seasonal");
        rep.seasonal.a_t = s.at("a_t").get<double>();
        rep.seasonal.b_t = s.at("b_t").get<double>();
        rep.seasonal.c_t = s.at("c_t").get<double>();
        rep.seasonal.psi = s.at("psi").get<double>();
        rep.seasonal.r_squared_fit = read_double(s.at("r2"));

        rep.kappa.kappa_t = doc.at("kappa_t").get<double>();
        const auto& kd = doc.at("kappa_diagnostics");
        rep.kappa.g_at_kappa = kd.at("g_at_kappa").get<double>();
        rep.kappa.g_scale = kd.at("g_scale").get<double>();
        rep.kappa.ratio = kd.at("ratio").get<double>();
        rep.kappa.n_terms = kd.at("n_terms").get<std::size_t>();

        const auto& v = doc.at("vol");
        rep.volatility.sigma_bar = v.at("sigma_bar").get<double>();
        rep.volatility.sigma_sigma = v.at("sigma_sigma").get<double>();
        rep.volatility.kappa_sigma = v.at("kappa_sigma").get<double>();

        for (const auto& m : doc.at("monthly_vol"))
            rep.monthly_vol.entries.push_back({m.at("year").get<int>(), m.at("month").get<int>(),
                                               m.at("sigma").get<double>(),
                                               m.at("n_days").get<std::size_t>()});

        if (const auto& m = doc.at("metrics"); !m.is_null())
            rep.metrics = FitMetrics{m.at("rmse").get<double>(), m.at("mape_pct").get<double>(),
                                     m.at("r2").get<double>()};

        const auto& d = doc.at("descriptive");
        rep.temperature_summary = summary_from_json(d.at("temperature"));
        if (!d.at("precipitation").is_null())
            rep.precipitation_summary = summary_from_json(d.at("precipitation"));
        const auto& nt = doc.at("normality");
        if (!nt.at("temperature").is_null())
            rep.temperature_normality = normality_from_json(nt.at("temperature"));
        if (!nt.at("residuals").is_null())
            rep.residual_normality = normality_from_json(nt.at("residuals"));
        return rep;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

void write_report_file(const std::string& path, const FitReport& report) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << report_to_json(report).dump(2) << '\n';
}

FitReport read_report_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open report '" + path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw InputError("report '" + path + "' is not valid JSON: " + e.what());
    }
    return report_from_json(doc);
}

void write_monthly_vol_csv(std::ostream& out, const MonthlyVolatilitySeries& vols) {
    out << "year,month,sigma\n";
    for (const auto& m : vols.entries)
        out << m.year << ',' << m.month << ',' << format_double(m.sigma) << '\n';
}

void write_ensemble_summary_csv(std::ostream& out, const SimulatedEnsemble& e) {
    const auto summary = ensemble_summary(e);
    const auto p05 = ensemble_quantile(e, 0.05);
    const auto p95 = ensemble_quantile(e, 0.95);
    out << "day,mean,sd,p05,p95\n";
    for (std::size_t d = 0; d < e.n_days; ++d)
        out << d << ',' << format_double(summary.mean_path[d]) << ','
            << format_double(summary.cross_path_sd[d]) << ',' << format_double(p05[d]) << ','
            << format_double(p95[d]) << '\n';
}

void write_full_paths_csv(std::ostream& out, const SimulatedEnsemble& e) {
    out << "day";
    for (std::size_t p = 0; p < e.n_paths; ++p) out << ",path_" << p;
    out << '\n';
    for (std::size_t d = 0; d < e.n_days; ++d) {
        out << d;
        for (std::size_t p = 0; p < e.n_paths; ++p) out << ',' << format_double(e.at(p, d));
        out << '\n';
    }
}

std::string format_describe_table(const DescriptiveSummary& temp,
                                  const std::optional<NormalityTestResult>& temp_ad,
                                  const std::optional<DescriptiveSummary>& precip,
                                  const std::optional<NormalityTestResult>& precip_ad) {
    std::ostringstream os;
    char line[160];
    auto row = [&](const char* label, const std::string& t, const std::string& p) {
        std::snprintf(line, sizeof line, "%-16s %16s %18s\n", label, t.c_str(),
                      precip ? p.c_str() : "");
        os << line;
    };
    std::snprintf(line, sizeof line, "%-16s %16s %18s\n", "", "Temperature (C)",
                  precip ? "Precipitation (mm)" : "");
    os << line;
    const auto& p = precip.value_or(DescriptiveSummary{});
    row("N", std::to_string(temp.n), std::to_string(p.n));
    row("Mean", fmt("%.2f", temp.mean), fmt("%.2f", p.mean));
    row("Median", fmt("%.2f", temp.median), fmt("%.3f", p.median));
    row("SD", fmt("%.2f", temp.sd), fmt("%.2f", p.sd));
    row("Kurtosis", fmt_opt("%.2f", temp.excess_kurtosis), fmt_opt("%.2f", p.excess_kurtosis));
    row("Skew", fmt_opt("%.2f", temp.skewness), fmt_opt("%.2f", p.skewness));
    row("Max", fmt("%.2f", temp.max), fmt("%.2f", p.max));
    row("Min", fmt("%.2f", temp.min), fmt("%.2f", p.min));
    auto a2 = [](const std::optional<NormalityTestResult>& r) {
        return r ? fmt("%.3f", r->a_squared) : std::string("n/a");
    };
    auto pv = [](const std::optional<NormalityTestResult>& r) {
        return r ? format_p_value(r->p_value) : std::string("n/a");
    };
    row("A^2 statistic", a2(temp_ad), a2(precip_ad));
    row("p-value (5%)", pv(temp_ad), pv(precip_ad));
    return os.str();
}

std::string format_fit_tables(const FitReport& rep) {
    std::ostringstream os;
    char line[160];
    auto row = [&](const char* label, const std::string& value) {
        std::snprintf(line, sizeof line, "  %-22s %14s\n", label, value.c_str());
        os << line;
    };
    os << "Seasonal mean function\n";
    row("a_T", fmt("%.4f", rep.seasonal.a_t));
    row("b_T", fmt("%.3e", rep.seasonal.b_t));
    row("c_T", fmt("%.4f", rep.seasonal.c_t));
    row("psi", fmt("%.4f", rep.seasonal.psi));
    row("R^2", fmt("%.4f", rep.seasonal.r_squared_fit));
    os << "Mean-reverting volatility process\n";
    row("sigma_bar", fmt("%.4f", rep.volatility.sigma_bar));
    row("sigma_sigma", fmt("%.4f", rep.volatility.sigma_sigma));
    row("kappa_sigma", fmt("%.4f", rep.volatility.kappa_sigma));
    os << "Mean reversion\n";
    row("kappa_T", fmt("%.4f", rep.kappa.kappa_t));
    row("daily adjustment", fmt("%.4f", rep.daily_adjustment_fraction()));
    if (rep.metrics) {
        os << "Model evaluation\n";
        row("RMSE", fmt("%.4f", rep.metrics->rmse));
        row("MAPE (%)", fmt("%.4f", rep.metrics->mape_pct));
        row("R^2", fmt("%.5f", rep.metrics->r_squared));
    }
    return os.str();
}

} // namespace tempsde

#pragma once

#include "tempsde/errors.hpp"

#include <compare>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tempsde {

bool is_leap_year(int year) noexcept;
int days_in_month(int year, int month) noexcept;

struct CalendarDay {
    int year = 2000;
    int month = 1;
    int day = 1;

    bool valid() const noexcept;
    bool is_leap_day() const noexcept { return month == 2 && day == 29; }

    /// Next Gregorian day.
    CalendarDay next() const noexcept;
    /// Next day on the 365-day calendar (Feb 29 skipped).
    CalendarDay next_no_leap() const noexcept;

    /// Parses `YYYY-MM-DD`; nullopt if malformed or not a real date.
    static std::optional<CalendarDay> parse(std::string_view text);
    std::string iso() const;

    auto operator<=>(const CalendarDay&) const = default;
};

struct DailyRecord {
    CalendarDay date;
    double temp = 0.0;            // degrees Celsius
    std::optional<double> precip; // millimetres

    bool operator==(const DailyRecord&) const = default;
};

/// Calendar-indexed daily temperature observations with strictly
/// increasing dates. Whether leap days are present depends on the producer;
/// see strip_leap_days().
class TemperatureSeries {
public:
    static constexpr double kMinTemp = -90.0;
    static constexpr double kMaxTemp = 60.0;

    TemperatureSeries() = default;
    /// Validates ordering, temperature range and precipitation sign.
    explicit TemperatureSeries(std::vector<DailyRecord> records);

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    const DailyRecord& operator[](std::size_t i) const { return records_[i]; }
    const std::vector<DailyRecord>& records() const noexcept { return records_; }
    auto begin() const noexcept { return records_.begin(); }
    auto end() const noexcept { return records_.end(); }

    bool has_precip() const noexcept;
    std::vector<double> temperatures() const;
    /// Precipitation values of the records that carry one.
    std::vector<double> precipitation() const;

    /// True if every step is exactly one day on the 365-day calendar.
    bool is_contiguous_no_leap() const noexcept;

    bool operator==(const TemperatureSeries&) const = default;

private:
    std::vector<DailyRecord> records_;
};

/// Parses `date,t_avg_c[,precip_mm]` CSV. Leap days are kept.
TemperatureSeries parse_csv(std::istream& in);
TemperatureSeries parse_csv_text(std::string_view text);
TemperatureSeries read_csv_file(const std::string& path);

/// Writes the ingestion format with shortest round-trip number formatting.
void write_csv(std::ostream& out, const TemperatureSeries& series);

struct LeapStripResult {
    TemperatureSeries series;
    std::size_t removed = 0;
};

/// Removes every February 29 and checks that what remains is gap-free on the
/// 365-day calendar. Throws InputError naming the first gap otherwise.
LeapStripResult strip_leap_days_counted(const TemperatureSeries& series);
TemperatureSeries strip_leap_days(const TemperatureSeries& series);

/// (sin(2*pi*t/365), cos(2*pi*t/365)) for 0-based day index t of a
/// leap-stripped series.
std::pair<double, double> seasonal_basis(double t) noexcept;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

} // namespace tempsde

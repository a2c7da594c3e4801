#include "tempsde/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tempsde {

bool is_leap_year(int year) noexcept {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) noexcept {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return kDays[month - 1];
}

bool CalendarDay::valid() const noexcept {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

CalendarDay CalendarDay::next() const noexcept {
    CalendarDay d = *this;
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

CalendarDay CalendarDay::next_no_leap() const noexcept {
    CalendarDay d = next();
    return d.is_leap_day() ? d.next() : d;
}

namespace {

template <typename T>
bool parse_number(std::string_view text, T& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

void check_record(const DailyRecord& r, std::size_t line) {
    if (!std::isfinite(r.temp) || r.temp < TemperatureSeries::kMinTemp ||
        r.temp > TemperatureSeries::kMaxTemp)
        throw InputError("temperature " + format_double(r.temp) + " outside [-90, 60] C", line);
    if (r.precip && (!std::isfinite(*r.precip) || *r.precip < 0.0))
        throw InputError("negative or non-finite precipitation", line);
}

} // namespace

std::optional<CalendarDay> CalendarDay::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    CalendarDay d;
    if (!parse_number(text.substr(0, 4), d.year) || !parse_number(text.substr(5, 2), d.month) ||
        !parse_number(text.substr(8, 2), d.day))
        return std::nullopt;
    if (!d.valid()) return std::nullopt;
    return d;
}

std::string CalendarDay::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

TemperatureSeries::TemperatureSeries(std::vector<DailyRecord> records)
    : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (!records_[i].date.valid())
            throw InputError("invalid calendar date at record " + std::to_string(i));
        check_record(records_[i], 0);
        if (i > 0 && !(records_[i - 1].date < records_[i].date))
            throw InputError("dates not strictly increasing at " + records_[i].date.iso());
    }
}

bool TemperatureSeries::has_precip() const noexcept {
    for (const auto& r : records_)
        if (r.precip) return true;
    return false;
}

std::vector<double> TemperatureSeries::temperatures() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.temp);
    return out;
}

std::vector<double> TemperatureSeries::precipitation() const {
    std::vector<double> out;
    for (const auto& r : records_)
        if (r.precip) out.push_back(*r.precip);
    return out;
}

bool TemperatureSeries::is_contiguous_no_leap() const noexcept {
    for (std::size_t i = 1; i < records_.size(); ++i) {
        if (records_[i].date.is_leap_day() ||
            records_[i - 1].date.next_no_leap() != records_[i].date)
            return false;
    }
    return records_.empty() || !records_.front().date.is_leap_day();
}

TemperatureSeries parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw InputError("empty input, expected CSV header");
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_commas(line);
    const bool with_precip = header.size() == 3 && header[2] == "precip_mm";
    if (header.size() < 2 || header[0] != "date" || header[1] != "t_avg_c" ||
        (header.size() == 3 && !with_precip) || header.size() > 3)
        throw InputError("expected header 'date,t_avg_c[,precip_mm]'", line_no);

    std::vector<DailyRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != header.size())
            throw InputError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);

        DailyRecord rec;
        auto date = CalendarDay::parse(fields[0]);
        if (!date) throw InputError("unparsable date '" + std::string(fields[0]) + "'", line_no);
        rec.date = *date;

        if (fields[1].empty()) throw InputError("missing temperature", line_no);
        if (!parse_number(fields[1], rec.temp))
            throw InputError("unparsable temperature '" + std::string(fields[1]) + "'", line_no);

        if (with_precip && !fields[2].empty()) {
            double p = 0.0;
            if (!parse_number(fields[2], p))
                throw InputError("unparsable precipitation '" + std::string(fields[2]) + "'",
                                 line_no);
            rec.precip = p;
        }
        check_record(rec, line_no);

        if (!records.empty()) {
            const auto& prev = records.back().date;
            if (prev == rec.date) throw InputError("duplicate date " + rec.date.iso(), line_no);
            if (rec.date < prev)
                throw InputError("out-of-order date " + rec.date.iso() + " after " + prev.iso(),
                                 line_no);
        }
        records.push_back(rec);
    }
    return TemperatureSeries(std::move(records));
}

TemperatureSeries parse_csv_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_csv(in);
}

TemperatureSeries read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_csv(in);
}

void write_csv(std::ostream& out, const TemperatureSeries& series) {
    const bool with_precip = series.has_precip();
    out << (with_precip ? "date,t_avg_c,precip_mm\n" : "date,t_avg_c\n");
    for (const auto& r : series) {
        out << r.date.iso() << ',' << format_double(r.temp);
        if (with_precip) {
            out << ',';
            if (r.precip) out << format_double(*r.precip);
        }
        out << '\n';
    }
}

LeapStripResult strip_leap_days_counted(const TemperatureSeries& series) {
    std::vector<DailyRecord> kept;
    kept.reserve(series.size());
    std::size_t removed = 0;
    for (const auto& r : series) {
        if (r.date.is_leap_day()) {
            ++removed;
            continue;
        }
        if (!kept.empty() && kept.back().date.next_no_leap() != r.date)
            throw InputError("gap in series between " + kept.back().date.iso() + " and " +
                             r.date.iso());
        kept.push_back(r);
    }
    return {TemperatureSeries(std::move(kept)), removed};
}

TemperatureSeries strip_leap_days(const TemperatureSeries& series) {
    return strip_leap_days_counted(series).series;
}

std::pair<double, double> seasonal_basis(double t) noexcept {
    const double phase = 2.0 * std::numbers::pi * t / 365.0;
    return {std::sin(phase), std::cos(phase)};
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

} // namespace tempsde

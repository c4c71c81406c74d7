#ifndef SOMKM_INGEST_HPP
#define SOMKM_INGEST_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "somkm/matrix.hpp"

namespace somkm {

/// Feature dimension of every monthly matrix: daily totals for days 1..28.
inline constexpr std::size_t kDaysPerMonth = 28;

struct DateTime {
    int year = 0;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;

    auto operator<=>(const DateTime&) const = default;
};

/// Parses exactly `YYYY-MM-DD HH:MM`, validating the calendar date. Throws BadTimestamp.
DateTime parse_timestamp(std::string_view text);
std::string format_timestamp(const DateTime& t);

int days_in_month(int year, int month) noexcept;

struct MonthKey {
    int year = 0;
    int month = 1;

    auto operator<=>(const MonthKey&) const = default;

    /// `YYYY-MM`
    std::string to_string() const;
    /// Parses `YYYY-MM`; throws InvalidConfig.
    static MonthKey parse(std::string_view text);
};

/// Jan-Jun 2012 followed by Jan-Jun 2013.
std::vector<MonthKey> default_months();

/// Comma-separated `YYYY-MM` list, or the shorthand `paper-default` for default_months().
std::vector<MonthKey> parse_month_list(std::string_view spec);

struct Reading {
    std::string series_id;
    DateTime timestamp;
    double kwh = 0.0;

    bool operator==(const Reading&) const = default;
};

struct ReadingTable {
    std::vector<Reading> rows;  ///< sorted by (series_id, timestamp), unique keys
    std::string source;
    std::optional<std::map<std::string, int>> truth_labels;
    std::vector<std::string> warnings;
};

struct CsvSchema {
    char delimiter = ',';
};

/**
 * Reads `series_id,timestamp,kwh` CSV. Blank lines and trailing CR are
 * ignored. Duplicate (series, timestamp) pairs keep the first occurrence and
 * add a warning.
 */
ReadingTable parse_readings(std::istream& in, const CsvSchema& schema = {}, std::string source = "stream");
ReadingTable read_readings_file(const std::string& path, const CsvSchema& schema = {});

void write_readings_csv(std::ostream& out, const ReadingTable& table);
/// `series_id,archetype`; requires truth_labels.
void write_truth_csv(std::ostream& out, const ReadingTable& table);

struct DroppedSeries {
    std::string series_id;
    std::string reason;

    bool operator==(const DroppedSeries&) const = default;
};

struct MonthlyMatrix {
    MonthKey month;
    std::vector<std::string> series_ids;  ///< sorted, unique; one per row of `values`
    Matrix values;                        ///< n x kDaysPerMonth daily totals
    std::vector<DroppedSeries> dropped;
};

/**
 * Builds one matrix per requested month, in request order. A series enters a
 * month only if it has at least one reading on each of days 1..28; otherwise
 * it is listed in `dropped` with reason `missing_day:<d>` for the first gap.
 * Months are processed in parallel.
 */
std::vector<MonthlyMatrix> build_monthly_matrices(const ReadingTable& table, const std::vector<MonthKey>& months);

/// Noise-free daily total of archetype `archetype` (0-based) on `day` (1-based).
double synth_template(std::size_t archetype, std::size_t n_archetypes, int day, double noise_sigma) noexcept;

/**
 * Labeled synthetic readings. Series `s<i>` follows archetype i mod
 * n_archetypes. Each archetype is a weekly sinusoid
 *
 *     level_a + 1.0 * sin(2*pi*(day-1)/7 + 2*pi*a/n_archetypes)
 *     level_a = 2 + 4*sigma + a * max(2, 10*sigma)
 *
 * The sinusoid sums to zero over days 1..28, so two archetypes sit at least
 * sqrt(28) * max(2, 10*sigma) apart on the feature window. Daily totals get
 * N(0, sigma^2) noise, are clamped at zero and spread evenly over 48
 * half-hour readings.
 */
ReadingTable synth_generate(std::size_t n_series, std::size_t n_archetypes, const std::vector<MonthKey>& months,
                            double noise_sigma, std::uint64_t seed);

}  // namespace somkm

#endif

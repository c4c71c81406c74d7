#include "somkm/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>

#include "somkm/error.hpp"
#include "somkm/random.hpp"

namespace somkm {

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

bool reading_less(const Reading& a, const Reading& b) {
    if (a.series_id != b.series_id) {
        return a.series_id < b.series_id;
    }
    return a.timestamp < b.timestamp;
}

void sort_and_dedupe(ReadingTable& table) {
    std::stable_sort(table.rows.begin(), table.rows.end(), reading_less);
    std::vector<Reading> unique;
    unique.reserve(table.rows.size());
    std::size_t duplicates = 0;
    for (auto& r : table.rows) {
        if (!unique.empty() && unique.back().series_id == r.series_id && unique.back().timestamp == r.timestamp) {
            if (duplicates < 5) {
                table.warnings.push_back("duplicate reading for " + r.series_id + " at " +
                                         format_timestamp(r.timestamp) + " ignored (kept first)");
            }
            ++duplicates;
            continue;
        }
        unique.push_back(std::move(r));
    }
    if (duplicates > 5) {
        table.warnings.push_back(std::to_string(duplicates) + " duplicate readings ignored in total");
    }
    table.rows = std::move(unique);
}

}  // namespace

int days_in_month(int year, int month) noexcept {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) {
        return 0;
    }
    if (month == 2) {
        const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return kDays[month - 1];
}

DateTime parse_timestamp(std::string_view text) {
    auto fail = [&] { return Error(Errc::BadTimestamp, "expected YYYY-MM-DD HH:MM, got '" + std::string(text) + "'"); };
    if (text.size() != 16 || text[4] != '-' || text[7] != '-' || text[10] != ' ' || text[13] != ':') {
        throw fail();
    }
    DateTime t;
    if (!parse_int(text.substr(0, 4), t.year) || !parse_int(text.substr(5, 2), t.month) ||
        !parse_int(text.substr(8, 2), t.day) || !parse_int(text.substr(11, 2), t.hour) ||
        !parse_int(text.substr(14, 2), t.minute)) {
        throw fail();
    }
    if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > days_in_month(t.year, t.month) || t.hour > 23 ||
        t.minute > 59) {
        throw fail();
    }
    return t;
}

std::string format_timestamp(const DateTime& t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d", t.year, t.month, t.day, t.hour, t.minute);
    return buf;
}

std::string MonthKey::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

MonthKey MonthKey::parse(std::string_view text) {
    MonthKey k;
    if (text.size() != 7 || text[4] != '-' || !parse_int(text.substr(0, 4), k.year) ||
        !parse_int(text.substr(5, 2), k.month) || k.month < 1 || k.month > 12) {
        throw Error(Errc::InvalidConfig, "expected month as YYYY-MM, got '" + std::string(text) + "'");
    }
    return k;
}

std::vector<MonthKey> default_months() {
    std::vector<MonthKey> out;
    for (int year : {2012, 2013}) {
        for (int month = 1; month <= 6; ++month) {
            out.push_back({year, month});
        }
    }
    return out;
}

std::vector<MonthKey> parse_month_list(std::string_view spec) {
    if (spec == "paper-default") {
        return default_months();
    }
    std::vector<MonthKey> out;
    for (auto part : split(spec, ',')) {
        out.push_back(MonthKey::parse(part));
    }
    return out;
}

ReadingTable parse_readings(std::istream& in, const CsvSchema& schema, std::string source) {
    ReadingTable table;
    table.source = std::move(source);

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    const std::string expected_header =
        std::string("series_id") + schema.delimiter + "timestamp" + schema.delimiter + "kwh";

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!have_header) {
            if (line != expected_header) {
                throw Error(Errc::MalformedRow, "line " + std::to_string(line_no) + ": expected header '" +
                                                    expected_header + "'");
            }
            have_header = true;
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        const auto fields = split(line, schema.delimiter);
        if (fields.size() != 3) {
            throw Error(Errc::MalformedRow, where + "expected 3 columns, found " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) {
            throw Error(Errc::MalformedRow, where + "empty series_id");
        }
        Reading r;
        r.series_id = std::string(fields[0]);
        try {
            r.timestamp = parse_timestamp(fields[1]);
        } catch (const Error&) {
            throw Error(Errc::BadTimestamp, where + "bad timestamp '" + std::string(fields[1]) + "'");
        }
        const auto kwh_text = fields[2];
        const auto res = std::from_chars(kwh_text.data(), kwh_text.data() + kwh_text.size(), r.kwh);
        if (res.ec != std::errc{} || res.ptr != kwh_text.data() + kwh_text.size()) {
            throw Error(Errc::MalformedRow, where + "kwh '" + std::string(kwh_text) + "' is not a number");
        }
        if (!std::isfinite(r.kwh)) {
            throw Error(Errc::NonFiniteValue, where + "kwh '" + std::string(kwh_text) + "' is not finite");
        }
        if (r.kwh < 0.0) {
            throw Error(Errc::NegativeConsumption, where + "kwh " + std::string(kwh_text) + " is negative");
        }
        table.rows.push_back(std::move(r));
    }
    if (!have_header) {
        throw Error(Errc::MalformedRow, "missing header '" + expected_header + "'");
    }
    sort_and_dedupe(table);
    return table;
}

ReadingTable read_readings_file(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoFailure, "cannot open '" + path + "'");
    }
    return parse_readings(in, schema, path);
}

void write_readings_csv(std::ostream& out, const ReadingTable& table) {
    out << "series_id,timestamp,kwh\n";
    char buf[64];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.kwh);
        out << r.series_id << ',' << format_timestamp(r.timestamp) << ',' << buf << '\n';
    }
}

void write_truth_csv(std::ostream& out, const ReadingTable& table) {
    if (!table.truth_labels) {
        throw Error(Errc::InvalidConfig, "table has no truth labels");
    }
    out << "series_id,archetype\n";
    for (const auto& [id, label] : *table.truth_labels) {
        out << id << ',' << label << '\n';
    }
}

std::vector<MonthlyMatrix> build_monthly_matrices(const ReadingTable& table, const std::vector<MonthKey>& months) {
    if (months.empty()) {
        throw Error(Errc::NoRequestedMonths, "no months requested");
    }
    {
        std::set<MonthKey> seen;
        for (const auto& m : months) {
            if (m.month < 1 || m.month > 12) {
                throw Error(Errc::InvalidConfig, "month out of range in " + m.to_string());
            }
            if (!seen.insert(m).second) {
                throw Error(Errc::InvalidConfig, "month " + m.to_string() + " requested twice");
            }
        }
    }

    // Daily sums must not depend on input row order.
    const std::vector<Reading>* rows = &table.rows;
    std::vector<Reading> sorted;
    if (!std::is_sorted(table.rows.begin(), table.rows.end(), reading_less)) {
        sorted = table.rows;
        std::stable_sort(sorted.begin(), sorted.end(), reading_less);
        rows = &sorted;
    }

    struct SeriesRange {
        std::size_t begin;
        std::size_t end;
    };
    std::vector<SeriesRange> series;
    for (std::size_t i = 0; i < rows->size();) {
        std::size_t j = i + 1;
        while (j < rows->size() && (*rows)[j].series_id == (*rows)[i].series_id) {
            ++j;
        }
        series.push_back({i, j});
        i = j;
    }

    std::vector<MonthlyMatrix> out(months.size());
    const auto n_months = static_cast<std::ptrdiff_t>(months.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t mi = 0; mi < n_months; ++mi) {
        const MonthKey key = months[static_cast<std::size_t>(mi)];
        MonthlyMatrix mm;
        mm.month = key;
        mm.values = Matrix(0, kDaysPerMonth);
        const DateTime lo{key.year, key.month, 1, 0, 0};
        const DateTime hi = key.month == 12 ? DateTime{key.year + 1, 1, 1, 0, 0} : DateTime{key.year, key.month + 1, 1, 0, 0};
        std::vector<double> daily(kDaysPerMonth);
        std::vector<bool> present(kDaysPerMonth);
        for (const auto& s : series) {
            const auto first = rows->begin() + static_cast<std::ptrdiff_t>(s.begin);
            const auto last = rows->begin() + static_cast<std::ptrdiff_t>(s.end);
            auto it = std::lower_bound(first, last, lo, [](const Reading& r, const DateTime& t) { return r.timestamp < t; });
            auto end = std::lower_bound(it, last, hi, [](const Reading& r, const DateTime& t) { return r.timestamp < t; });
            if (it == end) {
                continue;
            }
            std::fill(daily.begin(), daily.end(), 0.0);
            std::fill(present.begin(), present.end(), false);
            for (; it != end; ++it) {
                const auto day = static_cast<std::size_t>(it->timestamp.day);
                if (day <= kDaysPerMonth) {
                    daily[day - 1] += it->kwh;
                    present[day - 1] = true;
                }
            }
            const auto gap = std::find(present.begin(), present.end(), false);
            const auto& id = (*rows)[s.begin].series_id;
            if (gap != present.end()) {
                mm.dropped.push_back({id, "missing_day:" + std::to_string(gap - present.begin() + 1)});
                continue;
            }
            mm.series_ids.push_back(id);
            mm.values.append_row(daily);
        }
        out[static_cast<std::size_t>(mi)] = std::move(mm);
    }
    return out;
}

double synth_template(std::size_t archetype, std::size_t n_archetypes, int day, double noise_sigma) noexcept {
    const double spacing = std::max(2.0, 10.0 * noise_sigma);
    const double level = 2.0 + 4.0 * noise_sigma + static_cast<double>(archetype) * spacing;
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(archetype) / static_cast<double>(n_archetypes);
    return level + std::sin(2.0 * std::numbers::pi * static_cast<double>(day - 1) / 7.0 + phase);
}

ReadingTable synth_generate(std::size_t n_series, std::size_t n_archetypes, const std::vector<MonthKey>& months,
                            double noise_sigma, std::uint64_t seed) {
    if (!std::isfinite(noise_sigma) || noise_sigma < 0.0) {
        throw Error(Errc::InvalidConfig, "noise_sigma must be finite and non-negative");
    }
    if (n_archetypes == 0 || (n_series > 0 && n_archetypes > n_series)) {
        throw Error(Errc::InvalidArchetypeCount, std::to_string(n_archetypes) + " archetypes for " +
                                                     std::to_string(n_series) + " series");
    }
    if (std::set<MonthKey>(months.begin(), months.end()).size() != months.size()) {
        throw Error(Errc::InvalidConfig, "synthetic months must be distinct");
    }
    ReadingTable table;
    table.source = "synthetic";
    table.truth_labels.emplace();
    Rng rng(seed);
    constexpr int kSlotsPerDay = 48;
    for (std::size_t i = 0; i < n_series; ++i) {
        const std::string id = "s" + std::to_string(i);
        const std::size_t archetype = i % n_archetypes;
        (*table.truth_labels)[id] = static_cast<int>(archetype);
        for (const auto& m : months) {
            const int n_days = days_in_month(m.year, m.month);
            for (int day = 1; day <= n_days; ++day) {
                const double noise = noise_sigma * rng.normal();
                const double total = std::max(0.0, synth_template(archetype, n_archetypes, day, noise_sigma) + noise);
                const double slot = total / kSlotsPerDay;
                for (int s = 0; s < kSlotsPerDay; ++s) {
                    table.rows.push_back({id, DateTime{m.year, m.month, day, s / 2, (s % 2) * 30}, slot});
                }
            }
        }
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), reading_less);
    return table;
}

}  // namespace somkm

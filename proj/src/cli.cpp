#include "somkm/cli.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "somkm/error.hpp"
#include "somkm/ingest.hpp"
#include "somkm/pipeline.hpp"
#include "somkm/serialize.hpp"

namespace somkm::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::IoFailure, "cannot write '" + path + "'");
    f << text;
    if (!f.flush()) throw Error(Errc::IoFailure, "write to '" + path + "' failed");
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
}

const CLI::Validator kMonthSpec(
    [](std::string& value) -> std::string {
        try {
            parse_month_list(value);
        } catch (const Error& e) {
            return e.what();
        }
        return {};
    },
    "YYYY-MM[,YYYY-MM...]|paper-default", "MONTHS");

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-stage SOM + k-means clustering of monthly load profiles", "somkm"};
    app.require_subcommand(1);

    std::string input, output, months_spec, truth_path, config_path, result_path, format = "json";
    std::size_t n_series = 0, n_archetypes = 0;
    std::uint64_t seed = 0;
    double noise = 0.5;

    auto* ingest = app.add_subcommand("ingest", "Validate readings and write the monthly matrix summary (JSON)");
    ingest->add_option("--input", input, "Readings CSV")->required();
    ingest->add_option("--months", months_spec, "Months to build")->required()->check(kMonthSpec);
    ingest->add_option("--out", output, "Summary JSON path")->required();

    auto* synth = app.add_subcommand("synth", "Write a labelled synthetic readings CSV");
    synth->add_option("--series", n_series, "Number of series")->required();
    synth->add_option("--archetypes", n_archetypes, "Number of archetypes")->required();
    synth->add_option("--months", months_spec, "Months to generate")->required()->check(kMonthSpec);
    synth->add_option("--seed", seed, "Random seed")->required();
    synth->add_option("--out", output, "Readings CSV path")->required();
    synth->add_option("--truth", truth_path, "Optional series_id,archetype CSV path");
    synth->add_option("--noise", noise, "Daily-total noise sigma (kWh)")->capture_default_str();

    auto* run = app.add_subcommand("run", "Run the full pipeline and write the result JSON");
    run->add_option("--config", config_path, "Pipeline config JSON")->required();
    run->add_option("--input", input, "Readings CSV")->required();
    run->add_option("--out", output, "Result JSON path")->required();

    auto* sweep = app.add_subcommand("sweep", "Print the silhouette-vs-k report as JSON");
    sweep->add_option("--config", config_path, "Pipeline config JSON")->required();
    sweep->add_option("--input", input, "Readings CSV")->required();

    auto* report = app.add_subcommand("report", "Export final assignments from a result file");
    report->add_option("--result", result_path, "Result JSON")->required();
    report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::vector<const char*> argv{"somkm"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (ingest->parsed()) {
            const auto table = read_readings_file(input);
            const auto matrices = build_monthly_matrices(table, parse_month_list(months_spec));
            print_warnings(err, table.warnings);
            write_text(output, monthly_summary_to_json(table, matrices));
        } else if (synth->parsed()) {
            const auto table = synth_generate(n_series, n_archetypes, parse_month_list(months_spec), noise, seed);
            std::ofstream f(output, std::ios::binary | std::ios::trunc);
            if (!f) throw Error(Errc::IoFailure, "cannot write '" + output + "'");
            write_readings_csv(f, table);
            if (!f.flush()) throw Error(Errc::IoFailure, "write to '" + output + "' failed");
            if (!truth_path.empty()) {
                std::ofstream t(truth_path, std::ios::binary | std::ios::trunc);
                if (!t) throw Error(Errc::IoFailure, "cannot write '" + truth_path + "'");
                write_truth_csv(t, table);
            }
        } else if (run->parsed()) {
            const auto config = load_config(config_path);
            const auto table = read_readings_file(input);
            const auto result = run_pipeline(table, config);
            print_warnings(err, result.warnings);
            save_result(result, output);
        } else if (sweep->parsed()) {
            const auto config = load_config(config_path);
            const auto table = read_readings_file(input);
            const auto result = run_pipeline(table, config);
            print_warnings(err, result.warnings);
            out << report_to_json(result.report);
        } else if (report->parsed()) {
            const auto result = load_result(result_path);
            out << (format == "csv" ? assignments_to_csv(result.assignments) : assignments_to_json(result.assignments));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}

}  // namespace somkm::cli

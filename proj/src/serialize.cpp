#include "somkm/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "somkm/error.hpp"

namespace somkm {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- emitting

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void emit_scalar(const Json& j, std::string& out) {
    if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
        out += buf;
    } else {
        out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
    }
}

void emit(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            out += Json(it.key()).dump(-1, ' ', false, Json::error_handler_t::replace);
            out += ": ";
            emit(it.value(), indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
        const bool rows = !flat && std::all_of(j.begin(), j.end(), [](const Json& e) {
            return e.is_array() && std::all_of(e.begin(), e.end(), is_scalar);
        });
        if (flat || rows) {
            // numeric vectors on one line; matrices one row per line
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += rows ? ",\n" + pad : ", ";
                else if (rows) out += "\n" + pad;
                first = false;
                if (rows) {
                    out += "[";
                    bool f2 = true;
                    for (const auto& x : e) {
                        if (!f2) out += ", ";
                        f2 = false;
                        emit_scalar(x, out);
                    }
                    out += "]";
                } else {
                    emit_scalar(e, out);
                }
            }
            if (rows) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
            out += "]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            emit(e, indent + 2, out);
        }
        out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else {
        emit_scalar(j, out);
    }
}

std::string dump(const Json& j) {
    std::string out;
    emit(j, 0, out);
    out += "\n";
    return out;
}

// ------------------------------------------------------------ to Json

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (double v : m.row(r)) row.push_back(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const SomConfig& c) {
    return Json{{"grid_rows", c.grid_rows}, {"grid_cols", c.grid_cols}, {"epochs", c.epochs},
                {"lr_start", c.lr_start},   {"lr_end", c.lr_end},       {"sigma_start", c.sigma_start},
                {"sigma_end", c.sigma_end}, {"seed", c.seed}};
}

Json to_json(const PipelineConfig& c) {
    Json months = Json::array();
    for (const auto& m : c.months) months.push_back(m.to_string());
    Json per_month = Json::object();
    for (const auto& [m, n] : c.som_clusters_per_month) per_month[m.to_string()] = n;
    Json som{{"epochs", c.som.epochs}, {"lr_start", c.som.lr_start}, {"lr_end", c.som.lr_end}};
    som["sigma_start"] = c.som.sigma_start ? Json(*c.som.sigma_start) : Json(nullptr);
    som["sigma_end"] = c.som.sigma_end;
    return Json{{"months", months},
                {"som_clusters_per_month", per_month},
                {"som_total_clusters", c.som_total_clusters},
                {"som", som},
                {"pca_q", c.pca_q},
                {"k_min", c.k_min},
                {"k_max", c.k_max},
                {"kmeans", Json{{"max_iters", c.kmeans.max_iters}, {"n_restarts", c.kmeans.n_restarts}}},
                {"seed", c.seed}};
}

Json to_json(const SilhouetteReport& r) {
    Json per_k = Json::array();
    for (const auto& e : r.per_k) {
        per_k.push_back(Json{{"k", e.k}, {"mean_silhouette", e.mean_silhouette}, {"inertia", e.inertia}});
    }
    Json skipped = Json::array();
    for (const auto& s : r.skipped) skipped.push_back(Json{{"k", s.k}, {"reason", s.reason}});
    return Json{{"per_k", per_k}, {"best_k", r.best_k}, {"best_score", r.best_score}, {"skipped", skipped}};
}

// ------------------------------------------------------------ from Json

[[noreturn]] void corrupt(const std::string& what) { throw Error(Errc::CorruptFile, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) corrupt(std::string("missing field '") + key + "'");
    return j.at(key);
}

double as_double(const Json& j) {
    if (!j.is_number()) corrupt("expected a number");
    return j.get<double>();
}

std::size_t as_size(const Json& j) {
    if (!j.is_number_unsigned()) corrupt("expected a non-negative integer");
    return j.get<std::size_t>();
}

std::uint64_t as_u64(const Json& j) {
    if (!j.is_number_unsigned()) corrupt("expected a non-negative integer");
    return j.get<std::uint64_t>();
}

int as_int(const Json& j) {
    if (!j.is_number_integer()) corrupt("expected an integer");
    return j.get<int>();
}

std::string as_string(const Json& j) {
    if (!j.is_string()) corrupt("expected a string");
    return j.get<std::string>();
}

std::vector<double> as_vector(const Json& j) {
    if (!j.is_array()) corrupt("expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : j) out.push_back(as_double(e));
    return out;
}

Matrix as_matrix(const Json& j) {
    if (!j.is_array()) corrupt("expected a matrix");
    Matrix m;
    for (const auto& row : j) {
        const auto v = as_vector(row);
        if (m.rows() > 0 && v.size() != m.cols()) corrupt("ragged matrix");
        m.append_row(v);
    }
    return m;
}

MonthKey as_month(const Json& j) {
    try {
        return MonthKey::parse(as_string(j));
    } catch (const Error& e) {
        corrupt(e.what());
    }
}

SomConfig som_config_from(const Json& j) {
    SomConfig c;
    c.grid_rows = as_size(field(j, "grid_rows"));
    c.grid_cols = as_size(field(j, "grid_cols"));
    c.epochs = as_size(field(j, "epochs"));
    c.lr_start = as_double(field(j, "lr_start"));
    c.lr_end = as_double(field(j, "lr_end"));
    c.sigma_start = as_double(field(j, "sigma_start"));
    c.sigma_end = as_double(field(j, "sigma_end"));
    c.seed = as_u64(field(j, "seed"));
    return c;
}

SilhouetteReport report_from(const Json& j) {
    SilhouetteReport r;
    for (const auto& e : field(j, "per_k")) {
        r.per_k.push_back({as_size(field(e, "k")), as_double(field(e, "mean_silhouette")), as_double(field(e, "inertia"))});
    }
    r.best_k = as_size(field(j, "best_k"));
    r.best_score = as_double(field(j, "best_score"));
    for (const auto& e : field(j, "skipped")) {
        r.skipped.push_back({as_size(field(e, "k")), as_string(field(e, "reason"))});
    }
    return r;
}

// Config parsing is user-facing, so failures are InvalidConfig rather than CorruptFile.
PipelineConfig config_from(const Json& j) {
    auto bad = [](const std::string& what) { return Error(Errc::InvalidConfig, "config: " + what); };
    if (!j.is_object()) throw bad("top level must be an object");
    static const std::set<std::string> known = {"months", "som_clusters_per_month", "som_total_clusters", "som",
                                                "pca_q",  "k_min",                  "k_max",              "kmeans",
                                                "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw bad("unknown key '" + it.key() + "'");
    }
    auto size_of = [&](const Json& v, const std::string& key) {
        if (!v.is_number_unsigned()) throw bad(key + " must be a non-negative integer");
        return v.get<std::size_t>();
    };
    auto real_of = [&](const Json& v, const std::string& key) {
        if (!v.is_number()) throw bad(key + " must be a number");
        return v.get<double>();
    };

    PipelineConfig c;
    if (j.contains("months")) {
        const auto& m = j.at("months");
        if (m.is_string()) {
            c.months = parse_month_list(m.get<std::string>());
        } else if (m.is_array()) {
            c.months.clear();
            for (const auto& e : m) {
                if (!e.is_string()) throw bad("months entries must be YYYY-MM strings");
                c.months.push_back(MonthKey::parse(e.get<std::string>()));
            }
        } else {
            throw bad("months must be a list or \"paper-default\"");
        }
    }
    if (j.contains("som_clusters_per_month")) {
        const auto& m = j.at("som_clusters_per_month");
        if (!m.is_object()) throw bad("som_clusters_per_month must be an object");
        for (auto it = m.begin(); it != m.end(); ++it) {
            c.som_clusters_per_month[MonthKey::parse(it.key())] = size_of(it.value(), "som_clusters_per_month");
        }
    }
    if (j.contains("som_total_clusters")) c.som_total_clusters = size_of(j.at("som_total_clusters"), "som_total_clusters");
    if (j.contains("som")) {
        const auto& s = j.at("som");
        if (!s.is_object()) throw bad("som must be an object");
        for (auto it = s.begin(); it != s.end(); ++it) {
            const auto& key = it.key();
            const auto& v = it.value();
            if (key == "epochs") c.som.epochs = size_of(v, "som.epochs");
            else if (key == "lr_start") c.som.lr_start = real_of(v, "som.lr_start");
            else if (key == "lr_end") c.som.lr_end = real_of(v, "som.lr_end");
            else if (key == "sigma_start") {
                if (v.is_null()) c.som.sigma_start.reset();
                else c.som.sigma_start = real_of(v, "som.sigma_start");
            } else if (key == "sigma_end") c.som.sigma_end = real_of(v, "som.sigma_end");
            else throw bad("unknown key 'som." + key + "'");
        }
    }
    if (j.contains("pca_q")) c.pca_q = size_of(j.at("pca_q"), "pca_q");
    if (j.contains("k_min")) c.k_min = size_of(j.at("k_min"), "k_min");
    if (j.contains("k_max")) c.k_max = size_of(j.at("k_max"), "k_max");
    if (j.contains("kmeans")) {
        const auto& k = j.at("kmeans");
        if (!k.is_object()) throw bad("kmeans must be an object");
        for (auto it = k.begin(); it != k.end(); ++it) {
            if (it.key() == "max_iters") c.kmeans.max_iters = size_of(it.value(), "kmeans.max_iters");
            else if (it.key() == "n_restarts") c.kmeans.n_restarts = size_of(it.value(), "kmeans.n_restarts");
            else throw bad("unknown key 'kmeans." + it.key() + "'");
        }
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) throw bad("seed must be a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    c.validate();
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoFailure, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoFailure, "cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw Error(Errc::IoFailure, "write to '" + path + "' failed");
}

}  // namespace

std::string config_to_json(const PipelineConfig& config) { return dump(to_json(config)); }

PipelineConfig config_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        throw Error(Errc::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from(j);
}

PipelineConfig load_config(const std::string& path) { return config_from_json(read_file(path)); }

std::string result_to_json(const PipelineResult& r) {
    Json scalers = Json::array();
    for (const auto& s : r.scalers) {
        scalers.push_back(Json{{"month", s.month.to_string()}, {"mins", s.params.mins}, {"maxs", s.params.maxs}});
    }
    Json soms = Json::array();
    for (const auto& s : r.som_models) {
        Json coords = Json::array();
        for (const auto& [row, col] : s.model.grid_coords) coords.push_back(Json::array({row, col}));
        soms.push_back(Json{{"month", s.month.to_string()},
                            {"config", to_json(s.model.config)},
                            {"codebook", to_json(s.model.codebook)},
                            {"grid_coords", coords},
                            {"activations", s.model.activations}});
    }
    Json origin = Json::array();
    for (const auto& o : r.pooled_centers.origin) {
        origin.push_back(Json{{"month", o.month.to_string()}, {"node", o.node}});
    }
    Json assignments = Json::array();
    for (const auto& a : r.assignments) {
        assignments.push_back(Json{{"series_id", a.series_id},
                                   {"year", a.month.year},
                                   {"month", a.month.month},
                                   {"label", a.label},
                                   {"projected", a.projected}});
    }
    Json doc{{"format_version", std::string(kFormatVersion)},
             {"config", to_json(r.config)},
             {"scalers", scalers},
             {"som_models", soms},
             {"pooled_centers", Json{{"values", to_json(r.pooled_centers.values)}, {"origin", origin}}},
             {"pca", Json{{"mean", r.pca.mean},
                          {"components", to_json(r.pca.components)},
                          {"eigenvalues", r.pca.eigenvalues},
                          {"total_variance", r.pca.total_variance}}},
             {"kmeans", Json{{"centers", to_json(r.kmeans.centers)},
                             {"inertia", r.kmeans.inertia},
                             {"iterations", r.kmeans.iterations},
                             {"converged", r.kmeans.converged},
                             {"labels", r.kmeans.labels}}},
             {"report", to_json(r.report)},
             {"assignments", assignments},
             {"warnings", r.warnings}};
    return dump(doc);
}

PipelineResult result_from_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        corrupt(std::string("not valid JSON: ") + e.what());
    }
    const auto version = as_string(field(j, "format_version"));
    if (version != kFormatVersion) {
        throw Error(Errc::VersionMismatch, "file format " + version + ", expected " + std::string(kFormatVersion));
    }

    PipelineResult r;
    try {
        r.config = config_from(field(j, "config"));
    } catch (const Error& e) {
        corrupt(e.what());
    }
    for (const auto& s : field(j, "scalers")) {
        r.scalers.push_back({as_month(field(s, "month")), {as_vector(field(s, "mins")), as_vector(field(s, "maxs"))}});
    }
    for (const auto& s : field(j, "som_models")) {
        MonthSom ms;
        ms.month = as_month(field(s, "month"));
        ms.model.config = som_config_from(field(s, "config"));
        ms.model.codebook = as_matrix(field(s, "codebook"));
        for (const auto& c : field(s, "grid_coords")) {
            if (!c.is_array() || c.size() != 2) corrupt("grid_coords entries must be pairs");
            ms.model.grid_coords.emplace_back(as_int(c[0]), as_int(c[1]));
        }
        for (const auto& a : field(s, "activations")) ms.model.activations.push_back(as_size(a));
        if (ms.model.activations.size() != ms.model.codebook.rows() ||
            ms.model.grid_coords.size() != ms.model.codebook.rows()) {
            corrupt("SOM model arrays disagree in length");
        }
        r.som_models.push_back(std::move(ms));
    }
    const auto& pooled = field(j, "pooled_centers");
    r.pooled_centers.values = as_matrix(field(pooled, "values"));
    for (const auto& o : field(pooled, "origin")) {
        r.pooled_centers.origin.push_back({as_month(field(o, "month")), as_size(field(o, "node"))});
    }
    if (r.pooled_centers.origin.size() != r.pooled_centers.values.rows()) corrupt("pooled center provenance length");

    const auto& pca = field(j, "pca");
    r.pca.mean = as_vector(field(pca, "mean"));
    r.pca.components = as_matrix(field(pca, "components"));
    r.pca.eigenvalues = as_vector(field(pca, "eigenvalues"));
    r.pca.total_variance = as_double(field(pca, "total_variance"));
    if (r.pca.components.cols() != r.pca.mean.size() || r.pca.eigenvalues.size() != r.pca.components.rows()) {
        corrupt("PCA arrays disagree in shape");
    }

    const auto& km = field(j, "kmeans");
    r.kmeans.centers = as_matrix(field(km, "centers"));
    r.kmeans.inertia = as_double(field(km, "inertia"));
    r.kmeans.iterations = as_size(field(km, "iterations"));
    if (!field(km, "converged").is_boolean()) corrupt("kmeans.converged must be a boolean");
    r.kmeans.converged = field(km, "converged").get<bool>();
    for (const auto& l : field(km, "labels")) r.kmeans.labels.push_back(as_int(l));

    r.report = report_from(field(j, "report"));

    for (const auto& a : field(j, "assignments")) {
        Assignment as;
        as.series_id = as_string(field(a, "series_id"));
        as.month = {as_int(field(a, "year")), as_int(field(a, "month"))};
        as.label = as_int(field(a, "label"));
        as.projected = as_vector(field(a, "projected"));
        r.assignments.push_back(std::move(as));
    }
    for (const auto& w : field(j, "warnings")) r.warnings.push_back(as_string(w));
    return r;
}

void save_result(const PipelineResult& result, const std::string& path) { write_file(path, result_to_json(result)); }

PipelineResult load_result(const std::string& path) { return result_from_json(read_file(path)); }

std::string report_to_json(const SilhouetteReport& report) { return dump(to_json(report)); }

std::string assignments_to_json(const std::vector<Assignment>& assignments) {
    Json out = Json::array();
    for (const auto& a : assignments) {
        out.push_back(Json{{"series_id", a.series_id}, {"year", a.month.year}, {"month", a.month.month}, {"label", a.label}});
    }
    return dump(out);
}

std::string assignments_to_csv(const std::vector<Assignment>& assignments) {
    std::ostringstream out;
    out << "series_id,year,month,label\n";
    for (const auto& a : assignments) {
        out << a.series_id << ',' << a.month.year << ',' << a.month.month << ',' << a.label << '\n';
    }
    return out.str();
}

std::string monthly_summary_to_json(const ReadingTable& table, const std::vector<MonthlyMatrix>& matrices) {
    Json months = Json::array();
    for (const auto& mm : matrices) {
        Json dropped = Json::array();
        for (const auto& d : mm.dropped) dropped.push_back(Json{{"series_id", d.series_id}, {"reason", d.reason}});
        months.push_back(Json{{"month", mm.month.to_string()},
                              {"n_series", mm.series_ids.size()},
                              {"series_ids", mm.series_ids},
                              {"values", to_json(mm.values)},
                              {"dropped", dropped}});
    }
    return dump(Json{{"source", table.source},
                     {"n_readings", table.rows.size()},
                     {"days_per_month", kDaysPerMonth},
                     {"months", months},
                     {"warnings", table.warnings}});
}

}  // namespace somkm
